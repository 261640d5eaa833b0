// Gateway access: typed REST calls plus the snapshot WebSocket with
// staleness tracking and automatic reconnect. Both take their transport
// as a constructor argument so tests can script it.

import {
  FaultKind,
  HR_DRAIN,
  HR_FILL_MANUAL,
  HR_HIGH_SP,
  HR_LOW_SP,
  HR_MODE,
  MODE_AUTO,
  MODE_MANUAL,
  parseSnapshot,
  StateSnapshot,
} from "./types.js";
import { levelToRegister } from "./fixedpoint.js";

export class GatewayError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "GatewayError";
  }
}

type FetchFn = (url: string, init?: RequestInit) => Promise<Response>;

async function errorDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
  } catch {
    // fall through to the generic message
  }
  return `gateway returned ${response.status}`;
}

export class GatewayClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchFn = (url, init) => fetch(url, init),
  ) {}

  private async post(path: string, body?: unknown): Promise<unknown> {
    const response = await this.fetchFn(this.baseUrl + path, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) {
      throw new GatewayError(response.status, await errorDetail(response));
    }
    return response.json();
  }

  async state(): Promise<StateSnapshot> {
    const response = await this.fetchFn(this.baseUrl + "/api/state");
    if (!response.ok) {
      throw new GatewayError(response.status, await errorDetail(response));
    }
    return parseSnapshot(await response.json());
  }

  async writeRegister(addr: number, value: number): Promise<void> {
    await this.post("/api/registers", { addr, value });
  }

  async setSetpoints(low: number, high: number): Promise<void> {
    await this.writeRegister(HR_LOW_SP, levelToRegister(low));
    await this.writeRegister(HR_HIGH_SP, levelToRegister(high));
  }

  async setMode(auto: boolean): Promise<void> {
    await this.writeRegister(HR_MODE, auto ? MODE_AUTO : MODE_MANUAL);
  }

  async setDrain(open: boolean): Promise<void> {
    await this.writeRegister(HR_DRAIN, open ? 1 : 0);
  }

  async setManualFill(open: boolean): Promise<void> {
    await this.writeRegister(HR_FILL_MANUAL, open ? 1 : 0);
  }

  async setEnroll(on: boolean): Promise<void> {
    await this.post("/api/enroll", { on });
  }

  async resetTemporal(): Promise<void> {
    await this.post("/api/reset-temporal");
  }

  async inject(
    kind: FaultKind,
    duration: number,
    magnitude: number,
  ): Promise<void> {
    await this.post("/api/inject", { kind, duration, magnitude });
  }
}

export type StreamStatus = "connecting" | "live" | "stale" | "disconnected";

export interface SocketLike {
  onopen: (() => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  close(): void;
}

export type SocketFactory = (url: string) => SocketLike;

export interface StreamOptions {
  staleAfterMs?: number;
  reconnectDelayMs?: number;
}

const STALE_AFTER_MS = 1000; // ten snapshot periods with no data
const RECONNECT_DELAY_MS = 1000;

export class SnapshotStream {
  private socket: SocketLike | null = null;
  private staleTimer: ReturnType<typeof setTimeout> | null = null;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;
  private readonly staleAfterMs: number;
  private readonly reconnectDelayMs: number;

  constructor(
    private readonly url: string,
    private readonly onSnapshot: (snapshot: StateSnapshot) => void,
    private readonly onStatus: (status: StreamStatus) => void,
    private readonly makeSocket: SocketFactory = (u) =>
      new WebSocket(u) as unknown as SocketLike,
    options: StreamOptions = {},
  ) {
    this.staleAfterMs = options.staleAfterMs ?? STALE_AFTER_MS;
    this.reconnectDelayMs = options.reconnectDelayMs ?? RECONNECT_DELAY_MS;
  }

  start(): void {
    this.stopped = false;
    this.connect();
  }

  stop(): void {
    this.stopped = true;
    this.clearTimers();
    if (this.socket) {
      const socket = this.socket;
      this.socket = null;
      socket.onclose = null;
      socket.close();
    }
  }

  private connect(): void {
    this.onStatus("connecting");
    const socket = this.makeSocket(this.url);
    this.socket = socket;
    socket.onopen = () => this.onStatus("live");
    socket.onmessage = (ev) => this.handleMessage(ev.data);
    socket.onclose = () => this.handleDrop();
    socket.onerror = () => {
      // A close event follows; reconnect is handled there.
    };
  }

  private handleMessage(data: unknown): void {
    let snapshot: StateSnapshot;
    try {
      snapshot = parseSnapshot(JSON.parse(String(data)));
    } catch (err) {
      console.error("dropping malformed snapshot:", err);
      return;
    }
    this.armStaleTimer();
    this.onStatus("live");
    this.onSnapshot(snapshot);
  }

  private handleDrop(): void {
    this.socket = null;
    this.clearTimers();
    if (this.stopped) return;
    this.onStatus("disconnected");
    this.reconnectTimer = setTimeout(
      () => this.connect(),
      this.reconnectDelayMs,
    );
  }

  private armStaleTimer(): void {
    if (this.staleTimer !== null) clearTimeout(this.staleTimer);
    this.staleTimer = setTimeout(
      () => this.onStatus("stale"),
      this.staleAfterMs,
    );
  }

  private clearTimers(): void {
    if (this.staleTimer !== null) {
      clearTimeout(this.staleTimer);
      this.staleTimer = null;
    }
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
  }
}
