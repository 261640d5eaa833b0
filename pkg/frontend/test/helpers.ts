import { SocketLike } from "../src/gateway.js";

export class FakeSocket implements SocketLike {
  onopen: (() => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: (() => void) | null = null;
  onerror: (() => void) | null = null;
  closed = false;

  close(): void {
    this.closed = true;
  }

  open(): void {
    this.onopen?.();
  }

  deliver(doc: unknown): void {
    this.onmessage?.({ data: JSON.stringify(doc) });
  }

  deliverRaw(data: unknown): void {
    this.onmessage?.({ data });
  }

  drop(): void {
    this.onclose?.();
  }
}

export interface RecordedCall {
  url: string;
  method: string;
  body: unknown;
}

export interface FakeFetch {
  fn: (url: string, init?: RequestInit) => Promise<Response>;
  calls: RecordedCall[];
  stateDoc: () => unknown;
  failNext: (status: number, detail: string) => void;
}

export interface SnapshotOpts {
  code?: number | null;
  hr?: number[];
  [key: string]: unknown;
}

export function snapshotDoc(opts: SnapshotOpts = {}): unknown {
  const {
    code = 3,
    hr = [5000, 25000, 1, 1, 0, 0, 3, 0],
    ...rest
  } = opts;
  return {
    sim_time: 12.3,
    true_level: 150.2,
    reported_level: 150.18,
    registers: { ir: [15018, 1, 184, 0], hr },
    code,
    temporal: { diff: 3.1, enrolled_max: 13.12, latched: false },
    enrollment_coverage: 1.0,
    running: true,
    ...rest,
  };
}

export function makeFakeFetch(): FakeFetch {
  const calls: RecordedCall[] = [];
  let pendingFailure: { status: number; detail: string } | null = null;
  let stateDoc: unknown = snapshotDoc();

  const fn = (url: string, init?: RequestInit): Promise<Response> => {
    calls.push({
      url,
      method: init?.method ?? "GET",
      body: init?.body ? JSON.parse(String(init.body)) : undefined,
    });
    if (pendingFailure) {
      const { status, detail } = pendingFailure;
      pendingFailure = null;
      return Promise.resolve(
        new Response(JSON.stringify({ detail }), { status }),
      );
    }
    const body = url.endsWith("/api/state") ? stateDoc : { ok: true };
    return Promise.resolve(
      new Response(JSON.stringify(body), { status: 200 }),
    );
  };

  return {
    fn,
    calls,
    stateDoc: () => stateDoc,
    failNext: (status, detail) => {
      pendingFailure = { status, detail };
    },
  };
}

export function flushMicrotasks(turns = 32): Promise<void> {
  let p = Promise.resolve();
  for (let i = 0; i < turns; i++) {
    p = p.then(() => undefined);
  }
  return p;
}
