import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import {
  GatewayClient,
  GatewayError,
  SnapshotStream,
  StreamStatus,
} from "../src/gateway.js";
import { StateSnapshot } from "../src/types.js";
import { FakeSocket, makeFakeFetch, snapshotDoc } from "./helpers.js";

describe("GatewayClient", () => {
  it("fetches and parses the state snapshot", async () => {
    const fake = makeFakeFetch();
    const client = new GatewayClient("", fake.fn);
    const snap = await client.state();
    expect(snap.code).toBe(3);
    expect(fake.calls).toEqual([
      { url: "/api/state", method: "GET", body: undefined },
    ]);
  });

  it("writes both setpoints at x100 scaling", async () => {
    const fake = makeFakeFetch();
    const client = new GatewayClient("", fake.fn);
    await client.setSetpoints(50, 250);
    expect(fake.calls.map((c) => c.body)).toEqual([
      { addr: 0, value: 5000 },
      { addr: 1, value: 25000 },
    ]);
    expect(fake.calls.every((c) => c.url === "/api/registers")).toBe(true);
  });

  it("maps the switch helpers onto their registers", async () => {
    const fake = makeFakeFetch();
    const client = new GatewayClient("", fake.fn);
    await client.setMode(true);
    await client.setDrain(true);
    await client.setManualFill(false);
    expect(fake.calls.map((c) => c.body)).toEqual([
      { addr: 3, value: 1 },
      { addr: 2, value: 1 },
      { addr: 7, value: 0 },
    ]);
  });

  it("posts enrollment, reset, and inject to their endpoints", async () => {
    const fake = makeFakeFetch();
    const client = new GatewayClient("", fake.fn);
    await client.setEnroll(true);
    await client.resetTemporal();
    await client.inject("spike", 5, 100);
    expect(fake.calls).toEqual([
      { url: "/api/enroll", method: "POST", body: { on: true } },
      { url: "/api/reset-temporal", method: "POST", body: undefined },
      {
        url: "/api/inject",
        method: "POST",
        body: { kind: "spike", duration: 5, magnitude: 100 },
      },
    ]);
  });

  it("surfaces the gateway's error detail", async () => {
    const fake = makeFakeFetch();
    const client = new GatewayClient("", fake.fn);
    fake.failNext(409, "enrollment table is empty");
    const err = await client.setEnroll(false).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(GatewayError);
    expect((err as GatewayError).status).toBe(409);
    expect((err as GatewayError).message).toBe("enrollment table is empty");
  });

  it("prefixes the base URL", async () => {
    const fake = makeFakeFetch();
    const client = new GatewayClient("http://gw:8000", fake.fn);
    fake.failNext(404, "off the edge");
    await client.state().catch(() => undefined);
    expect(fake.calls[0]?.url).toBe("http://gw:8000/api/state");
  });
});

describe("SnapshotStream", () => {
  let sockets: FakeSocket[];
  let statuses: StreamStatus[];
  let snapshots: StateSnapshot[];
  let stream: SnapshotStream;

  function makeStream(): SnapshotStream {
    return new SnapshotStream(
      "ws://test/api/stream",
      (s) => snapshots.push(s),
      (st) => statuses.push(st),
      () => {
        const sock = new FakeSocket();
        sockets.push(sock);
        return sock;
      },
      { staleAfterMs: 500, reconnectDelayMs: 200 },
    );
  }

  beforeEach(() => {
    vi.useFakeTimers();
    sockets = [];
    statuses = [];
    snapshots = [];
    stream = makeStream();
  });

  afterEach(() => {
    stream.stop();
    vi.useRealTimers();
  });

  it("reports live and hands over parsed snapshots", () => {
    stream.start();
    expect(statuses).toEqual(["connecting"]);
    sockets[0]!.open();
    sockets[0]!.deliver(snapshotDoc({ code: 1 }));
    expect(statuses).toEqual(["connecting", "live", "live"]);
    expect(snapshots).toHaveLength(1);
    expect(snapshots[0]!.code).toBe(1);
  });

  it("flags the stream stale when snapshots stop arriving", () => {
    stream.start();
    sockets[0]!.open();
    sockets[0]!.deliver(snapshotDoc());
    vi.advanceTimersByTime(499);
    expect(statuses.at(-1)).toBe("live");
    vi.advanceTimersByTime(2);
    expect(statuses.at(-1)).toBe("stale");
    // A fresh snapshot recovers the stream.
    sockets[0]!.deliver(snapshotDoc());
    expect(statuses.at(-1)).toBe("live");
  });

  it("reconnects after a drop", () => {
    stream.start();
    sockets[0]!.open();
    sockets[0]!.drop();
    expect(statuses.at(-1)).toBe("disconnected");
    expect(sockets).toHaveLength(1);
    vi.advanceTimersByTime(201);
    expect(sockets).toHaveLength(2);
    sockets[1]!.open();
    expect(statuses.at(-1)).toBe("live");
  });

  it("drops malformed frames without dying", () => {
    const errorSpy = vi
      .spyOn(console, "error")
      .mockImplementation(() => undefined);
    stream.start();
    sockets[0]!.open();
    sockets[0]!.deliverRaw("not json");
    sockets[0]!.deliver({ code: 3 }); // parses as JSON, fails validation
    expect(snapshots).toHaveLength(0);
    expect(errorSpy).toHaveBeenCalledTimes(2);
    sockets[0]!.deliver(snapshotDoc());
    expect(snapshots).toHaveLength(1);
    errorSpy.mockRestore();
  });

  it("stays down after stop", () => {
    stream.start();
    sockets[0]!.open();
    sockets[0]!.deliver(snapshotDoc());
    stream.stop();
    expect(sockets[0]!.closed).toBe(true);
    vi.advanceTimersByTime(5000);
    expect(sockets).toHaveLength(1);
    // The stale timer must be disarmed too.
    expect(statuses.at(-1)).toBe("live");
  });
});
