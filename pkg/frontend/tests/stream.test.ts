import { describe, expect, it, vi } from "vitest";

import { FrameStream, SocketLike } from "../src/stream.js";

class FakeSocket implements SocketLike {
  sent: string[] = [];
  onopen: ((ev?: unknown) => void) | null = null;
  onmessage: ((ev: { data: unknown }) => void) | null = null;
  onclose: ((ev?: unknown) => void) | null = null;
  onerror: ((ev?: unknown) => void) | null = null;

  send(data: string): void {
    this.sent.push(data);
  }

  close(): void {
    this.onclose?.();
  }
}

describe("FrameStream", () => {
  it("queues sends until the socket opens", () => {
    const sockets: FakeSocket[] = [];
    const stream = new FrameStream("ws://x", () => {
      const s = new FakeSocket();
      sockets.push(s);
      return s;
    });
    stream.connect();
    stream.setRate(60);
    stream.paint(1, 2, "gas", 0);
    expect(sockets[0].sent).toHaveLength(0);
    sockets[0].onopen?.();
    expect(sockets[0].sent.map((s) => JSON.parse(s))).toEqual([
      { set_rate: 60 },
      { paint: { x: 1, y: 2, material: "gas", radius: 0 } },
    ]);
  });

  it("dispatches frames and battle messages by shape", () => {
    const sockets: FakeSocket[] = [];
    const frames: unknown[] = [];
    const battles: unknown[] = [];
    const stream = new FrameStream(
      "ws://x",
      () => {
        const s = new FakeSocket();
        sockets.push(s);
        return s;
      },
      { onFrame: (f) => frames.push(f), onBattle: (b) => battles.push(b) },
    );
    stream.connect();
    sockets[0].onopen?.();
    sockets[0].onmessage?.({ data: JSON.stringify({ width: 1, height: 1, palette: {}, rows: [[[1, "air", 255]]] }) });
    sockets[0].onmessage?.({ data: JSON.stringify({ tick: 3, events: [] }) });
    expect(frames).toHaveLength(1);
    expect(battles).toHaveLength(1);
  });

  it("reconnects with backoff after a drop and reports status", async () => {
    vi.useFakeTimers();
    const sockets: FakeSocket[] = [];
    const statuses: string[] = [];
    const stream = new FrameStream(
      "ws://x",
      () => {
        const s = new FakeSocket();
        sockets.push(s);
        return s;
      },
      { onStatus: (s) => statuses.push(s) },
    );
    stream.connect();
    sockets[0].onopen?.();
    sockets[0].onclose?.(); // unexpected drop
    expect(sockets).toHaveLength(1);
    await vi.advanceTimersByTimeAsync(250);
    expect(sockets).toHaveLength(2); // reconnected
    expect(statuses).toContain("reconnecting");
    sockets[1].onopen?.();
    expect(statuses[statuses.length - 1]).toBe("open");
    stream.close();
    expect(statuses[statuses.length - 1]).toBe("closed");
    vi.useRealTimers();
  });

  it("does not reconnect after a deliberate close", async () => {
    vi.useFakeTimers();
    const sockets: FakeSocket[] = [];
    const stream = new FrameStream("ws://x", () => {
      const s = new FakeSocket();
      sockets.push(s);
      return s;
    });
    stream.connect();
    sockets[0].onopen?.();
    stream.close();
    await vi.advanceTimersByTimeAsync(2000);
    expect(sockets).toHaveLength(1);
    vi.useRealTimers();
  });
});
