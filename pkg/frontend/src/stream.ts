/** Bidirectional frame stream with reconnect and backoff.
 *
 * The socket factory is injectable so tests can supply the `ws` client
 * while the browser build uses the native WebSocket.
 */

import type { BattleStreamMessage, Frame } from "./types.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface StreamHandlers {
  onFrame?: (frame: Frame) => void;
  onBattle?: (message: BattleStreamMessage) => void;
  onStatus?: (status: "connecting" | "open" | "reconnecting" | "closed") => void;
}

export class FrameStream {
  private socket: SocketLike | null = null; // open socket, sendable
  private current: SocketLike | null = null; // any in-flight socket
  private closed = false;
  private attempts = 0;
  private pendingSends: string[] = [];

  constructor(
    private readonly url: string,
    private readonly factory: SocketFactory,
    private readonly handlers: StreamHandlers = {},
    private readonly maxBackoffMs = 5000,
  ) {}

  connect(): void {
    this.closed = false;
    this.handlers.onStatus?.(this.attempts === 0 ? "connecting" : "reconnecting");
    const socket = this.factory(this.url);
    this.current = socket;
    socket.onopen = () => {
      this.socket = socket; // sends only after the socket is open
      this.attempts = 0;
      this.handlers.onStatus?.("open");
      for (const data of this.pendingSends.splice(0)) socket.send(data);
    };
    socket.onmessage = (ev) => {
      const doc = JSON.parse(String(ev.data));
      if (doc && Array.isArray(doc.rows)) this.handlers.onFrame?.(doc as Frame);
      else if (doc && Array.isArray(doc.events)) this.handlers.onBattle?.(doc as BattleStreamMessage);
    };
    socket.onclose = () => {
      this.socket = null;
      this.current = null;
      if (this.closed) {
        this.handlers.onStatus?.("closed");
        return;
      }
      const backoff = Math.min(this.maxBackoffMs, 200 * 2 ** this.attempts);
      this.attempts += 1;
      this.handlers.onStatus?.("reconnecting");
      setTimeout(() => {
        if (!this.closed) this.connect();
      }, backoff);
    };
    socket.onerror = () => {
      // onclose follows; reconnect handled there
    };
  }

  close(): void {
    this.closed = true;
    this.current?.close();
  }

  private send(message: object): void {
    const data = JSON.stringify(message);
    if (this.socket) this.socket.send(data);
    else this.pendingSends.push(data);
  }

  setRate(ticksPerSecond: number): void {
    this.send({ set_rate: ticksPerSecond });
  }

  paint(x: number, y: number, material: string, radius = 0): void {
    this.send({ paint: { x, y, material, radius } });
  }

  fireButton(): void {
    this.send({ fire_button: true });
  }
}
