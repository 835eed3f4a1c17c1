/** Battle console: cast box, trace canvas, script inspector.
 * Space fires the button trigger; a 502 still renders the fizzle. */

import { ApiClient } from "./api.js";
import { SessionStore, inspectorText } from "./state.js";
import { FrameStream, SocketFactory } from "./stream.js";
import { drawOps, fizzlePuff, traceToDrawOps } from "./traceview.js";
import type { TraceEvent } from "./types.js";

const SCALE = 4;
const WORLD_HEIGHT = 100;

export class BattleView {
  private stream: FrameStream | null = null;
  private events: TraceEvent[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly store: SessionStore,
    private readonly root: Document,
    private readonly socketFactory: SocketFactory,
  ) {}

  async start(): Promise<void> {
    const session = await this.api.openSession("battle");
    this.store.openSession(session.session_id, "battle");
    const canvas = this.root.getElementById("arena") as HTMLCanvasElement;
    canvas.width = 200 * SCALE;
    canvas.height = WORLD_HEIGHT * SCALE;
    const ctx = canvas.getContext("2d")!;

    this.stream = new FrameStream(this.api.frameStreamUrl(session.session_id), this.socketFactory, {
      onBattle: (message) => {
        this.events.push(...message.events);
        this.redraw(ctx, canvas);
      },
      onStatus: (status) => this.store.connectionChanged(status),
    });
    this.stream.connect();

    this.root.addEventListener("keydown", (ev) => {
      if ((ev as KeyboardEvent).key === " ") this.stream?.fireButton();
    });

    const form = this.root.getElementById("cast-form") as HTMLFormElement;
    form.addEventListener("submit", async (ev) => {
      ev.preventDefault();
      const input = this.root.getElementById("cast") as HTMLInputElement;
      if (!input.value.trim()) return;
      const result = await this.api.cast(session.session_id, input.value);
      this.store.scriptReturned(result.script, result.validation);
      this.events.push(...result.trace);
      const inspector = this.root.getElementById("inspector")!;
      inspector.textContent = inspectorText(this.store.get());
      if (result.status === 502) this.toast("provider failed; cast fizzled");
      this.redraw(ctx, canvas);
    });
  }

  private redraw(ctx: CanvasRenderingContext2D, canvas: HTMLCanvasElement): void {
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    const ops = traceToDrawOps(this.events.slice(-2000));
    const validation = this.store.get().lastValidation;
    if (validation && validation.outcome === "fizzled") ops.push(fizzlePuff());
    drawOps(ctx, ops, SCALE, WORLD_HEIGHT);
  }

  private toast(message: string): void {
    const toast = this.root.getElementById("toast");
    if (toast) {
      toast.textContent = message;
      toast.className = "visible";
      setTimeout(() => (toast.className = ""), 4000);
    }
  }
}
