/** Alchemy workspace: grid canvas, palette, description box, inspector. */

import { ApiClient } from "./api.js";
import { CanvasSurface, renderFrame } from "./renderer.js";
import { SessionStore, inspectorText } from "./state.js";
import { FrameStream, SocketFactory } from "./stream.js";
import type { Frame } from "./types.js";

const CELL_PX = 5;

export class AlchemyView {
  private stream: FrameStream | null = null;
  private selectedMaterial = "air";
  private painting = false;
  private paused = false;

  constructor(
    private readonly api: ApiClient,
    private readonly store: SessionStore,
    private readonly root: Document,
    private readonly socketFactory: SocketFactory,
  ) {}

  async start(): Promise<void> {
    const session = await this.api.openSession("alchemy");
    this.store.openSession(session.session_id, "alchemy");

    const canvas = this.root.getElementById("grid") as HTMLCanvasElement;
    const ctx = canvas.getContext("2d")!;
    let surface: CanvasSurface | null = null;

    this.stream = new FrameStream(this.api.frameStreamUrl(session.session_id), this.socketFactory, {
      onFrame: (frame: Frame) => {
        if (!surface) {
          canvas.width = frame.width * CELL_PX;
          canvas.height = frame.height * CELL_PX;
          surface = new CanvasSurface(ctx, frame.width, frame.height, CELL_PX);
        }
        renderFrame(frame, surface);
        this.store.frameReceived(frame);
        this.renderPalette();
      },
      onStatus: (status) => {
        this.store.connectionChanged(status);
        const badge = this.root.getElementById("status");
        if (badge) badge.textContent = status;
      },
    });
    this.stream.connect();

    canvas.addEventListener("mousedown", (ev) => {
      this.painting = true;
      this.paintAt(canvas, ev);
    });
    canvas.addEventListener("mousemove", (ev) => {
      if (this.painting) this.paintAt(canvas, ev);
    });
    this.root.addEventListener("mouseup", () => {
      this.painting = false;
    });
    this.root.addEventListener("keydown", (ev) => {
      if ((ev as KeyboardEvent).key === "p") this.togglePause();
    });

    const form = this.root.getElementById("describe-form") as HTMLFormElement;
    form.addEventListener("submit", async (ev) => {
      ev.preventDefault();
      const input = this.root.getElementById("describe") as HTMLInputElement;
      if (!input.value.trim()) return;
      const result = await this.api.material(session.session_id, input.value);
      this.store.scriptReturned(result.rule, result.validation);
      this.store.paletteChanged(result.palette);
      const inspector = this.root.getElementById("inspector")!;
      inspector.textContent = inspectorText(this.store.get());
      this.renderPalette();
    });
  }

  private paintAt(canvas: HTMLCanvasElement, ev: MouseEvent): void {
    const rect = canvas.getBoundingClientRect();
    const x = Math.floor((ev.clientX - rect.left) / CELL_PX);
    const y = Math.floor((ev.clientY - rect.top) / CELL_PX);
    this.stream?.paint(x, y, this.selectedMaterial, 2);
  }

  private togglePause(): void {
    this.paused = !this.paused;
    this.stream?.setRate(this.paused ? 0 : 30);
  }

  private renderPalette(): void {
    const holder = this.root.getElementById("palette");
    if (!holder) return;
    holder.innerHTML = "";
    for (const [name, color] of Object.entries(this.store.get().palette)) {
      const chip = this.root.createElement("button");
      chip.textContent = name;
      chip.style.background = color;
      chip.className = "chip" + (name === this.selectedMaterial ? " selected" : "");
      chip.addEventListener("click", () => {
        this.selectedMaterial = name;
        this.renderPalette();
      });
      holder.appendChild(chip);
    }
  }
}
