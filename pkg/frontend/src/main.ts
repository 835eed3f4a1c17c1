/** Entry point: choose a mode, wire the matching view to the gateway. */

import { AlchemyView } from "./alchemy.js";
import { ApiClient } from "./api.js";
import { BattleView } from "./battle.js";
import { SessionStore } from "./state.js";
import type { SocketFactory } from "./stream.js";

const browserSockets: SocketFactory = (url) => new WebSocket(url) as unknown as ReturnType<SocketFactory>;

export async function boot(doc: Document = document): Promise<void> {
  const base = (doc.getElementById("app")?.getAttribute("data-server") ?? "http://127.0.0.1:8765").replace(/\/$/, "");
  const api = new ApiClient(base);
  const store = new SessionStore();
  const mode = new URLSearchParams(window.location.search).get("mode") ?? "alchemy";
  if (mode === "battle") {
    await new BattleView(api, store, doc, browserSockets).start();
  } else {
    await new AlchemyView(api, store, doc, browserSockets).start();
  }
}

if (typeof window !== "undefined" && typeof document !== "undefined") {
  window.addEventListener("DOMContentLoaded", () => {
    void boot();
  });
}
