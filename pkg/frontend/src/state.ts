/** Client session state: strictly a mirror of what the server sent. */

import type { Frame, Mode, ValidationReport } from "./types.js";

export type ConnectionStatus = "idle" | "connecting" | "open" | "reconnecting" | "closed";

export interface UiSessionState {
  sessionId: string | null;
  mode: Mode | null;
  lastScript: string | null; // canonical DSL text, byte-for-byte from the server
  lastValidation: ValidationReport | null;
  palette: Record<string, string>;
  frameBuffer: Frame | null;
  connection: ConnectionStatus;
}

type Listener = (state: UiSessionState) => void;

export class SessionStore {
  private state: UiSessionState = {
    sessionId: null,
    mode: null,
    lastScript: null,
    lastValidation: null,
    palette: {},
    frameBuffer: null,
    connection: "idle",
  };
  private listeners: Listener[] = [];

  get(): UiSessionState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private commit(patch: Partial<UiSessionState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  openSession(sessionId: string, mode: Mode): void {
    this.commit({ sessionId, mode, lastScript: null, lastValidation: null, palette: {}, frameBuffer: null });
  }

  scriptReturned(script: string | null, validation: ValidationReport): void {
    this.commit({ lastScript: script, lastValidation: validation });
  }

  paletteChanged(palette: Record<string, string>): void {
    this.commit({ palette: { ...palette } });
  }

  frameReceived(frame: Frame): void {
    this.commit({ frameBuffer: frame, palette: { ...frame.palette } });
  }

  connectionChanged(connection: ConnectionStatus): void {
    this.commit({ connection });
  }
}

/** Inspector text: the script verbatim plus one line per violation. */
export function inspectorText(state: UiSessionState): string {
  const lines: string[] = [];
  if (state.lastScript !== null) lines.push(state.lastScript);
  const validation = state.lastValidation;
  if (validation) {
    lines.push(`outcome: ${validation.outcome}`);
    for (const v of validation.violations) {
      lines.push(`violation ${v.path || "<root>"}: ${v.kind} (${v.detail})`);
    }
    for (const r of validation.repairs) {
      lines.push(`repair ${r.path || "<root>"}: ${r.action}`);
    }
  }
  return lines.join("\n");
}
