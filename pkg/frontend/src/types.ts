/** Wire shapes shared with the gateway. The client renders these
 * verbatim; no DSL logic lives on this side. */

export type Mode = "battle" | "alchemy";

/** One run-length entry: [cellCount, materialName, alpha 0-255]. */
export type Run = [number, string, number];

export interface Frame {
  width: number;
  height: number;
  palette: Record<string, string>;
  rows: Run[][];
  tick?: number;
  digest?: string;
}

export interface Violation {
  path: string;
  kind: string;
  detail: string;
  fatal: boolean;
}

export interface RepairEntry {
  path: string;
  action: string;
  before: unknown;
  after: unknown;
}

export interface ValidationReport {
  syntactic_valid: boolean;
  outcome: "accepted" | "repaired" | "fizzled";
  violations: Violation[];
  repairs: RepairEntry[];
}

export interface TraceEvent {
  tick: number;
  event_kind: string;
  entity_id: number;
  payload: Record<string, unknown>;
}

export interface CasterView {
  x: number;
  y: number;
  team: string;
  health: number;
  mana: number;
}

export interface CastResponse {
  status: number;
  script: string;
  validation: ValidationReport;
  trace: TraceEvent[];
  casters: CasterView[];
}

export interface MaterialResponse {
  status: number;
  rule: string | null;
  validation: ValidationReport;
  installed: boolean;
  palette: Record<string, string>;
}

export interface SessionInfo {
  session_id: string;
  mode: Mode;
  provider: string;
}

export interface BattleStreamMessage {
  tick: number;
  events: TraceEvent[];
}
