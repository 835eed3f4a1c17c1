import { describe, expect, it } from "vitest";

import { SessionStore, inspectorText } from "../src/state.js";
import type { Frame, ValidationReport } from "../src/types.js";

const ACCEPTED: ValidationReport = {
  syntactic_valid: true,
  outcome: "accepted",
  violations: [],
  repairs: [],
};

describe("SessionStore", () => {
  it("stores the server script verbatim", () => {
    const store = new SessionStore();
    store.openSession("abc", "battle");
    const script = '{"components":[{"componentType":"projectile"}],"count":1,"friendlyName":"X Y"}';
    store.scriptReturned(script, ACCEPTED);
    expect(store.get().lastScript).toBe(script);
    expect(inspectorText(store.get())).toContain(script);
    expect(inspectorText(store.get())).toContain("outcome: accepted");
  });

  it("tracks palette and frames from the stream", () => {
    const store = new SessionStore();
    const frame: Frame = { width: 1, height: 1, palette: { gas: "#CCCCCC" }, rows: [[[1, "gas", 255]]] };
    store.frameReceived(frame);
    expect(store.get().palette.gas).toBe("#CCCCCC");
    expect(store.get().frameBuffer).toBe(frame);
  });

  it("notifies subscribers and supports unsubscribe", () => {
    const store = new SessionStore();
    let calls = 0;
    const off = store.subscribe(() => {
      calls += 1;
    });
    store.connectionChanged("open");
    off();
    store.connectionChanged("closed");
    expect(calls).toBe(1);
  });

  it("renders violations in the inspector", () => {
    const store = new SessionStore();
    store.scriptReturned(null, {
      syntactic_valid: false,
      outcome: "fizzled",
      violations: [{ path: "", kind: "bad-structure", detail: "no JSON object found in output", fatal: true }],
      repairs: [],
    });
    const text = inspectorText(store.get());
    expect(text).toContain("fizzled");
    expect(text).toContain("bad-structure");
  });
});
