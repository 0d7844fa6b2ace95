import { describe, expect, it } from "vitest";
import { LatestOnly } from "../src/seq.js";

describe("LatestOnly", () => {
  it("marks superseded requests stale", () => {
    const gate = new LatestOnly();
    const first = gate.begin();
    const second = gate.begin();
    expect(gate.isCurrent(first.id)).toBe(false);
    expect(gate.isCurrent(second.id)).toBe(true);
  });

  it("aborts the previous in-flight signal", () => {
    const gate = new LatestOnly();
    const first = gate.begin();
    expect(first.signal.aborted).toBe(false);
    gate.begin();
    expect(first.signal.aborted).toBe(true);
  });
});
