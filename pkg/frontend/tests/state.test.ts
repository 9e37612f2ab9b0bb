import { describe, expect, it } from "vitest";

import { ViewState } from "../src/state";

describe("ViewState seed picking", () => {
  it("flags the first pick as background", () => {
    const state = new ViewState();
    const result = state.addSeed(5, 7, [0, 0, 0]);
    expect(result.ok).toBe(true);
    expect(state.seeds[0].isBackground).toBe(true);
    expect(state.seeds[0].label).toContain("background");
  });

  it("rejects duplicate exact colors", () => {
    const state = new ViewState();
    state.addSeed(0, 0, [0.5, 0.5, 0.5]);
    const dup = state.addSeed(9, 9, [0.5, 0.5, 0.5]);
    expect(dup).toEqual({ ok: false, reason: "duplicate-color" });
    expect(state.seeds).toHaveLength(1);
  });

  it("ignores clicks outside the image", () => {
    const state = new ViewState();
    expect(state.addSeed(-1, 0, null)).toEqual({ ok: false, reason: "outside-image" });
    expect(state.seeds).toHaveLength(0);
  });

  it("requires background plus one class before the pipeline can run", () => {
    const state = new ViewState();
    expect(state.canRunPipeline()).toBe(false);
    state.addSeed(0, 0, [0, 0, 0]);
    expect(state.canRunPipeline()).toBe(false);
    state.addSeed(1, 1, [1, 0, 0]);
    expect(state.canRunPipeline()).toBe(true);
  });

  it("re-flags background after removing the first seed", () => {
    const state = new ViewState();
    state.addSeed(0, 0, [0, 0, 0]);
    state.addSeed(1, 1, [1, 0, 0]);
    state.removeSeed(0);
    expect(state.seeds[0].isBackground).toBe(true);
  });

  it("builds the palette draft in pick order", () => {
    const state = new ViewState();
    state.addSeed(0, 0, [0, 0, 0], "null data");
    state.addSeed(1, 1, [1, 0, 0], "constructed");
    expect(state.paletteDraft()).toEqual([
      { label: "null data", rgb: [0, 0, 0] },
      { label: "constructed", rgb: [1, 0, 0] },
    ]);
  });
});

describe("ViewState iso level", () => {
  it("slider moves do not change the applied level until apply", () => {
    const state = new ViewState();
    state.isoFraction = 0.4;
    expect(state.appliedIsoFraction).toBe(0.1);
    state.applyIsoFraction();
    expect(state.appliedIsoFraction).toBe(0.4);
  });
});

describe("ViewState cluster visibility", () => {
  it("toggles membership", () => {
    const state = new ViewState();
    state.toggleCluster(3);
    expect(state.visibleClusters.has(3)).toBe(true);
    state.toggleCluster(3);
    expect(state.visibleClusters.has(3)).toBe(false);
  });
});
