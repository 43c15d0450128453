import { describe, expect, it } from "vitest";

import {
  activeCells,
  activeRelationships,
  counterpartCell,
  cueActive,
  effectiveLayout,
  hover,
  initialState,
  linkActive,
  pinSlots,
  relatedCells,
  setFocus,
  toggleLayout,
  togglePin,
  tooltipFor,
  viewportBox,
  visibleCells,
  type ViewState,
} from "../src/state";
import { demoPayload } from "./fixtures";

const payload = demoPayload();

function base(): ViewState {
  return initialState(payload);
}

describe("transitions", () => {
  it("starts in the payload's default mode with nothing engaged", () => {
    expect(base()).toEqual({
      layoutMode: "sideBySide",
      hoveredEntity: null,
      pinnedCells: [],
      focusCell: null,
    });
  });

  it("layout toggle is an involution", () => {
    const once = toggleLayout(base());
    expect(once.layoutMode).toBe("linear");
    expect(toggleLayout(once)).toEqual(base());
  });

  it("hover changes hoveredEntity and nothing else", () => {
    const s = togglePin(setFocus(base(), "m1", true), "c1");
    const hovered = hover(s, { kind: "cell", cellId: "m2" });
    expect(hovered.hoveredEntity).toEqual({ kind: "cell", cellId: "m2" });
    expect({ ...hovered, hoveredEntity: null }).toEqual({ ...s, hoveredEntity: null });
    expect(hover(hovered, null).hoveredEntity).toBeNull();
  });

  it("pin toggling is an involution", () => {
    const pinned = togglePin(base(), "c1");
    expect(pinned.pinnedCells).toEqual(["c1"]);
    expect(togglePin(pinned, "c1")).toEqual(base());
  });

  it("pinning never alters flow geometry", () => {
    const pinned = togglePin(togglePin(base(), "c1"), "o1");
    expect(effectiveLayout(payload, pinned)).toEqual(effectiveLayout(payload, base()));
  });
});

describe("relationship queries", () => {
  it("finds partners across aggregated pairs", () => {
    expect(relatedCells(payload, "m1")).toEqual(["c1", "o1"]);
    expect(relatedCells(payload, "c1")).toEqual(["m1", "m2"]);
    expect(relatedCells(payload, "c2")).toEqual([]);
  });

  it("activates relationships by hover target", () => {
    expect(activeRelationships(payload, null)).toEqual([]);
    expect(activeRelationships(payload, { kind: "cell", cellId: "m1" })).toEqual([0, 1, 3]);
    expect(
      activeRelationships(payload, { kind: "span", cellId: "m1", relIndices: [0] }),
    ).toEqual([0]);
    expect(activeRelationships(payload, { kind: "link", pair: ["m2", "c1"] })).toEqual([2]);
  });

  it("lights the hovered cell and every counterpart", () => {
    expect(activeCells(payload, { kind: "cell", cellId: "m1" })).toEqual(
      new Set(["m1", "c1", "o1"]),
    );
    expect(activeCells(payload, { kind: "link", pair: ["m2", "c1"] })).toEqual(
      new Set(["m2", "c1"]),
    );
    expect(activeCells(payload, null)).toEqual(new Set());
  });

  it("matches cues and links against the active set", () => {
    const rels = activeRelationships(payload, { kind: "cell", cellId: "m2" });
    expect(rels).toEqual([2]);
    expect(cueActive(rels, [2])).toBe(true);
    expect(cueActive(rels, [0, 1])).toBe(false);
    expect(linkActive(payload, rels, ["m2", "c1"])).toBe(true);
    expect(linkActive(payload, rels, ["m1", "c1"])).toBe(false);
  });
});

describe("focus mode", () => {
  it("leaves exactly the focused cell plus its related cells visible", () => {
    const visible = visibleCells(payload, "m1");
    expect(visible).toEqual(new Set(["m1", "c1", "o1"]));
    expect(visible.size).toBe(relatedCells(payload, "m1").length + 1);
  });

  it("isolates a relationship-free cell", () => {
    expect(visibleCells(payload, "c2")).toEqual(new Set(["c2"]));
  });

  it("restores the full set when focus ends", () => {
    const focused = setFocus(base(), "m1", true);
    const restored = setFocus(focused, "m1", false);
    expect(visibleCells(payload, restored.focusCell)).toEqual(
      new Set(["m1", "m2", "c1", "o1", "c2"]),
    );
    expect(restored).toEqual(base());
  });

  it("compacts each column in order with the cell gap", () => {
    const layout = effectiveLayout(payload, setFocus(base(), "m1", true));
    const box = (id: string) => layout.cells.find((c) => c.cellId === id)!;
    expect(box("m1")).toMatchObject({ y: 0, visible: true });
    expect(box("c1")).toMatchObject({ y: 0, visible: true });
    expect(box("o1")).toMatchObject({ y: 100, visible: true }); // 84 + 16
    expect(box("m2").visible).toBe(false);
    expect(box("c2").visible).toBe(false);
    expect(layout.totalHeight).toBe(204);
  });

  it("keeps only links whose two ends stay visible, rerouted", () => {
    const layout = effectiveLayout(payload, setFocus(base(), "m1", true));
    expect(layout.links.map((l) => l.pair)).toEqual([
      ["m1", "c1"],
      ["m1", "o1"],
    ]);
    const toO1 = layout.links[1];
    expect(toO1.fromPoint).toEqual([420, 60]);
    expect(toO1.toPoint).toEqual([500, 152]);
    expect(toO1.curve).toEqual([
      [460, 60],
      [460, 152],
    ]);
  });
});

describe("linear mode", () => {
  it("stacks every cell in notebook order at natural height, no links", () => {
    const layout = effectiveLayout(payload, toggleLayout(base()));
    expect(layout.mode).toBe("linear");
    expect(layout.links).toEqual([]);
    expect(layout.cells.map((c) => c.cellId)).toEqual(payload.linearOrder);
    expect(layout.cells.map((c) => c.y)).toEqual([0, 196, 276, 376, 496]);
    expect(layout.cells.map((c) => c.height)).toEqual([180, 64, 84, 104, 64]);
    expect(layout.totalHeight).toBe(560);
    expect(layout.cells.every((c) => c.visible)).toBe(true);
  });
});

describe("pinning", () => {
  it("stacks pins from the viewport bottom, newest lowest", () => {
    const state = togglePin(togglePin(base(), "c1"), "o1");
    const slots = pinSlots(payload, state, 800);
    expect(slots.get("o1")).toBe(800 - 8 - 104); // newest sits lowest
    expect(slots.get("c1")).toBe(688 - 8 - 84);
  });

  it("keeps a pinned cell at the same viewport position at any scroll", () => {
    const state = togglePin(base(), "c1");
    const at = (scrollY: number) => viewportBox(payload, state, "c1", scrollY, 800);
    const resting = at(0);
    expect(resting.fixed).toBe(true);
    expect(at(500)).toEqual(resting);
    expect(at(5000)).toEqual(resting);
    const top = resting.top;
    expect(top).toBeGreaterThanOrEqual(0);
    expect(top + 84).toBeLessThanOrEqual(800);
  });

  it("unpinned cells move with the page", () => {
    expect(viewportBox(payload, base(), "m2", 0, 800)).toEqual({ top: 136, fixed: false });
    expect(viewportBox(payload, base(), "m2", 300, 800)).toEqual({ top: -164, fixed: false });
  });
});

describe("tooltips and auto-scroll targets", () => {
  it("cue hover targets the other end of its lowest relationship", () => {
    expect(counterpartCell(payload, { kind: "span", cellId: "m1", relIndices: [0] })).toBe("c1");
    expect(counterpartCell(payload, { kind: "sketch", cellId: "o1", relIndices: [1] })).toBe("m1");
    expect(counterpartCell(payload, { kind: "cell", cellId: "m1" })).toBeNull();
    expect(counterpartCell(payload, { kind: "link", pair: ["m1", "c1"] })).toBeNull();
  });

  it("shows code and rendered-text snippets", () => {
    expect(tooltipFor(payload, { kind: "span", cellId: "m1", relIndices: [0] })).toEqual({
      kind: "text",
      cellId: "c1",
      text: "w = trim(w)",
    });
    expect(tooltipFor(payload, { kind: "sketch", cellId: "o1", relIndices: [1] })).toEqual({
      kind: "text",
      cellId: "m1",
      text: "uses weight trim", // tags stripped from the rendered html
    });
  });

  it("shows an image thumbnail for image outputs", () => {
    expect(tooltipFor(payload, { kind: "span", cellId: "m1", relIndices: [1] })).toEqual({
      kind: "image",
      cellId: "o1",
      dataUri: "data:image/png;base64,AAAA",
    });
  });

  it("caps text snippets at 200 characters", () => {
    const long = demoPayload();
    const c1 = long.cells.find((c) => c.id === "c1")!;
    c1.source = "x".repeat(500);
    const tip = tooltipFor(long, { kind: "span", cellId: "m1", relIndices: [0] });
    expect(tip).toMatchObject({ kind: "text" });
    expect((tip as { text: string }).text).toHaveLength(200);
  });
});
