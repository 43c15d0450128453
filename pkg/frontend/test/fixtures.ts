/**
 * A small, internally consistent payload: two text cells, two code
 * cells, one output cell, four relationships exercising every cue
 * variant (text spans in all three colors, a code segment, whole-cell
 * frames, and both sketch shapes).
 */

import type { Anchor, DataPayload } from "../src/payload";

function cellAnchor(cellId: string, cellType: Anchor["cellType"]): Anchor {
  return { cellId, cellType, granularityType: "cell", spanPos: null, sketch: null, viewSize: null };
}

function spanAnchor(
  cellId: string,
  cellType: Anchor["cellType"],
  start: number,
  length: number,
): Anchor {
  return {
    cellId,
    cellType,
    granularityType: "segment",
    spanPos: { start, length },
    sketch: null,
    viewSize: null,
  };
}

function sketchAnchor(cellId: string, sketch: Anchor["sketch"]): Anchor {
  return {
    cellId,
    cellType: "output",
    granularityType: "segment",
    spanPos: null,
    sketch,
    viewSize: [200, 100],
  };
}

export function demoPayload(): DataPayload {
  return {
    defaultMode: "sideBySide",
    notebookName: "demo",
    layout: {
      config: {
        leftColumnWidth: 420,
        rightColumnWidth: 560,
        columnGap: 80,
        cellGap: 16,
        cellPadding: 12,
        lineHeight: 20,
        avgCharWidth: 8,
        minCellHeight: 40,
        defaultTextHeight: 120,
      },
      totalHeight: 284,
      placedCells: [
        { cellId: "m1", column: "left", y: 0, height: 120, contentHeight: 180, scrollable: true },
        { cellId: "m2", column: "left", y: 136, height: 64, contentHeight: 64, scrollable: false },
        { cellId: "c1", column: "right", y: 0, height: 84, contentHeight: 84, scrollable: false },
        { cellId: "o1", column: "right", y: 100, height: 104, contentHeight: 104, scrollable: false },
        { cellId: "c2", column: "right", y: 220, height: 64, contentHeight: 64, scrollable: false },
      ],
      spacers: [],
      aggregatedPairs: [
        ["m1", "c1"],
        ["m1", "o1"],
        ["m2", "c1"],
      ],
      links: [
        { pair: ["m1", "c1"], fromPoint: [420, 60], toPoint: [500, 42], curve: [[460, 60], [460, 42]] },
        { pair: ["m1", "o1"], fromPoint: [420, 60], toPoint: [500, 152], curve: [[460, 60], [460, 152]] },
        { pair: ["m2", "c1"], fromPoint: [420, 168], toPoint: [500, 42], curve: [[460, 168], [460, 42]] },
      ],
      cueAnnotations: [
        {
          cellId: "m1",
          wholeCell: { relIndices: [3] },
          spans: [
            { start: 0, length: 4, colorClass: "output-related", relIndices: [1] },
            { start: 5, length: 10, colorClass: "code-related", relIndices: [0] },
          ],
          sketches: [],
        },
        { cellId: "m2", wholeCell: { relIndices: [2] }, spans: [], sketches: [] },
        {
          cellId: "c1",
          wholeCell: { relIndices: [2] },
          spans: [{ start: 4, length: 4, colorClass: "code-segment", relIndices: [0] }],
          sketches: [],
        },
        {
          cellId: "o1",
          wholeCell: null,
          spans: [],
          sketches: [
            { sketch: { bbox: [10, 10, 50, 40, 0] }, viewSize: [200, 100], relIndices: [1] },
            { sketch: { path: "M 5 5 L 90 5" }, viewSize: [200, 100], relIndices: [3] },
          ],
        },
      ],
    },
    cells: [
      {
        id: "m1",
        kind: "text",
        ordinal: 0,
        source: "uses **weight** trim",
        html: "<p>uses <strong>weight</strong> trim</p>\n",
        spanMap: [
          { start: 0, length: 4, renderedStart: 0, renderedEnd: 4 },
          { start: 5, length: 10, renderedStart: 5, renderedEnd: 11 },
        ],
      },
      {
        id: "m2",
        kind: "text",
        ordinal: 1,
        source: "prep step.",
        html: "<p>prep step.</p>\n",
      },
      { id: "c1", kind: "code", ordinal: 2, source: "w = trim(w)" },
      {
        id: "o1",
        kind: "output",
        ordinal: 3,
        source: "",
        outputs: [
          {
            mime: "image/png",
            textContent: null,
            imageDims: [4, 4],
            imageDataUri: "data:image/png;base64,AAAA",
          },
        ],
      },
      { id: "c2", kind: "code", ordinal: 4, source: "x = 1\ny = 2" },
    ],
    relationships: [
      {
        source: spanAnchor("m1", "text", 5, 10),
        target: spanAnchor("c1", "code", 4, 4),
        class: {
          categoryPair: "text-code",
          granularityCombo: "segment-segment-crossCell",
          inScope: true,
        },
        fileIndex: 0,
      },
      {
        source: spanAnchor("m1", "text", 0, 4),
        target: sketchAnchor("o1", { bbox: [10, 10, 50, 40, 0] }),
        class: {
          categoryPair: "text-output",
          granularityCombo: "segment-segment-crossCell",
          inScope: true,
        },
        fileIndex: 1,
      },
      {
        source: cellAnchor("m2", "text"),
        target: cellAnchor("c1", "code"),
        class: { categoryPair: "text-code", granularityCombo: "cell-cell", inScope: true },
        fileIndex: 2,
      },
      {
        source: cellAnchor("m1", "text"),
        target: sketchAnchor("o1", { path: "M 5 5 L 90 5" }),
        class: {
          categoryPair: "text-output",
          granularityCombo: "cell-segment",
          inScope: true,
        },
        fileIndex: 3,
      },
    ],
    linearOrder: ["m1", "m2", "c1", "o1", "c2"],
  };
}
