/**
 * The embedded data payload contract.
 *
 * The page carries one script element (id "interlink-data", type
 * application/json) whose body is this payload. Everything the viewer
 * does reads from it; there is no network access.
 */

export interface LayoutConfig {
  leftColumnWidth: number;
  rightColumnWidth: number;
  columnGap: number;
  cellGap: number;
  cellPadding: number;
  lineHeight: number;
  avgCharWidth: number;
  minCellHeight: number;
  defaultTextHeight: number;
}

export type Column = "left" | "right";
export type CellKind = "text" | "code" | "output";

export interface PlacedCell {
  cellId: string;
  column: Column;
  y: number;
  height: number;
  contentHeight: number;
  scrollable: boolean;
}

export interface Spacer {
  column: Column;
  y: number;
  height: number;
}

export type Point = [number, number];
export type CellPair = [string, string];

export interface LinkGeometry {
  pair: CellPair;
  fromPoint: Point;
  toPoint: Point;
  curve: [Point, Point];
}

export type SketchShape = { bbox: number[] } | { path: string };

export interface SpanCue {
  start: number;
  length: number;
  colorClass: string;
  relIndices: number[];
}

export interface SketchCue {
  sketch: SketchShape;
  viewSize: [number, number];
  relIndices: number[];
}

export interface CellCues {
  cellId: string;
  wholeCell: { relIndices: number[] } | null;
  spans: SpanCue[];
  sketches: SketchCue[];
}

export interface LayoutDoc {
  config: LayoutConfig;
  totalHeight: number;
  placedCells: PlacedCell[];
  spacers: Spacer[];
  aggregatedPairs: CellPair[];
  links: LinkGeometry[];
  cueAnnotations: CellCues[];
}

export interface SpanMapEntry {
  start: number;
  length: number;
  renderedStart: number;
  renderedEnd: number;
}

export interface OutputEntry {
  mime: string;
  textContent: string | null;
  imageDims: [number, number] | null;
  imageDataUri: string | null;
}

export interface CellPayload {
  id: string;
  kind: CellKind;
  ordinal: number;
  source: string;
  html?: string;
  spanMap?: SpanMapEntry[];
  outputs?: OutputEntry[];
}

export interface Anchor {
  cellId: string;
  cellType: CellKind;
  granularityType: "cell" | "segment";
  spanPos: { start: number; length: number } | null;
  sketch: SketchShape | null;
  viewSize: [number, number] | null;
}

export interface RelationshipPayload {
  source: Anchor;
  target: Anchor;
  class: { categoryPair: string; granularityCombo: string; inScope: boolean };
  fileIndex: number;
}

export interface DataPayload {
  defaultMode: "linear" | "sideBySide";
  notebookName: string;
  layout: LayoutDoc;
  cells: CellPayload[];
  relationships: RelationshipPayload[];
  linearOrder: string[];
}

export const DATA_ELEMENT_ID = "interlink-data";

export function readPayload(doc: Document): DataPayload {
  const el = doc.getElementById(DATA_ELEMENT_ID);
  if (el === null || el.textContent === null) {
    throw new Error(`no #${DATA_ELEMENT_ID} payload element in the page`);
  }
  return JSON.parse(el.textContent) as DataPayload;
}
