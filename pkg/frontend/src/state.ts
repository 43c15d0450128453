/**
 * View state and every placement decision the DOM layer needs.
 *
 * All transitions are pure: they take a state and return a new one, so
 * the event wiring stays a thin dispatch loop. Derived geometry
 * (focus-mode compaction, linear stacking, pin slots) is computed here
 * rather than in the renderer so it can be tested without a browser.
 */

import type {
  CellPair,
  CellPayload,
  DataPayload,
  LinkGeometry,
} from "./payload";

export type LayoutMode = "linear" | "sideBySide";

export type HoverRef =
  | { kind: "cell"; cellId: string }
  | { kind: "span"; cellId: string; relIndices: number[] }
  | { kind: "sketch"; cellId: string; relIndices: number[] }
  | { kind: "link"; pair: CellPair };

export interface ViewState {
  layoutMode: LayoutMode;
  hoveredEntity: HoverRef | null;
  pinnedCells: string[]; // pin order, oldest first
  focusCell: string | null;
}

export function initialState(payload: DataPayload): ViewState {
  return {
    layoutMode: payload.defaultMode,
    hoveredEntity: null,
    pinnedCells: [],
    focusCell: null,
  };
}

export function toggleLayout(state: ViewState): ViewState {
  const layoutMode: LayoutMode = state.layoutMode === "sideBySide" ? "linear" : "sideBySide";
  return { ...state, layoutMode };
}

export function hover(state: ViewState, entity: HoverRef | null): ViewState {
  return { ...state, hoveredEntity: entity };
}

export function setFocus(state: ViewState, cellId: string, active: boolean): ViewState {
  return { ...state, focusCell: active ? cellId : null };
}

export function togglePin(state: ViewState, cellId: string): ViewState {
  const pinnedCells = state.pinnedCells.includes(cellId)
    ? state.pinnedCells.filter((id) => id !== cellId)
    : [...state.pinnedCells, cellId];
  return { ...state, pinnedCells };
}

// ---------------------------------------------------------------------------
// Relationship queries
// ---------------------------------------------------------------------------

export function relatedCells(payload: DataPayload, cellId: string): string[] {
  const partners: string[] = [];
  for (const [a, b] of payload.layout.aggregatedPairs) {
    if (a === cellId && !partners.includes(b)) partners.push(b);
    if (b === cellId && !partners.includes(a)) partners.push(a);
  }
  return partners;
}

function samePair(pair: CellPair, a: string, b: string): boolean {
  return (pair[0] === a && pair[1] === b) || (pair[0] === b && pair[1] === a);
}

/** Indices into payload.relationships the hovered entity activates. */
export function activeRelationships(payload: DataPayload, entity: HoverRef | null): number[] {
  if (entity === null) return [];
  const indices: number[] = [];
  payload.relationships.forEach((rel, i) => {
    const ends = [rel.source.cellId, rel.target.cellId];
    switch (entity.kind) {
      case "cell":
        if (ends.includes(entity.cellId)) indices.push(i);
        break;
      case "span":
      case "sketch":
        if (entity.relIndices.includes(i)) indices.push(i);
        break;
      case "link":
        if (samePair(entity.pair, ends[0], ends[1])) indices.push(i);
        break;
    }
  });
  return indices;
}

export function activeCells(payload: DataPayload, entity: HoverRef | null): Set<string> {
  const active = new Set<string>();
  if (entity === null) return active;
  if (entity.kind !== "link") active.add(entity.cellId);
  for (const i of activeRelationships(payload, entity)) {
    active.add(payload.relationships[i].source.cellId);
    active.add(payload.relationships[i].target.cellId);
  }
  return active;
}

export function cueActive(activeRels: readonly number[], relIndices: readonly number[]): boolean {
  return relIndices.some((i) => activeRels.includes(i));
}

export function linkActive(
  payload: DataPayload,
  activeRels: readonly number[],
  pair: CellPair,
): boolean {
  return activeRels.some((i) => {
    const rel = payload.relationships[i];
    return samePair(pair, rel.source.cellId, rel.target.cellId);
  });
}

// ---------------------------------------------------------------------------
// Effective geometry per mode and focus
// ---------------------------------------------------------------------------

export function visibleCells(payload: DataPayload, focusCell: string | null): Set<string> {
  if (focusCell === null) {
    return new Set(payload.linearOrder);
  }
  return new Set([focusCell, ...relatedCells(payload, focusCell)]);
}

export interface CellBox {
  cellId: string;
  column: "left" | "right";
  x: number;
  y: number;
  width: number;
  height: number;
  scrollable: boolean;
  visible: boolean;
}

export interface EffectiveLayout {
  mode: LayoutMode;
  cells: CellBox[];
  links: LinkGeometry[];
  totalWidth: number;
  totalHeight: number;
}

function sideBySideLayout(payload: DataPayload, focusCell: string | null): EffectiveLayout {
  const cfg = payload.layout.config;
  const visible = visibleCells(payload, focusCell);
  const x = { left: 0, right: cfg.leftColumnWidth + cfg.columnGap };
  const width = { left: cfg.leftColumnWidth, right: cfg.rightColumnWidth };

  const cursor = { left: 0, right: 0 };
  const cells: CellBox[] = payload.layout.placedCells.map((p) => {
    const shown = visible.has(p.cellId);
    let y = p.y;
    if (focusCell !== null && shown) {
      y = cursor[p.column]; // compacted: visible cells keep order, gap apart
      cursor[p.column] = y + p.height + cfg.cellGap;
    }
    return {
      cellId: p.cellId,
      column: p.column,
      x: x[p.column],
      y,
      width: width[p.column],
      height: p.height,
      scrollable: p.scrollable,
      visible: shown,
    };
  });

  let links = payload.layout.links;
  let totalHeight = payload.layout.totalHeight;
  if (focusCell !== null) {
    const byId = new Map(cells.map((c) => [c.cellId, c]));
    links = payload.layout.aggregatedPairs
      .filter(([a, b]) => visible.has(a) && visible.has(b))
      .map(([a, b]) => {
        const first = byId.get(a)!;
        const second = byId.get(b)!;
        const left = first.column === "left" ? first : second;
        const right = first.column === "right" ? first : second;
        const fromY = left.y + left.height / 2;
        const toY = right.y + right.height / 2;
        const midX = cfg.leftColumnWidth + cfg.columnGap / 2;
        return {
          pair: [a, b] as CellPair,
          fromPoint: [cfg.leftColumnWidth, fromY] as [number, number],
          toPoint: [cfg.leftColumnWidth + cfg.columnGap, toY] as [number, number],
          curve: [[midX, fromY], [midX, toY]] as [[number, number], [number, number]],
        };
      })
      .sort((l, r) => {
        if (l.fromPoint[1] !== r.fromPoint[1]) return l.fromPoint[1] - r.fromPoint[1];
        if (l.toPoint[1] !== r.toPoint[1]) return l.toPoint[1] - r.toPoint[1];
        return l.pair.join(",") < r.pair.join(",") ? -1 : 1;
      });
    totalHeight = Math.max(0, ...cells.filter((c) => c.visible).map((c) => c.y + c.height));
  }

  return {
    mode: "sideBySide",
    cells,
    links,
    totalWidth: cfg.leftColumnWidth + cfg.columnGap + cfg.rightColumnWidth,
    totalHeight,
  };
}

function linearLayout(payload: DataPayload, focusCell: string | null): EffectiveLayout {
  const cfg = payload.layout.config;
  const visible = visibleCells(payload, focusCell);
  const contentHeight = new Map(
    payload.layout.placedCells.map((p) => [p.cellId, p.contentHeight]),
  );
  const column = new Map(payload.layout.placedCells.map((p) => [p.cellId, p.column]));

  let cursor = 0;
  const cells: CellBox[] = payload.linearOrder.map((cellId) => {
    const shown = visible.has(cellId);
    const height = contentHeight.get(cellId) ?? cfg.minCellHeight;
    let y = 0;
    if (shown) {
      y = cursor;
      cursor = y + height + cfg.cellGap;
    }
    return {
      cellId,
      column: column.get(cellId) ?? "left",
      x: 0,
      y,
      width: cfg.rightColumnWidth,
      height,
      scrollable: false, // natural height; nothing to scroll
      visible: shown,
    };
  });

  return {
    mode: "linear",
    cells,
    links: [],
    totalWidth: cfg.rightColumnWidth,
    totalHeight: cursor === 0 ? 0 : cursor - cfg.cellGap,
  };
}

export function effectiveLayout(payload: DataPayload, state: ViewState): EffectiveLayout {
  return state.layoutMode === "sideBySide"
    ? sideBySideLayout(payload, state.focusCell)
    : linearLayout(payload, state.focusCell);
}

// ---------------------------------------------------------------------------
// Pinned cells: fixed to the viewport, stacked from the bottom, newest lowest
// ---------------------------------------------------------------------------

export const PIN_MARGIN = 8;
export const PIN_GAP = 8;

export function pinSlots(
  payload: DataPayload,
  state: ViewState,
  viewportHeight: number,
): Map<string, number> {
  const boxes = new Map(effectiveLayout(payload, state).cells.map((c) => [c.cellId, c]));
  const slots = new Map<string, number>();
  let bottom = viewportHeight - PIN_MARGIN;
  for (let i = state.pinnedCells.length - 1; i >= 0; i--) {
    const cellId = state.pinnedCells[i];
    const height = boxes.get(cellId)?.height ?? 0;
    const top = bottom - height;
    slots.set(cellId, top);
    bottom = top - PIN_GAP;
  }
  return slots;
}

export interface ViewportBox {
  top: number;
  fixed: boolean;
}

export function viewportBox(
  payload: DataPayload,
  state: ViewState,
  cellId: string,
  scrollY: number,
  viewportHeight: number,
): ViewportBox {
  const slot = pinSlots(payload, state, viewportHeight).get(cellId);
  if (slot !== undefined) {
    return { top: slot, fixed: true };
  }
  const box = effectiveLayout(payload, state).cells.find((c) => c.cellId === cellId);
  return { top: (box?.y ?? 0) - scrollY, fixed: false };
}

// ---------------------------------------------------------------------------
// Tooltip and auto-scroll targets for cue hovers
// ---------------------------------------------------------------------------

export type Tooltip =
  | { kind: "text"; cellId: string; text: string }
  | { kind: "image"; cellId: string; dataUri: string };

const SNIPPET_LIMIT = 200;

function plainTextOfHtml(html: string): string {
  return html
    .replace(/<[^>]*>/g, "")
    .replace(/&lt;/g, "<")
    .replace(/&gt;/g, ">")
    .replace(/&quot;/g, '"')
    .replace(/&#39;/g, "'")
    .replace(/&amp;/g, "&");
}

function snippetOf(cell: CellPayload): Tooltip | null {
  if (cell.kind === "text") {
    const text = plainTextOfHtml(cell.html ?? "").trim().slice(0, SNIPPET_LIMIT);
    return { kind: "text", cellId: cell.id, text };
  }
  if (cell.kind === "code") {
    return { kind: "text", cellId: cell.id, text: cell.source.slice(0, SNIPPET_LIMIT) };
  }
  const image = (cell.outputs ?? []).find((o) => o.imageDataUri !== null);
  if (image !== undefined && image.imageDataUri !== null) {
    return { kind: "image", cellId: cell.id, dataUri: image.imageDataUri };
  }
  const text = (cell.outputs ?? [])
    .map((o) => o.textContent ?? "")
    .join("")
    .slice(0, SNIPPET_LIMIT);
  return { kind: "text", cellId: cell.id, text };
}

/** The other end of the lowest-numbered relationship a cue activates. */
export function counterpartCell(payload: DataPayload, entity: HoverRef | null): string | null {
  if (entity === null || (entity.kind !== "span" && entity.kind !== "sketch")) {
    return null;
  }
  const indices = activeRelationships(payload, entity);
  if (indices.length === 0) return null;
  const rel = payload.relationships[indices[0]];
  return rel.source.cellId === entity.cellId ? rel.target.cellId : rel.source.cellId;
}

export function tooltipFor(payload: DataPayload, entity: HoverRef | null): Tooltip | null {
  const counterpart = counterpartCell(payload, entity);
  if (counterpart === null) return null;
  const cell = payload.cells.find((c) => c.id === counterpart);
  return cell === undefined ? null : snippetOf(cell);
}
