/**
 * DOM construction and state application.
 *
 * The page is built once from the payload; applyState then repositions
 * cells, redraws links, and reassigns cue classes. Cue class strings
 * are fully owned by this module (bodies, span wrappers, sketch
 * shapes), so reapplying is a plain overwrite, never a diff.
 */

import { cueClasses, type Granularity, type SpanColor } from "./cues";
import type {
  CellKind,
  CellPayload,
  DataPayload,
  LinkGeometry,
  SketchCue,
  SpanMapEntry,
} from "./payload";
import {
  activeCells,
  activeRelationships,
  cueActive,
  effectiveLayout,
  linkActive,
  pinSlots,
  tooltipFor,
  type HoverRef,
  type ViewState,
} from "./state";

const SVG_NS = "http://www.w3.org/2000/svg";

export interface Handlers {
  onToggleLayout(): void;
  onHover(ref: HoverRef | null): void;
  onShiftClick(cellId: string): void;
  onTogglePin(cellId: string): void;
}

interface CueElRef {
  el: Element;
  granularity: Granularity;
  contentType: CellKind;
  relIndices: number[];
  spanColor?: SpanColor;
}

export interface Refs {
  root: HTMLElement;
  canvas: HTMLElement;
  svg: SVGSVGElement;
  toggleButton: HTMLButtonElement;
  tooltip: HTMLElement;
  cellEls: Map<string, HTMLElement>;
  bodyEls: Map<string, HTMLElement>;
  pinButtons: Map<string, HTMLButtonElement>;
  cueRefs: CueElRef[];
  handlers: Handlers;
}

export interface ApplyOptions {
  viewportHeight: number;
  pointer?: { x: number; y: number };
}

// ---------------------------------------------------------------------------
// Build
// ---------------------------------------------------------------------------

function wrapPlainRange(
  rootEl: HTMLElement,
  start: number,
  end: number,
  make: () => HTMLElement,
): HTMLElement[] {
  if (end <= start) return [];
  const doc = rootEl.ownerDocument;
  const walker = doc.createTreeWalker(rootEl, 0x4 /* NodeFilter.SHOW_TEXT */);
  const textNodes: Text[] = [];
  for (let n = walker.nextNode(); n !== null; n = walker.nextNode()) {
    textNodes.push(n as Text);
  }
  const wrappers: HTMLElement[] = [];
  let offset = 0;
  for (const node of textNodes) {
    const nodeStart = offset;
    const nodeEnd = offset + node.data.length;
    offset = nodeEnd;
    const from = Math.max(start, nodeStart);
    const to = Math.min(end, nodeEnd);
    if (from >= to) continue;
    let target = node;
    if (from > nodeStart) target = target.splitText(from - nodeStart);
    if (to - from < target.data.length) target.splitText(to - from);
    const wrapper = make();
    target.parentNode!.insertBefore(wrapper, target);
    wrapper.appendChild(target);
    wrappers.push(wrapper);
  }
  return wrappers;
}

function spanRange(cell: CellPayload, start: number, length: number): [number, number] {
  if (cell.kind === "code") {
    return [start, start + length]; // code renders verbatim
  }
  const entry: SpanMapEntry | undefined = (cell.spanMap ?? []).find(
    (m) => m.start === start && m.length === length,
  );
  return entry === undefined ? [0, 0] : [entry.renderedStart, entry.renderedEnd];
}

function buildOutputs(doc: Document, cell: CellPayload, body: HTMLElement): void {
  for (const output of cell.outputs ?? []) {
    if (output.imageDataUri !== null) {
      const img = doc.createElement("img");
      img.className = "il-output-image";
      img.src = output.imageDataUri;
      img.alt = cell.id;
      body.appendChild(img);
    } else if (output.textContent !== null) {
      const pre = doc.createElement("pre");
      pre.className = "il-output-text";
      pre.textContent = output.textContent;
      body.appendChild(pre);
    }
  }
}

function buildSketchLayer(
  doc: Document,
  body: HTMLElement,
  sketches: SketchCue[],
  refs: Refs,
): void {
  if (sketches.length === 0) return;
  const [vw, vh] = sketches[0].viewSize;
  const layer = doc.createElementNS(SVG_NS, "svg");
  layer.setAttribute("class", "il-sketch-layer");
  layer.setAttribute("viewBox", `0 0 ${vw} ${vh}`);
  layer.setAttribute("preserveAspectRatio", "none");
  for (const cue of sketches) {
    let shape: SVGElement;
    if ("bbox" in cue.sketch) {
      const [x, y, w, h, angle] = cue.sketch.bbox;
      shape = doc.createElementNS(SVG_NS, "rect");
      shape.setAttribute("x", String(x));
      shape.setAttribute("y", String(y));
      shape.setAttribute("width", String(w));
      shape.setAttribute("height", String(h));
      if (angle !== 0) {
        shape.setAttribute("transform", `rotate(${angle} ${x + w / 2} ${y + h / 2})`);
      }
    } else {
      shape = doc.createElementNS(SVG_NS, "path");
      shape.setAttribute("d", cue.sketch.path);
    }
    const cellId = body.closest("[data-cell-id]")?.getAttribute("data-cell-id") ?? "";
    const ref: HoverRef = { kind: "sketch", cellId, relIndices: cue.relIndices };
    shape.addEventListener("mouseenter", () => refs.handlers.onHover(ref));
    shape.addEventListener("mouseleave", () => refs.handlers.onHover(null));
    layer.appendChild(shape);
    refs.cueRefs.push({
      el: shape,
      granularity: "segment",
      contentType: "output",
      relIndices: cue.relIndices,
    });
  }
  body.appendChild(layer);
}

export function build(root: HTMLElement, payload: DataPayload, handlers: Handlers): Refs {
  const doc = root.ownerDocument;
  root.textContent = "";
  root.className = "il-root";

  const toolbar = doc.createElement("div");
  toolbar.className = "il-toolbar";
  const title = doc.createElement("span");
  title.className = "il-title";
  title.textContent = payload.notebookName;
  const toggleButton = doc.createElement("button");
  toggleButton.className = "il-toggle";
  toggleButton.type = "button";
  toolbar.appendChild(title);
  toolbar.appendChild(toggleButton);
  root.appendChild(toolbar);

  const canvas = doc.createElement("div");
  canvas.className = "il-canvas";
  root.appendChild(canvas);

  const svg = doc.createElementNS(SVG_NS, "svg");
  svg.setAttribute("class", "il-links");
  canvas.appendChild(svg);

  const tooltip = doc.createElement("div");
  tooltip.className = "il-tooltip";
  tooltip.style.display = "none";
  root.appendChild(tooltip);

  const refs: Refs = {
    root,
    canvas,
    svg,
    toggleButton,
    tooltip,
    cellEls: new Map(),
    bodyEls: new Map(),
    pinButtons: new Map(),
    cueRefs: [],
    handlers,
  };

  toggleButton.addEventListener("click", () => handlers.onToggleLayout());

  const cues = new Map(payload.layout.cueAnnotations.map((c) => [c.cellId, c]));
  const cellsById = new Map(payload.cells.map((c) => [c.id, c]));

  for (const cellId of payload.linearOrder) {
    const cell = cellsById.get(cellId)!;
    const el = doc.createElement("div");
    el.className = `il-cell il-kind-${cell.kind}`;
    el.setAttribute("data-cell-id", cell.id);

    const pin = doc.createElement("button");
    pin.className = "il-pin";
    pin.type = "button";
    pin.textContent = "pin";
    pin.addEventListener("click", (ev) => {
      ev.stopPropagation();
      handlers.onTogglePin(cell.id);
    });
    el.appendChild(pin);

    const body = doc.createElement("div");
    body.className = "il-cell-body";
    // measured heights bake these in, so CSS must not hardcode them
    body.style.padding = `${payload.layout.config.cellPadding}px`;
    body.style.lineHeight = `${payload.layout.config.lineHeight}px`;
    el.appendChild(body);

    if (cell.kind === "text") {
      body.innerHTML = cell.html ?? "";
    } else if (cell.kind === "code") {
      const pre = doc.createElement("pre");
      pre.className = "il-code";
      const codeEl = doc.createElement("code");
      codeEl.textContent = cell.source;
      pre.appendChild(codeEl);
      body.appendChild(pre);
    } else {
      buildOutputs(doc, cell, body);
    }

    el.addEventListener("mouseenter", () =>
      handlers.onHover({ kind: "cell", cellId: cell.id }),
    );
    el.addEventListener("mouseleave", () => handlers.onHover(null));
    el.addEventListener("click", (ev) => {
      if (ev.shiftKey) handlers.onShiftClick(cell.id);
    });

    const cue = cues.get(cell.id);
    if (cue !== undefined) {
      if (cue.wholeCell !== null) {
        refs.cueRefs.push({
          el: body,
          granularity: "cell",
          contentType: cell.kind,
          relIndices: cue.wholeCell.relIndices,
        });
      }
      for (const span of cue.spans) {
        const [from, to] = spanRange(cell, span.start, span.length);
        const wrappers = wrapPlainRange(body, from, to, () => {
          const w = doc.createElement("span");
          const ref: HoverRef = { kind: "span", cellId: cell.id, relIndices: span.relIndices };
          w.addEventListener("mouseenter", () => handlers.onHover(ref));
          w.addEventListener("mouseleave", () => handlers.onHover(null));
          return w;
        });
        for (const w of wrappers) {
          refs.cueRefs.push({
            el: w,
            granularity: "segment",
            contentType: cell.kind,
            relIndices: span.relIndices,
            spanColor: span.colorClass as SpanColor,
          });
        }
      }
      buildSketchLayer(doc, body, cue.sketches, refs);
    }

    refs.cellEls.set(cell.id, el);
    refs.bodyEls.set(cell.id, body);
    refs.pinButtons.set(cell.id, pin);
    canvas.appendChild(el);
  }

  return refs;
}

// ---------------------------------------------------------------------------
// Apply
// ---------------------------------------------------------------------------

function drawLinks(
  refs: Refs,
  payload: DataPayload,
  links: LinkGeometry[],
  activeRels: number[],
): void {
  const doc = refs.svg.ownerDocument;
  refs.svg.textContent = "";
  for (const link of links) {
    const [fx, fy] = link.fromPoint;
    const [tx, ty] = link.toPoint;
    const [[c1x, c1y], [c2x, c2y]] = link.curve;
    const path = doc.createElementNS(SVG_NS, "path");
    const active = linkActive(payload, activeRels, link.pair);
    path.setAttribute("class", active ? "il-link il-link-active" : "il-link");
    path.setAttribute("d", `M ${fx} ${fy} C ${c1x} ${c1y} ${c2x} ${c2y} ${tx} ${ty}`);
    path.addEventListener("mouseenter", () =>
      refs.handlers.onHover({ kind: "link", pair: link.pair }),
    );
    path.addEventListener("mouseleave", () => refs.handlers.onHover(null));
    refs.svg.appendChild(path);
  }
}

export function applyState(
  refs: Refs,
  payload: DataPayload,
  state: ViewState,
  opts: ApplyOptions,
): void {
  const layout = effectiveLayout(payload, state);
  const slots = pinSlots(payload, state, opts.viewportHeight);
  const activeRels = activeRelationships(payload, state.hoveredEntity);
  const litCells = activeCells(payload, state.hoveredEntity);

  refs.root.classList.toggle("il-mode-linear", layout.mode === "linear");
  refs.root.classList.toggle("il-mode-side", layout.mode === "sideBySide");
  refs.toggleButton.textContent =
    layout.mode === "sideBySide" ? "view: side-by-side" : "view: linear";

  refs.canvas.style.width = `${layout.totalWidth}px`;
  refs.canvas.style.height = `${layout.totalHeight}px`;
  refs.svg.setAttribute("width", String(layout.totalWidth));
  refs.svg.setAttribute("height", String(layout.totalHeight));

  const canvasLeft = refs.canvas.getBoundingClientRect().left;
  for (const box of layout.cells) {
    const el = refs.cellEls.get(box.cellId)!;
    if (!box.visible) {
      el.style.display = "none";
      continue;
    }
    el.style.display = "";
    const slot = slots.get(box.cellId);
    if (slot !== undefined) {
      el.style.position = "fixed";
      el.style.top = `${slot}px`;
      el.style.left = `${canvasLeft + box.x}px`;
      el.classList.add("il-pinned");
    } else {
      el.style.position = "absolute";
      el.style.top = `${box.y}px`;
      el.style.left = `${box.x}px`;
      el.classList.remove("il-pinned");
    }
    el.style.width = `${box.width}px`;
    el.style.height = `${box.height}px`;
    el.classList.toggle("il-scrollable", box.scrollable);
    el.classList.toggle("il-active", litCells.has(box.cellId));
    const pin = refs.pinButtons.get(box.cellId)!;
    pin.textContent = slot !== undefined ? "unpin" : "pin";
  }

  for (const cue of refs.cueRefs) {
    const active = cueActive(activeRels, cue.relIndices);
    const classes = cueClasses(cue.granularity, cue.contentType, active, cue.spanColor);
    if (cue.granularity === "cell") {
      cue.el.setAttribute("class", `il-cell-body ${classes}`);
    } else {
      cue.el.setAttribute("class", classes);
    }
  }

  drawLinks(refs, payload, layout.links, activeRels);

  const tip = tooltipFor(payload, state.hoveredEntity);
  if (tip === null || opts.pointer === undefined) {
    refs.tooltip.style.display = "none";
  } else {
    refs.tooltip.style.display = "";
    refs.tooltip.textContent = "";
    if (tip.kind === "text") {
      refs.tooltip.textContent = tip.text;
    } else {
      const img = refs.root.ownerDocument.createElement("img");
      img.src = tip.dataUri;
      img.alt = tip.cellId;
      refs.tooltip.appendChild(img);
    }
    refs.tooltip.style.left = `${opts.pointer.x + 12}px`;
    refs.tooltip.style.top = `${opts.pointer.y + 12}px`;
  }
}
