"use strict";
(() => {
  // src/payload.ts
  var DATA_ELEMENT_ID = "interlink-data";
  function readPayload(doc) {
    const el = doc.getElementById(DATA_ELEMENT_ID);
    if (el === null || el.textContent === null) {
      throw new Error(`no #${DATA_ELEMENT_ID} payload element in the page`);
    }
    return JSON.parse(el.textContent);
  }

  // src/cues.ts
  var CUE_STYLE_TABLE = [
    { granularity: "cell", contentType: "text", active: false, classes: "il-cue-cell" },
    { granularity: "cell", contentType: "text", active: true, classes: "il-cue-cell il-cue-active" },
    { granularity: "cell", contentType: "code", active: false, classes: "il-cue-cell" },
    { granularity: "cell", contentType: "code", active: true, classes: "il-cue-cell il-cue-active" },
    { granularity: "cell", contentType: "output", active: false, classes: "il-cue-cell" },
    { granularity: "cell", contentType: "output", active: true, classes: "il-cue-cell il-cue-active" },
    { granularity: "segment", contentType: "text", active: false, classes: "il-underline" },
    { granularity: "segment", contentType: "text", active: true, classes: "il-underline il-cue-active" },
    { granularity: "segment", contentType: "code", active: false, classes: "il-underline" },
    { granularity: "segment", contentType: "code", active: true, classes: "il-underline il-cue-active" },
    { granularity: "segment", contentType: "output", active: false, classes: "il-sketch" },
    { granularity: "segment", contentType: "output", active: true, classes: "il-sketch il-sketch-active" }
  ];
  function cueClasses(granularity, contentType, active, spanColor) {
    const row = CUE_STYLE_TABLE.find(
      (r) => r.granularity === granularity && r.contentType === contentType && r.active === active
    );
    if (row === void 0) {
      throw new Error(`no cue style for ${granularity}/${contentType}`);
    }
    return spanColor === void 0 ? row.classes : `${row.classes} il-span-${spanColor}`;
  }

  // src/state.ts
  function initialState(payload) {
    return {
      layoutMode: payload.defaultMode,
      hoveredEntity: null,
      pinnedCells: [],
      focusCell: null
    };
  }
  function toggleLayout(state) {
    const layoutMode = state.layoutMode === "sideBySide" ? "linear" : "sideBySide";
    return { ...state, layoutMode };
  }
  function hover(state, entity) {
    return { ...state, hoveredEntity: entity };
  }
  function setFocus(state, cellId, active) {
    return { ...state, focusCell: active ? cellId : null };
  }
  function togglePin(state, cellId) {
    const pinnedCells = state.pinnedCells.includes(cellId) ? state.pinnedCells.filter((id) => id !== cellId) : [...state.pinnedCells, cellId];
    return { ...state, pinnedCells };
  }
  function relatedCells(payload, cellId) {
    const partners = [];
    for (const [a, b] of payload.layout.aggregatedPairs) {
      if (a === cellId && !partners.includes(b)) partners.push(b);
      if (b === cellId && !partners.includes(a)) partners.push(a);
    }
    return partners;
  }
  function samePair(pair, a, b) {
    return pair[0] === a && pair[1] === b || pair[0] === b && pair[1] === a;
  }
  function activeRelationships(payload, entity) {
    if (entity === null) return [];
    const indices = [];
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
  function activeCells(payload, entity) {
    const active = /* @__PURE__ */ new Set();
    if (entity === null) return active;
    if (entity.kind !== "link") active.add(entity.cellId);
    for (const i of activeRelationships(payload, entity)) {
      active.add(payload.relationships[i].source.cellId);
      active.add(payload.relationships[i].target.cellId);
    }
    return active;
  }
  function cueActive(activeRels, relIndices) {
    return relIndices.some((i) => activeRels.includes(i));
  }
  function linkActive(payload, activeRels, pair) {
    return activeRels.some((i) => {
      const rel = payload.relationships[i];
      return samePair(pair, rel.source.cellId, rel.target.cellId);
    });
  }
  function visibleCells(payload, focusCell) {
    if (focusCell === null) {
      return new Set(payload.linearOrder);
    }
    return /* @__PURE__ */ new Set([focusCell, ...relatedCells(payload, focusCell)]);
  }
  function sideBySideLayout(payload, focusCell) {
    const cfg = payload.layout.config;
    const visible = visibleCells(payload, focusCell);
    const x = { left: 0, right: cfg.leftColumnWidth + cfg.columnGap };
    const width = { left: cfg.leftColumnWidth, right: cfg.rightColumnWidth };
    const cursor = { left: 0, right: 0 };
    const cells = payload.layout.placedCells.map((p) => {
      const shown = visible.has(p.cellId);
      let y = p.y;
      if (focusCell !== null && shown) {
        y = cursor[p.column];
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
        visible: shown
      };
    });
    let links = payload.layout.links;
    let totalHeight = payload.layout.totalHeight;
    if (focusCell !== null) {
      const byId = new Map(cells.map((c) => [c.cellId, c]));
      links = payload.layout.aggregatedPairs.filter(([a, b]) => visible.has(a) && visible.has(b)).map(([a, b]) => {
        const first = byId.get(a);
        const second = byId.get(b);
        const left = first.column === "left" ? first : second;
        const right = first.column === "right" ? first : second;
        const fromY = left.y + left.height / 2;
        const toY = right.y + right.height / 2;
        const midX = cfg.leftColumnWidth + cfg.columnGap / 2;
        return {
          pair: [a, b],
          fromPoint: [cfg.leftColumnWidth, fromY],
          toPoint: [cfg.leftColumnWidth + cfg.columnGap, toY],
          curve: [[midX, fromY], [midX, toY]]
        };
      }).sort((l, r) => {
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
      totalHeight
    };
  }
  function linearLayout(payload, focusCell) {
    const cfg = payload.layout.config;
    const visible = visibleCells(payload, focusCell);
    const contentHeight = new Map(
      payload.layout.placedCells.map((p) => [p.cellId, p.contentHeight])
    );
    const column = new Map(payload.layout.placedCells.map((p) => [p.cellId, p.column]));
    let cursor = 0;
    const cells = payload.linearOrder.map((cellId) => {
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
        scrollable: false,
        // natural height; nothing to scroll
        visible: shown
      };
    });
    return {
      mode: "linear",
      cells,
      links: [],
      totalWidth: cfg.rightColumnWidth,
      totalHeight: cursor === 0 ? 0 : cursor - cfg.cellGap
    };
  }
  function effectiveLayout(payload, state) {
    return state.layoutMode === "sideBySide" ? sideBySideLayout(payload, state.focusCell) : linearLayout(payload, state.focusCell);
  }
  var PIN_MARGIN = 8;
  var PIN_GAP = 8;
  function pinSlots(payload, state, viewportHeight) {
    const boxes = new Map(effectiveLayout(payload, state).cells.map((c) => [c.cellId, c]));
    const slots = /* @__PURE__ */ new Map();
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
  var SNIPPET_LIMIT = 200;
  function plainTextOfHtml(html) {
    return html.replace(/<[^>]*>/g, "").replace(/&lt;/g, "<").replace(/&gt;/g, ">").replace(/&quot;/g, '"').replace(/&#39;/g, "'").replace(/&amp;/g, "&");
  }
  function snippetOf(cell) {
    if (cell.kind === "text") {
      const text2 = plainTextOfHtml(cell.html ?? "").trim().slice(0, SNIPPET_LIMIT);
      return { kind: "text", cellId: cell.id, text: text2 };
    }
    if (cell.kind === "code") {
      return { kind: "text", cellId: cell.id, text: cell.source.slice(0, SNIPPET_LIMIT) };
    }
    const image = (cell.outputs ?? []).find((o) => o.imageDataUri !== null);
    if (image !== void 0 && image.imageDataUri !== null) {
      return { kind: "image", cellId: cell.id, dataUri: image.imageDataUri };
    }
    const text = (cell.outputs ?? []).map((o) => o.textContent ?? "").join("").slice(0, SNIPPET_LIMIT);
    return { kind: "text", cellId: cell.id, text };
  }
  function counterpartCell(payload, entity) {
    if (entity === null || entity.kind !== "span" && entity.kind !== "sketch") {
      return null;
    }
    const indices = activeRelationships(payload, entity);
    if (indices.length === 0) return null;
    const rel = payload.relationships[indices[0]];
    return rel.source.cellId === entity.cellId ? rel.target.cellId : rel.source.cellId;
  }
  function tooltipFor(payload, entity) {
    const counterpart = counterpartCell(payload, entity);
    if (counterpart === null) return null;
    const cell = payload.cells.find((c) => c.id === counterpart);
    return cell === void 0 ? null : snippetOf(cell);
  }

  // src/render.ts
  var SVG_NS = "http://www.w3.org/2000/svg";
  function wrapPlainRange(rootEl, start2, end, make) {
    if (end <= start2) return [];
    const doc = rootEl.ownerDocument;
    const walker = doc.createTreeWalker(
      rootEl,
      4
      /* NodeFilter.SHOW_TEXT */
    );
    const textNodes = [];
    for (let n = walker.nextNode(); n !== null; n = walker.nextNode()) {
      textNodes.push(n);
    }
    const wrappers = [];
    let offset = 0;
    for (const node of textNodes) {
      const nodeStart = offset;
      const nodeEnd = offset + node.data.length;
      offset = nodeEnd;
      const from = Math.max(start2, nodeStart);
      const to = Math.min(end, nodeEnd);
      if (from >= to) continue;
      let target = node;
      if (from > nodeStart) target = target.splitText(from - nodeStart);
      if (to - from < target.data.length) target.splitText(to - from);
      const wrapper = make();
      target.parentNode.insertBefore(wrapper, target);
      wrapper.appendChild(target);
      wrappers.push(wrapper);
    }
    return wrappers;
  }
  function spanRange(cell, start2, length) {
    if (cell.kind === "code") {
      return [start2, start2 + length];
    }
    const entry = (cell.spanMap ?? []).find(
      (m) => m.start === start2 && m.length === length
    );
    return entry === void 0 ? [0, 0] : [entry.renderedStart, entry.renderedEnd];
  }
  function buildOutputs(doc, cell, body) {
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
  function buildSketchLayer(doc, body, sketches, refs) {
    if (sketches.length === 0) return;
    const [vw, vh] = sketches[0].viewSize;
    const layer = doc.createElementNS(SVG_NS, "svg");
    layer.setAttribute("class", "il-sketch-layer");
    layer.setAttribute("viewBox", `0 0 ${vw} ${vh}`);
    layer.setAttribute("preserveAspectRatio", "none");
    for (const cue of sketches) {
      let shape;
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
      const ref = { kind: "sketch", cellId, relIndices: cue.relIndices };
      shape.addEventListener("mouseenter", () => refs.handlers.onHover(ref));
      shape.addEventListener("mouseleave", () => refs.handlers.onHover(null));
      layer.appendChild(shape);
      refs.cueRefs.push({
        el: shape,
        granularity: "segment",
        contentType: "output",
        relIndices: cue.relIndices
      });
    }
    body.appendChild(layer);
  }
  function build(root, payload, handlers) {
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
    const refs = {
      root,
      canvas,
      svg,
      toggleButton,
      tooltip,
      cellEls: /* @__PURE__ */ new Map(),
      bodyEls: /* @__PURE__ */ new Map(),
      pinButtons: /* @__PURE__ */ new Map(),
      cueRefs: [],
      handlers
    };
    toggleButton.addEventListener("click", () => handlers.onToggleLayout());
    const cues = new Map(payload.layout.cueAnnotations.map((c) => [c.cellId, c]));
    const cellsById = new Map(payload.cells.map((c) => [c.id, c]));
    for (const cellId of payload.linearOrder) {
      const cell = cellsById.get(cellId);
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
      el.addEventListener(
        "mouseenter",
        () => handlers.onHover({ kind: "cell", cellId: cell.id })
      );
      el.addEventListener("mouseleave", () => handlers.onHover(null));
      el.addEventListener("click", (ev) => {
        if (ev.shiftKey) handlers.onShiftClick(cell.id);
      });
      const cue = cues.get(cell.id);
      if (cue !== void 0) {
        if (cue.wholeCell !== null) {
          refs.cueRefs.push({
            el: body,
            granularity: "cell",
            contentType: cell.kind,
            relIndices: cue.wholeCell.relIndices
          });
        }
        for (const span of cue.spans) {
          const [from, to] = spanRange(cell, span.start, span.length);
          const wrappers = wrapPlainRange(body, from, to, () => {
            const w = doc.createElement("span");
            const ref = { kind: "span", cellId: cell.id, relIndices: span.relIndices };
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
              spanColor: span.colorClass
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
  function drawLinks(refs, payload, links, activeRels) {
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
      path.addEventListener(
        "mouseenter",
        () => refs.handlers.onHover({ kind: "link", pair: link.pair })
      );
      path.addEventListener("mouseleave", () => refs.handlers.onHover(null));
      refs.svg.appendChild(path);
    }
  }
  function applyState(refs, payload, state, opts) {
    const layout = effectiveLayout(payload, state);
    const slots = pinSlots(payload, state, opts.viewportHeight);
    const activeRels = activeRelationships(payload, state.hoveredEntity);
    const litCells = activeCells(payload, state.hoveredEntity);
    refs.root.classList.toggle("il-mode-linear", layout.mode === "linear");
    refs.root.classList.toggle("il-mode-side", layout.mode === "sideBySide");
    refs.toggleButton.textContent = layout.mode === "sideBySide" ? "view: side-by-side" : "view: linear";
    refs.canvas.style.width = `${layout.totalWidth}px`;
    refs.canvas.style.height = `${layout.totalHeight}px`;
    refs.svg.setAttribute("width", String(layout.totalWidth));
    refs.svg.setAttribute("height", String(layout.totalHeight));
    const canvasLeft = refs.canvas.getBoundingClientRect().left;
    for (const box of layout.cells) {
      const el = refs.cellEls.get(box.cellId);
      if (!box.visible) {
        el.style.display = "none";
        continue;
      }
      el.style.display = "";
      const slot = slots.get(box.cellId);
      if (slot !== void 0) {
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
      const pin = refs.pinButtons.get(box.cellId);
      pin.textContent = slot !== void 0 ? "unpin" : "pin";
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
    if (tip === null || opts.pointer === void 0) {
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

  // src/main.ts
  function start() {
    const root = document.getElementById("interlink-root");
    if (root === null) {
      throw new Error("no #interlink-root element in the page");
    }
    const payload = readPayload(document);
    let state = initialState(payload);
    let savedScrollY = null;
    const pointer = { x: 0, y: 0 };
    let refs;
    const apply = () => {
      applyState(refs, payload, state, {
        viewportHeight: window.innerHeight,
        pointer
      });
    };
    const dispatch = (next) => {
      state = next;
      apply();
    };
    const exitFocus = () => {
      if (state.focusCell === null) return;
      dispatch(setFocus(state, state.focusCell, false));
      if (savedScrollY !== null) {
        window.scrollTo(0, savedScrollY);
        savedScrollY = null;
      }
    };
    refs = build(root, payload, {
      onToggleLayout: () => dispatch(toggleLayout(state)),
      onHover: (ref) => {
        dispatch(hover(state, ref));
        if (ref !== null && (ref.kind === "span" || ref.kind === "sketch")) {
          const related = counterpartCell(payload, ref);
          const el = related === null ? void 0 : refs.cellEls.get(related);
          if (el !== void 0 && typeof el.scrollIntoView === "function") {
            el.scrollIntoView({ block: "nearest" });
          }
        }
      },
      onShiftClick: (cellId) => {
        if (state.focusCell === cellId) {
          exitFocus();
        } else {
          if (state.focusCell === null) savedScrollY = window.scrollY;
          dispatch(setFocus(state, cellId, true));
        }
      },
      onTogglePin: (cellId) => dispatch(togglePin(state, cellId))
    });
    window.addEventListener("keydown", (ev) => {
      if (ev.key === "Escape") exitFocus();
    });
    window.addEventListener("resize", apply);
    window.addEventListener("mousemove", (ev) => {
      pointer.x = ev.clientX;
      pointer.y = ev.clientY;
      const hovered = state.hoveredEntity;
      if (hovered !== null && (hovered.kind === "span" || hovered.kind === "sketch")) {
        apply();
      }
    });
    apply();
  }
  if (document.readyState === "loading") {
    document.addEventListener("DOMContentLoaded", start);
  } else {
    start();
  }
})();
