/**
 * Entry point: read the embedded payload, build the page, and run the
 * dispatch loop. All state decisions live in state.ts; this file only
 * wires browser events to transitions and performs the two documented
 * side effects (auto-scroll on cue hover, scroll restore on focus exit).
 */

import { readPayload } from "./payload";
import { applyState, build, type Refs } from "./render";
import {
  counterpartCell,
  hover,
  initialState,
  setFocus,
  toggleLayout,
  togglePin,
  type HoverRef,
  type ViewState,
} from "./state";

function start(): void {
  const root = document.getElementById("interlink-root");
  if (root === null) {
    throw new Error("no #interlink-root element in the page");
  }
  const payload = readPayload(document);

  let state: ViewState = initialState(payload);
  let savedScrollY: number | null = null;
  const pointer = { x: 0, y: 0 };
  let refs: Refs;

  const apply = (): void => {
    applyState(refs, payload, state, {
      viewportHeight: window.innerHeight,
      pointer,
    });
  };
  const dispatch = (next: ViewState): void => {
    state = next;
    apply();
  };

  const exitFocus = (): void => {
    if (state.focusCell === null) return;
    dispatch(setFocus(state, state.focusCell, false));
    if (savedScrollY !== null) {
      window.scrollTo(0, savedScrollY);
      savedScrollY = null;
    }
  };

  refs = build(root, payload, {
    onToggleLayout: () => dispatch(toggleLayout(state)),
    onHover: (ref: HoverRef | null) => {
      dispatch(hover(state, ref));
      if (ref !== null && (ref.kind === "span" || ref.kind === "sketch")) {
        const related = counterpartCell(payload, ref);
        const el = related === null ? undefined : refs.cellEls.get(related);
        if (el !== undefined && typeof el.scrollIntoView === "function") {
          el.scrollIntoView({ block: "nearest" });
        }
      }
    },
    onShiftClick: (cellId: string) => {
      if (state.focusCell === cellId) {
        exitFocus();
      } else {
        if (state.focusCell === null) savedScrollY = window.scrollY;
        dispatch(setFocus(state, cellId, true));
      }
    },
    onTogglePin: (cellId: string) => dispatch(togglePin(state, cellId)),
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
      apply(); // tooltip follows the pointer
    }
  });

  apply();
}

if (document.readyState === "loading") {
  document.addEventListener("DOMContentLoaded", start);
} else {
  start();
}
