/**
 * Visual-cue styling as one data table.
 *
 * Every cue state maps to a fixed class list keyed by (granularity,
 * contentType, active). Span color tokens ride on top: a text span is
 * underlined blue when code-related, green when output-related, purple
 * when both; code-cell spans reuse the green underline. Active cells
 * and spans get a pink surface; active output sketches switch from a
 * dashed outline to a solid red one.
 */

import type { CellKind } from "./payload";

export type Granularity = "cell" | "segment";
export type SpanColor = "code-related" | "output-related" | "both" | "code-segment";
export type ColorToken = "blue" | "green" | "purple";

export const SPAN_COLOR_TOKENS: Record<SpanColor, ColorToken> = {
  "code-related": "blue",
  "output-related": "green",
  both: "purple",
  "code-segment": "green",
};

export interface CueStyleRow {
  granularity: Granularity;
  contentType: CellKind;
  active: boolean;
  classes: string;
}

export const CUE_STYLE_TABLE: readonly CueStyleRow[] = [
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
  { granularity: "segment", contentType: "output", active: true, classes: "il-sketch il-sketch-active" },
];

export function cueClasses(
  granularity: Granularity,
  contentType: CellKind,
  active: boolean,
  spanColor?: SpanColor,
): string {
  const row = CUE_STYLE_TABLE.find(
    (r) => r.granularity === granularity && r.contentType === contentType && r.active === active,
  );
  if (row === undefined) {
    throw new Error(`no cue style for ${granularity}/${contentType}`);
  }
  return spanColor === undefined ? row.classes : `${row.classes} il-span-${spanColor}`;
}
