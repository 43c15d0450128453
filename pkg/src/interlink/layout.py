"""Two-column placement engine.

Text cells go in the left column, code and output cells in the right
column, both keeping notebook order (that ordering outranks every other
concern). A single forward sweep walks the cells with one cursor per
column and a queue of walked-but-unplaced text cells:

* A text cell waiting on a later right cell (its anchor: the earliest
  related right cell), or walked while the queue is non-empty, joins the
  queue; placing it early would invert the narrative order.
* When a right cell is walked, queue heads are settled front to back:
  a head anchored here is placed top-aligned at max(leftCursor,
  rightCursor) (later heads sharing the anchor stack below at the left
  cursor); a head whose anchor was already placed snaps down to
  max(leftCursor, anchorTop); an unrelated head is placed at the left
  cursor, except that the one unrelated text directly preceding this
  right cell may still claim the alignment below. A head still waiting
  for a later right cell stops the settling, keeping everything behind
  it queued. If the right cursor must advance to meet an aligned text,
  the gap becomes an explicit spacer.
* Every related text cell therefore sits at exactly
  max(leftCursor, anchorTop): aligned when the column permits, directly
  below its predecessor otherwise.
* An unrelated, unqueued text cell immediately followed by a right cell
  that anchors nothing is top-aligned with that cell and capped to its
  height; otherwise it sits at the left cursor capped to
  defaultTextHeight. A queued unrelated text keeps the alignment only
  when the queue clears exactly at its target's walk.

Text heights never exceed the content height; related text is capped by
the summed height of its related right cells (plus the gaps between
those that are adjacent in the right column). Right cells always keep
their measured heights.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .config import LayoutConfig
from .notebook import NotebookDoc
from .relationships import (
    AggregatedRelationship,
    RelationshipSet,
    Sketch,
)


class LayoutError(Exception):
    """Internal contradiction; indicates a bug or violated precondition."""


@dataclass(frozen=True)
class PlacedCell:
    cellId: str
    column: str  # left | right
    y: float
    height: float
    contentHeight: float
    scrollable: bool


@dataclass(frozen=True)
class Spacer:
    column: str
    y: float
    height: float


@dataclass(frozen=True)
class LinkGeometry:
    pair: AggregatedRelationship
    fromPoint: tuple[float, float]
    toPoint: tuple[float, float]
    curve: tuple[tuple[float, float], tuple[float, float]]


@dataclass(frozen=True)
class SpanCue:
    start: int
    length: int
    colorClass: str
    relIndices: tuple[int, ...]


@dataclass(frozen=True)
class SketchCue:
    sketch: Sketch
    viewSize: tuple[float, float]
    relIndices: tuple[int, ...]


@dataclass(frozen=True)
class CellCues:
    cellId: str
    wholeCellRelIndices: tuple[int, ...] | None
    spans: tuple[SpanCue, ...]
    sketches: tuple[SketchCue, ...]


@dataclass(frozen=True)
class LayoutDocument:
    placedCells: tuple[PlacedCell, ...]
    spacers: tuple[Spacer, ...]
    links: tuple[LinkGeometry, ...]
    cueAnnotations: tuple[CellCues, ...]
    aggregatedPairs: tuple[AggregatedRelationship, ...]
    config: LayoutConfig
    totalHeight: float

    def cell(self, cell_id: str) -> PlacedCell:
        for placed in self.placedCells:
            if placed.cellId == cell_id:
                return placed
        raise KeyError(cell_id)


def _pair_sides(pair: AggregatedRelationship, kinds: dict[str, str]) -> tuple[str, str]:
    """Split a pair into (text id, right id); anything else is a caller bug."""
    a, b = pair.cellPair
    kind_a, kind_b = kinds.get(a), kinds.get(b)
    if kind_a is None or kind_b is None:
        raise LayoutError(f"pair {pair.cellPair} references a cell not in the notebook")
    if kind_a == "text" and kind_b in ("code", "output"):
        return a, b
    if kind_b == "text" and kind_a in ("code", "output"):
        return b, a
    raise LayoutError(
        f"pair {pair.cellPair} is not a text-to-code/output pair; "
        "out-of-scope relationships must be filtered before layout"
    )


def compute_layout(
    nb: NotebookDoc,
    r_prime: list[AggregatedRelationship] | tuple[AggregatedRelationship, ...],
    heights: dict[str, float],
    cfg: LayoutConfig,
) -> LayoutDocument:
    """Place every cell once. Links and cues are attached by the caller."""
    cells = nb.cells
    kinds = {cell.id: cell.kind for cell in cells}
    for cell in cells:
        if cell.id not in heights:
            raise LayoutError(f"heights missing entry for {cell.id}")

    right_cells = [cell for cell in cells if cell.kind != "text"]
    right_index = {cell.id: i for i, cell in enumerate(right_cells)}
    ordinal_of = {cell.id: cell.ordinal for cell in cells}

    # Relation maps at cell granularity.
    related_rights: dict[str, list[str]] = {}
    for pair in r_prime:
        text_id, right_id = _pair_sides(pair, kinds)
        related_rights.setdefault(text_id, []).append(right_id)
    for text_id, rights in related_rights.items():
        rights.sort(key=lambda rid: ordinal_of[rid])
    anchor_of = {text_id: rights[0] for text_id, rights in related_rights.items()}
    anchored: dict[str, list[str]] = {}
    for text_id, right_id in anchor_of.items():
        anchored.setdefault(right_id, []).append(text_id)
    for right_id in anchored:
        anchored[right_id].sort(key=lambda tid: ordinal_of[tid])

    def related_cap(text_id: str) -> float:
        rights = related_rights[text_id]
        cap = sum(heights[rid] for rid in rights)
        for a, b in zip(rights, rights[1:]):
            if right_index[b] == right_index[a] + 1:
                cap += cfg.cellGap
        return cap

    # Unrelated text directly followed by a right cell that anchors nothing
    # aligns with it; computed statically so tests can mirror the rule.
    clause1_target: dict[str, str] = {}
    for i, cell in enumerate(cells):
        if cell.kind != "text" or cell.id in anchor_of:
            continue
        if i + 1 < len(cells) and cells[i + 1].kind != "text":
            nxt = cells[i + 1]
            if nxt.id not in anchored:
                clause1_target[cell.id] = nxt.id

    y_left = 0.0
    y_right = 0.0
    placed: dict[str, tuple[float, float]] = {}
    spacers: list[Spacer] = []
    pending_align: dict[str, float] = {}
    queue: list[str] = []  # walked but unplaced texts, in notebook order

    def place_left(cell_id: str, y: float, height: float) -> None:
        nonlocal y_left
        placed[cell_id] = (y, height)
        y_left = y + height + cfg.cellGap

    def advance_right_to(target: float) -> None:
        nonlocal y_right
        if target > y_right:
            spacers.append(Spacer(column="right", y=y_right, height=target - y_right))
            y_right = target

    def related_height(cell_id: str) -> float:
        return min(heights[cell_id], related_cap(cell_id))

    def unrelated_height(cell_id: str, aligned: bool) -> float:
        content = heights[cell_id]
        if aligned:
            return min(content, heights[clause1_target[cell_id]])
        return min(content, cfg.defaultTextHeight)

    for cell in cells:
        if cell.kind == "text":
            anchor = anchor_of.get(cell.id)
            if queue or (anchor is not None and anchor not in placed):
                queue.append(cell.id)
                continue
            if anchor is not None:
                # Anchor already above: snap down toward it.
                place_left(cell.id, max(y_left, placed[anchor][0]), related_height(cell.id))
            elif cell.id in clause1_target:
                y = max(y_left, y_right)
                pending_align[clause1_target[cell.id]] = y
                place_left(cell.id, y, unrelated_height(cell.id, aligned=True))
            else:
                place_left(cell.id, y_left, unrelated_height(cell.id, aligned=False))
            continue

        # Right cell: settle queue heads that stop waiting here, then place it.
        align_y = pending_align.pop(cell.id, None)
        while queue:
            head = queue[0]
            head_anchor = anchor_of.get(head)
            if head_anchor == cell.id:
                if align_y is None:
                    y = max(y_left, y_right)
                    align_y = y
                else:
                    y = y_left
                place_left(head, y, related_height(head))
            elif head_anchor is not None:
                if head_anchor not in placed:
                    break  # still waiting for a later right cell
                place_left(head, max(y_left, placed[head_anchor][0]), related_height(head))
            elif clause1_target.get(head) == cell.id and align_y is None:
                y = max(y_left, y_right)
                align_y = y
                place_left(head, y, unrelated_height(head, aligned=True))
            else:
                place_left(head, y_left, unrelated_height(head, aligned=False))
            queue.pop(0)
        if align_y is not None:
            advance_right_to(align_y)
        placed[cell.id] = (y_right, heights[cell.id])
        y_right += heights[cell.id] + cfg.cellGap

    # Whatever remains has no right cell left to wait for.
    for tid in queue:
        anchor = anchor_of.get(tid)
        if anchor is not None:
            place_left(tid, max(y_left, placed[anchor][0]), related_height(tid))
        else:
            place_left(tid, y_left, unrelated_height(tid, aligned=False))

    unplaced = [cell.id for cell in cells if cell.id not in placed]
    if unplaced:
        raise LayoutError(f"cells never placed: {unplaced}")

    placed_cells = []
    for cell in cells:
        y, height = placed[cell.id]
        content = heights[cell.id]
        placed_cells.append(
            PlacedCell(
                cellId=cell.id,
                column="left" if cell.kind == "text" else "right",
                y=y,
                height=height,
                contentHeight=content,
                scrollable=height < content,
            )
        )
    bottoms = [p.y + p.height for p in placed_cells] + [s.y + s.height for s in spacers]
    return LayoutDocument(
        placedCells=tuple(placed_cells),
        spacers=tuple(spacers),
        links=(),
        cueAnnotations=(),
        aggregatedPairs=tuple(r_prime),
        config=cfg,
        totalHeight=max(bottoms, default=0.0),
    )


def route_links(doc: LayoutDocument, cfg: LayoutConfig) -> tuple[LinkGeometry, ...]:
    """One cubic curve per aggregated pair, between edge midpoints."""
    by_id = {p.cellId: p for p in doc.placedCells}
    links = []
    for pair in doc.aggregatedPairs:
        a, b = pair.cellPair
        if a not in by_id or b not in by_id:
            raise LayoutError(f"pair {pair.cellPair} references an unplaced cell")
        left = by_id[a] if by_id[a].column == "left" else by_id[b]
        right = by_id[b] if by_id[b].column == "right" else by_id[a]
        if left.column != "left" or right.column != "right":
            raise LayoutError(f"pair {pair.cellPair} does not span the two columns")
        from_y = left.y + left.height / 2
        to_y = right.y + right.height / 2
        mid_x = cfg.leftColumnWidth + cfg.columnGap / 2
        links.append(
            LinkGeometry(
                pair=pair,
                fromPoint=(cfg.leftColumnWidth, from_y),
                toPoint=(cfg.leftColumnWidth + cfg.columnGap, to_y),
                curve=((mid_x, from_y), (mid_x, to_y)),
            )
        )
    links.sort(key=lambda l: (l.fromPoint[1], l.toPoint[1], l.pair.cellPair))
    return tuple(links)


_SPAN_COLOR = {
    frozenset(): "text-related",
    frozenset({"text"}): "text-related",
    frozenset({"code"}): "code-related",
    frozenset({"output"}): "output-related",
    frozenset({"code", "output"}): "both",
}


def annotate_cues(nb: NotebookDoc, rels: RelationshipSet) -> tuple[CellCues, ...]:
    """Visual-cue descriptors per cell, carrying relationship indices.

    Whole-cell anchors get a dashed border cue; text spans are colored by
    the categories on the far side (code, output, or both); code spans
    get their own class; output segments carry their sketch.
    """
    whole: dict[str, set[int]] = {}
    spans: dict[str, dict[tuple[int, int], dict]] = {}
    sketches: dict[str, dict] = {}

    for index, r in enumerate(rels.relationships):
        for anchor, other in ((r.source, r.target), (r.target, r.source)):
            if anchor.granularityType == "cell":
                whole.setdefault(anchor.cellId, set()).add(index)
            elif anchor.cellType in ("text", "code"):
                entry = spans.setdefault(anchor.cellId, {}).setdefault(
                    anchor.spanPos, {"indices": set(), "counterparts": set()}
                )
                entry["indices"].add(index)
                entry["counterparts"].add(other.cellType)
            else:
                key = (anchor.sketch, anchor.viewSize)
                entry = sketches.setdefault(anchor.cellId, {}).setdefault(key, set())
                entry.add(index)

    cues = []
    for cell in nb.cells:
        whole_indices = whole.get(cell.id)
        span_entries = spans.get(cell.id, {})
        sketch_entries = sketches.get(cell.id, {})
        if not whole_indices and not span_entries and not sketch_entries:
            continue
        span_cues = []
        for (start, length), entry in sorted(span_entries.items()):
            if cell.kind == "code":
                color = "code-segment"
            else:
                counterparts = frozenset(entry["counterparts"] & {"code", "output"})
                color = _SPAN_COLOR.get(counterparts, "text-related")
            span_cues.append(
                SpanCue(
                    start=start,
                    length=length,
                    colorClass=color,
                    relIndices=tuple(sorted(entry["indices"])),
                )
            )
        sketch_cues = [
            SketchCue(sketch=key[0], viewSize=key[1], relIndices=tuple(sorted(indices)))
            for key, indices in sorted(
                sketch_entries.items(), key=lambda item: min(item[1])
            )
        ]
        cues.append(
            CellCues(
                cellId=cell.id,
                wholeCellRelIndices=tuple(sorted(whole_indices)) if whole_indices else None,
                spans=tuple(span_cues),
                sketches=tuple(sketch_cues),
            )
        )
    return tuple(cues)


def with_links_and_cues(
    doc: LayoutDocument, nb: NotebookDoc, rels: RelationshipSet, cfg: LayoutConfig
) -> LayoutDocument:
    return replace(
        doc, links=route_links(doc, cfg), cueAnnotations=annotate_cues(nb, rels)
    )


# ---------------------------------------------------------------------------
# Serialization (fixed key order; see jsonutil for number normalization)
# ---------------------------------------------------------------------------


def _sketch_as_dict(sketch: Sketch) -> dict:
    if sketch.variant == "bbox":
        return {"bbox": list(sketch.bbox)}
    return {"path": sketch.pathData}


def serialize_layout(doc: LayoutDocument) -> dict:
    return {
        "config": doc.config.as_dict(),
        "totalHeight": doc.totalHeight,
        "placedCells": [
            {
                "cellId": p.cellId,
                "column": p.column,
                "y": p.y,
                "height": p.height,
                "contentHeight": p.contentHeight,
                "scrollable": p.scrollable,
            }
            for p in doc.placedCells
        ],
        "spacers": [
            {"column": s.column, "y": s.y, "height": s.height} for s in doc.spacers
        ],
        "aggregatedPairs": [list(pair.cellPair) for pair in doc.aggregatedPairs],
        "links": [
            {
                "pair": list(l.pair.cellPair),
                "fromPoint": list(l.fromPoint),
                "toPoint": list(l.toPoint),
                "curve": [list(point) for point in l.curve],
            }
            for l in doc.links
        ],
        "cueAnnotations": [
            {
                "cellId": c.cellId,
                "wholeCell": (
                    None
                    if c.wholeCellRelIndices is None
                    else {"relIndices": list(c.wholeCellRelIndices)}
                ),
                "spans": [
                    {
                        "start": s.start,
                        "length": s.length,
                        "colorClass": s.colorClass,
                        "relIndices": list(s.relIndices),
                    }
                    for s in c.spans
                ],
                "sketches": [
                    {
                        "sketch": _sketch_as_dict(s.sketch),
                        "viewSize": list(s.viewSize),
                        "relIndices": list(s.relIndices),
                    }
                    for s in c.sketches
                ],
            }
            for c in doc.cueAnnotations
        ],
    }
