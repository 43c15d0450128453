"""Relationship files: parsing, classification, aggregation, validation.

A relationship links two content anchors. An anchor names a cell, and
optionally narrows to a segment: a character span for text and code, a
sketched region (bounding box or SVG path, in viewSize coordinates) for
outputs. The renderer draws only the eight text-code / text-output
classes; everything else is classified, counted, and warned about.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .notebook import NotebookDoc

CELL_TYPES = ("text", "code", "output")
GRANULARITIES = ("cell", "segment")
_CELL_ID_RE = re.compile(r"^[mco][1-9][0-9]*$")
_KIND_RANK = {"m": 0, "c": 1, "o": 2}


class RelationshipParseError(Exception):
    """Malformed relationship file. path points at the offending value."""

    def __init__(self, message: str, *, path: str = "", offset: int | None = None):
        location = f"{path}: " if path else ""
        super().__init__(f"{location}{message}")
        self.message = message
        self.path = path
        self.offset = offset


@dataclass(frozen=True)
class Sketch:
    variant: str  # bbox | path
    bbox: tuple[float, float, float, float, float] | None = None
    pathData: str | None = None


@dataclass(frozen=True)
class ContentAnchor:
    cellId: str
    cellType: str
    granularityType: str
    spanPos: tuple[int, int] | None = None  # (start, length)
    sketch: Sketch | None = None
    viewSize: tuple[float, float] | None = None


@dataclass(frozen=True)
class Relationship:
    source: ContentAnchor
    target: ContentAnchor


@dataclass(frozen=True)
class AggregatedRelationship:
    cellPair: tuple[str, str]

    @classmethod
    def of(cls, a: str, b: str) -> "AggregatedRelationship":
        return cls(cellPair=tuple(sorted((a, b), key=cell_id_key)))


@dataclass(frozen=True)
class RelationshipSet:
    relationships: tuple[Relationship, ...]
    notebookRef: str | None = None


@dataclass(frozen=True)
class TaxonomyClass:
    categoryPair: str
    granularityCombo: str
    inScope: bool

    @property
    def label(self) -> str:
        return f"{self.categoryPair}/{self.granularityCombo}"


@dataclass(frozen=True)
class Diagnostic:
    code: str  # D1..D6
    severity: str  # error | warning
    relationshipIndex: int
    side: str | None  # source | target | None (whole relationship)
    message: str


def cell_id_key(cell_id: str) -> tuple[int, int]:
    """Canonical ordering key: text before code before output, then index."""
    return (_KIND_RANK[cell_id[0]], int(cell_id[1:]))


# ---------------------------------------------------------------------------
# Parsing (strict: unknown fields are errors, optional fields may be null)
# ---------------------------------------------------------------------------

_ANCHOR_KEYS = {"cellId", "cellType", "granularityType", "spanPos", "sketch", "viewSize"}
_REQUIRED_ANCHOR_KEYS = {"cellId", "cellType", "granularityType"}


def _fail(message: str, path: str) -> RelationshipParseError:
    return RelationshipParseError(message, path=path)


def _require_keys(obj: dict, required: set, allowed: set, path: str) -> None:
    missing = sorted(required - set(obj))
    if missing:
        raise _fail(f"missing required field(s): {', '.join(missing)}", path)
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise _fail(f"unknown field(s): {', '.join(unknown)}", path)


def _parse_number(value, path: str, *, positive: bool = False) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(f"expected a number, got {value!r}", path)
    if positive and value <= 0:
        raise _fail(f"expected a positive number, got {value!r}", path)
    return value


def _parse_span(value, path: str) -> tuple[int, int]:
    if not isinstance(value, dict):
        raise _fail("spanPos must be an object {start, length}", path)
    _require_keys(value, {"start", "length"}, {"start", "length"}, path)
    start, length = value["start"], value["length"]
    if isinstance(start, bool) or not isinstance(start, int) or start < 0:
        raise _fail(f"start must be an integer >= 0, got {start!r}", f"{path}.start")
    if isinstance(length, bool) or not isinstance(length, int) or length < 1:
        raise _fail(f"length must be an integer >= 1, got {length!r}", f"{path}.length")
    return (start, length)


def _parse_sketch(value, path: str) -> Sketch:
    if not isinstance(value, dict):
        raise _fail("sketch must be an object with bbox or path", path)
    keys = set(value)
    if keys == {"bbox"}:
        bbox = value["bbox"]
        if not isinstance(bbox, list) or len(bbox) != 5:
            raise _fail("bbox must be [x, y, width, height, angle]", f"{path}.bbox")
        x, y, w, h, angle = (
            _parse_number(item, f"{path}.bbox[{i}]") for i, item in enumerate(bbox)
        )
        if w <= 0 or h <= 0:
            raise _fail("bbox width and height must be positive", f"{path}.bbox")
        return Sketch(variant="bbox", bbox=(x, y, w, h, angle))
    if keys == {"path"}:
        path_data = value["path"]
        if not isinstance(path_data, str) or not path_data.strip():
            raise _fail("path must be a non-empty SVG path string", f"{path}.path")
        return Sketch(variant="path", pathData=path_data)
    raise _fail("sketch must have exactly one of: bbox, path", path)


def _parse_view_size(value, path: str) -> tuple[float, float]:
    if not isinstance(value, list) or len(value) != 2:
        raise _fail("viewSize must be [width, height]", path)
    w = _parse_number(value[0], f"{path}[0]", positive=True)
    h = _parse_number(value[1], f"{path}[1]", positive=True)
    return (w, h)


def _parse_anchor(value, path: str) -> ContentAnchor:
    if not isinstance(value, dict):
        raise _fail("anchor must be an object", path)
    _require_keys(value, _REQUIRED_ANCHOR_KEYS, _ANCHOR_KEYS, path)

    cell_id = value["cellId"]
    if not isinstance(cell_id, str) or not _CELL_ID_RE.match(cell_id):
        raise _fail(f"cellId must match m<N>/c<N>/o<N>, got {cell_id!r}", f"{path}.cellId")
    cell_type = value["cellType"]
    if cell_type not in CELL_TYPES:
        raise _fail(f"cellType must be one of {CELL_TYPES}, got {cell_type!r}", f"{path}.cellType")
    # cellType may disagree with the ID prefix; that is a validate-time
    # diagnostic (D2) against the actual notebook, not a syntax error.
    granularity = value["granularityType"]
    if granularity not in GRANULARITIES:
        raise _fail(
            f"granularityType must be one of {GRANULARITIES}, got {granularity!r}",
            f"{path}.granularityType",
        )

    span = value.get("spanPos")
    sketch = value.get("sketch")
    view_size = value.get("viewSize")

    if granularity == "cell":
        if span is not None:
            raise _fail("spanPos is not allowed on a cell-granularity anchor", f"{path}.spanPos")
        if sketch is not None:
            raise _fail("sketch is not allowed on a cell-granularity anchor", f"{path}.sketch")
        if view_size is not None:
            raise _fail("viewSize is only allowed on output segments", f"{path}.viewSize")
        return ContentAnchor(cellId=cell_id, cellType=cell_type, granularityType=granularity)

    if cell_type in ("text", "code"):
        if span is None:
            raise _fail(f"a {cell_type} segment requires spanPos", f"{path}.spanPos")
        if sketch is not None:
            raise _fail(f"sketch is not allowed on a {cell_type} segment", f"{path}.sketch")
        if view_size is not None:
            raise _fail("viewSize is only allowed on output segments", f"{path}.viewSize")
        return ContentAnchor(
            cellId=cell_id,
            cellType=cell_type,
            granularityType=granularity,
            spanPos=_parse_span(span, f"{path}.spanPos"),
        )

    # output segment
    if sketch is None:
        raise _fail("an output segment requires a sketch", f"{path}.sketch")
    if view_size is None:
        raise _fail("an output segment requires viewSize", f"{path}.viewSize")
    if span is not None:
        raise _fail("spanPos is not allowed on an output segment", f"{path}.spanPos")
    return ContentAnchor(
        cellId=cell_id,
        cellType=cell_type,
        granularityType=granularity,
        sketch=_parse_sketch(sketch, f"{path}.sketch"),
        viewSize=_parse_view_size(view_size, f"{path}.viewSize"),
    )


def parse_relationships(path: str | Path) -> RelationshipSet:
    """Parse a relationship file: a JSON array of {source, target} objects."""
    file_path = Path(path)
    raw = file_path.read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise RelationshipParseError(
            f"{file_path}: invalid JSON: {exc.msg}", offset=exc.pos
        ) from exc
    if not isinstance(data, list):
        raise _fail("relationship file must be a JSON array", "$")

    relationships = []
    for index, item in enumerate(data):
        item_path = f"[{index}]"
        if not isinstance(item, dict):
            raise _fail("relationship must be an object", item_path)
        _require_keys(item, {"source", "target"}, {"source", "target"}, item_path)
        source = _parse_anchor(item["source"], f"{item_path}.source")
        target = _parse_anchor(item["target"], f"{item_path}.target")
        if (
            source.granularityType == "cell"
            and target.granularityType == "cell"
            and source.cellId == target.cellId
        ):
            raise _fail(
                f"a cell may not relate to itself at cell granularity ({source.cellId})",
                item_path,
            )
        relationships.append(Relationship(source=source, target=target))
    return RelationshipSet(relationships=tuple(relationships))


def _anchor_as_dict(anchor: ContentAnchor) -> dict:
    sketch = None
    if anchor.sketch is not None:
        if anchor.sketch.variant == "bbox":
            sketch = {"bbox": list(anchor.sketch.bbox)}
        else:
            sketch = {"path": anchor.sketch.pathData}
    return {
        "cellId": anchor.cellId,
        "cellType": anchor.cellType,
        "granularityType": anchor.granularityType,
        "spanPos": (
            None
            if anchor.spanPos is None
            else {"start": anchor.spanPos[0], "length": anchor.spanPos[1]}
        ),
        "sketch": sketch,
        "viewSize": None if anchor.viewSize is None else list(anchor.viewSize),
    }


def relationships_as_dicts(rels: RelationshipSet) -> list[dict]:
    return [
        {"source": _anchor_as_dict(r.source), "target": _anchor_as_dict(r.target)}
        for r in rels.relationships
    ]


def serialize_relationships(rels: RelationshipSet) -> str:
    """Inverse of parse_relationships; optional fields written as explicit nulls."""
    return json.dumps(relationships_as_dicts(rels), ensure_ascii=False, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Taxonomy
# ---------------------------------------------------------------------------

_CATEGORY_ORDER = {"text": 0, "code": 1, "output": 2}
INTER_COMBOS = ("cell-cell", "cell-segment", "segment-cell", "segment-segment-crossCell")
INTRA_COMBOS = (
    "cell-cell",
    "cell-segment-sameCell",
    "cell-segment-crossCell",
    "segment-segment-sameCell",
    "segment-segment-crossCell",
)
IN_SCOPE_PAIRS = ("text-code", "text-output")


def _category_pair(a: str, b: str) -> str:
    first, second = sorted((a, b), key=_CATEGORY_ORDER.__getitem__)
    return f"{first}-{second}"


def classify(r: Relationship) -> TaxonomyClass:
    """Assign one of the 27 relationship classes."""
    src, tgt = r.source, r.target
    pair = _category_pair(src.cellType, tgt.cellType)
    same_cell = src.cellId == tgt.cellId
    grans = (src.granularityType, tgt.granularityType)

    if src.cellType == tgt.cellType:
        # Intra-category combos are direction-free; cell is listed first.
        if grans == ("cell", "cell"):
            combo = "cell-cell"
        elif "cell" in grans:
            combo = f"cell-segment-{'sameCell' if same_cell else 'crossCell'}"
        else:
            combo = f"segment-segment-{'sameCell' if same_cell else 'crossCell'}"
        return TaxonomyClass(categoryPair=pair, granularityCombo=combo, inScope=False)

    # Inter-category: source->target orientation is meaningful, and the two
    # cells are necessarily distinct, so segment-segment is always crossCell.
    if grans == ("segment", "segment"):
        combo = "segment-segment-crossCell"
    else:
        combo = f"{grans[0]}-{grans[1]}"
    return TaxonomyClass(
        categoryPair=pair, granularityCombo=combo, inScope=pair in IN_SCOPE_PAIRS
    )


def all_taxonomy_classes() -> tuple[TaxonomyClass, ...]:
    """The full 27-class space: 12 inter-category + 15 intra-category."""
    classes = []
    inter_pairs = ("text-code", "text-output", "code-output")
    for pair in inter_pairs:
        for combo in INTER_COMBOS:
            classes.append(
                TaxonomyClass(
                    categoryPair=pair,
                    granularityCombo=combo,
                    inScope=pair in IN_SCOPE_PAIRS,
                )
            )
    intra_pairs = ("text-text", "code-code", "output-output")
    for pair in intra_pairs:
        for combo in INTRA_COMBOS:
            classes.append(TaxonomyClass(categoryPair=pair, granularityCombo=combo, inScope=False))
    return tuple(classes)


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------


def aggregate(rels: RelationshipSet) -> list[AggregatedRelationship]:
    """Deduplicated cell-ID pairs of all relationships, canonically sorted.

    Same-cell relationships aggregate to nothing: there is no pair of
    distinct cells to connect.
    """
    seen = set()
    pairs = []
    for r in rels.relationships:
        a, b = r.source.cellId, r.target.cellId
        if a == b:
            continue
        pair = AggregatedRelationship.of(a, b)
        if pair.cellPair not in seen:
            seen.add(pair.cellPair)
            pairs.append(pair)
    pairs.sort(key=lambda p: (cell_id_key(p.cellPair[0]), cell_id_key(p.cellPair[1])))
    return pairs


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate(rels: RelationshipSet, nb: NotebookDoc) -> list[Diagnostic]:
    """Cross-check a relationship set against a notebook.

    D1 dangling cellId, D2 cellType mismatch, D3 span out of bounds,
    D4 bbox outside viewSize (errors); D5 class not in scope, D6 duplicate
    relationship (warnings). Problems are data, not exceptions.
    """
    diagnostics: list[Diagnostic] = []
    cells = nb.id_map()
    seen_relationships: dict[Relationship, int] = {}

    for index, r in enumerate(rels.relationships):
        for side_name, anchor in (("source", r.source), ("target", r.target)):
            cell = cells.get(anchor.cellId)
            if cell is None:
                diagnostics.append(
                    Diagnostic(
                        code="D1",
                        severity="error",
                        relationshipIndex=index,
                        side=side_name,
                        message=f"cellId {anchor.cellId!r} does not exist in the notebook",
                    )
                )
                continue
            if cell.kind != anchor.cellType:
                diagnostics.append(
                    Diagnostic(
                        code="D2",
                        severity="error",
                        relationshipIndex=index,
                        side=side_name,
                        message=(
                            f"anchor declares cellType {anchor.cellType!r} but "
                            f"{anchor.cellId} is a {cell.kind} cell"
                        ),
                    )
                )
            if anchor.spanPos is not None:
                start, length = anchor.spanPos
                if start + length > len(cell.source):
                    diagnostics.append(
                        Diagnostic(
                            code="D3",
                            severity="error",
                            relationshipIndex=index,
                            side=side_name,
                            message=(
                                f"span {start}+{length} exceeds the {len(cell.source)}-char "
                                f"source of {anchor.cellId}"
                            ),
                        )
                    )
            if (
                anchor.sketch is not None
                and anchor.sketch.variant == "bbox"
                and anchor.viewSize is not None
            ):
                x, y, w, h, _angle = anchor.sketch.bbox
                vw, vh = anchor.viewSize
                if x < 0 or y < 0 or x + w > vw or y + h > vh:
                    diagnostics.append(
                        Diagnostic(
                            code="D4",
                            severity="error",
                            relationshipIndex=index,
                            side=side_name,
                            message=(
                                f"bbox footprint ({x}, {y}, {w}, {h}) exceeds "
                                f"viewSize {vw}x{vh}"
                            ),
                        )
                    )
        if not classify(r).inScope:
            diagnostics.append(
                Diagnostic(
                    code="D5",
                    severity="warning",
                    relationshipIndex=index,
                    side=None,
                    message=f"class {classify(r).label} is not rendered (counted only)",
                )
            )
        earlier = seen_relationships.get(r)
        if earlier is not None:
            diagnostics.append(
                Diagnostic(
                    code="D6",
                    severity="warning",
                    relationshipIndex=index,
                    side=None,
                    message=f"duplicate of relationship {earlier} (identical anchors)",
                )
            )
        else:
            seen_relationships[r] = index
    return diagnostics


# ---------------------------------------------------------------------------
# Stats
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Stats:
    distribution: tuple[tuple[TaxonomyClass, int], ...]
    totalRelationships: int
    totalAggregated: int

    def as_dict(self) -> dict:
        return {
            "distribution": {cls.label: count for cls, count in self.distribution},
            "totalRelationships": self.totalRelationships,
            "totalAggregated": self.totalAggregated,
        }


def stats(rels: RelationshipSet) -> Stats:
    """Taxonomy distribution plus |R| and |R'|. Counts partition |R|."""
    counts = Counter(classify(r) for r in rels.relationships)
    ordered = sorted(
        counts.items(), key=lambda item: (item[0].categoryPair, item[0].granularityCombo)
    )
    return Stats(
        distribution=tuple(ordered),
        totalRelationships=len(rels.relationships),
        totalAggregated=len(aggregate(rels)),
    )
