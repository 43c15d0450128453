"""Side-by-side notebook layout with text-code-output relationship links."""

__version__ = "0.1.0"

from .config import ConfigError, LayoutConfig, load_config
from .notebook import (
    Cell,
    NotebookDoc,
    NotebookParseError,
    OutputPayload,
    measure_cell,
    parse_notebook,
    physical_line_count,
    wrapped_line_count,
)
from .relationships import (
    AggregatedRelationship,
    ContentAnchor,
    Diagnostic,
    Relationship,
    RelationshipParseError,
    RelationshipSet,
    Sketch,
    Stats,
    TaxonomyClass,
    aggregate,
    all_taxonomy_classes,
    cell_id_key,
    classify,
    parse_relationships,
    serialize_relationships,
    stats,
    validate,
)
from .layout import (
    CellCues,
    LayoutDocument,
    LayoutError,
    LinkGeometry,
    PlacedCell,
    SketchCue,
    Spacer,
    SpanCue,
    annotate_cues,
    compute_layout,
    route_links,
    serialize_layout,
    with_links_and_cues,
)
from .bundle import (
    DATA_ELEMENT_ID,
    MissingViewerAssets,
    build_data_payload,
    emit_html,
    emit_layout_json,
    extract_payload,
    render_markdown,
)
from .cli import run

__all__ = [
    "AggregatedRelationship",
    "Cell",
    "CellCues",
    "ConfigError",
    "ContentAnchor",
    "DATA_ELEMENT_ID",
    "Diagnostic",
    "LayoutConfig",
    "LayoutDocument",
    "LayoutError",
    "LinkGeometry",
    "MissingViewerAssets",
    "NotebookDoc",
    "NotebookParseError",
    "OutputPayload",
    "PlacedCell",
    "Relationship",
    "RelationshipParseError",
    "RelationshipSet",
    "Sketch",
    "SketchCue",
    "Spacer",
    "SpanCue",
    "Stats",
    "TaxonomyClass",
    "aggregate",
    "all_taxonomy_classes",
    "annotate_cues",
    "build_data_payload",
    "cell_id_key",
    "classify",
    "compute_layout",
    "emit_html",
    "emit_layout_json",
    "extract_payload",
    "load_config",
    "measure_cell",
    "parse_notebook",
    "parse_relationships",
    "physical_line_count",
    "render_markdown",
    "route_links",
    "run",
    "serialize_layout",
    "serialize_relationships",
    "stats",
    "validate",
    "with_links_and_cues",
    "wrapped_line_count",
]
