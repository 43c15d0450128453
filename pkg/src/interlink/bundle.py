"""Bundle emission: layout JSON and the self-contained HTML viewer.

The HTML bundle carries everything the viewer needs inside one script
element (id "interlink-data"), so the page works from local disk with no
network access. Markdown is rendered here, at emit time; span offsets
into the raw markdown are mapped to offsets in the rendered plain text
so the viewer can locate segments inside the rendered HTML.
"""

from __future__ import annotations

import difflib
import html
import importlib.resources
from html.parser import HTMLParser
from pathlib import Path

from markdown_it import MarkdownIt

from . import jsonutil
from .layout import LayoutDocument, serialize_layout
from .notebook import Cell, NotebookDoc
from .relationships import RelationshipSet, classify, relationships_as_dicts

DATA_ELEMENT_ID = "interlink-data"


class MissingViewerAssets(Exception):
    """The compiled viewer is not available; the HTML bundle cannot be built."""


_md = MarkdownIt("commonmark")


def render_markdown(source: str) -> str:
    return _md.render(source)


class _TextExtractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []

    def handle_data(self, data: str) -> None:
        self.parts.append(data)


def _plain_text(rendered_html: str) -> str:
    extractor = _TextExtractor()
    extractor.feed(rendered_html)
    return "".join(extractor.parts)


def _offset_map(source: str, plain: str) -> list[int | None]:
    """For each source offset, the matching plain-text offset (or None)."""
    mapping: list[int | None] = [None] * (len(source) + 1)
    matcher = difflib.SequenceMatcher(None, source, plain, autojunk=False)
    for block in matcher.get_matching_blocks():
        for i in range(block.size):
            mapping[block.a + i] = block.b + i
    mapping[len(source)] = len(plain)
    return mapping


def map_span(mapping: list[int | None], start: int, length: int) -> tuple[int, int]:
    """Map a raw-source span to rendered-text offsets, snapping inward."""
    end = start + length
    mapped_start = None
    for i in range(min(start, len(mapping) - 1), len(mapping)):
        if mapping[i] is not None:
            mapped_start = mapping[i]
            break
    mapped_end = None
    for i in range(min(end, len(mapping) - 1), -1, -1):
        if mapping[i] is not None:
            mapped_end = mapping[i]
            break
    if mapped_start is None:
        mapped_start = 0
    if mapped_end is None or mapped_end < mapped_start:
        mapped_end = mapped_start
    return mapped_start, mapped_end


def _cell_payload(cell: Cell, span_cues: dict[str, list[tuple[int, int]]]) -> dict:
    entry: dict = {
        "id": cell.id,
        "kind": cell.kind,
        "ordinal": cell.ordinal,
        "source": cell.source,
    }
    if cell.kind == "text":
        rendered = render_markdown(cell.source)
        entry["html"] = rendered
        spans = span_cues.get(cell.id, [])
        if spans:
            mapping = _offset_map(cell.source, _plain_text(rendered))
            entry["spanMap"] = [
                {
                    "start": start,
                    "length": length,
                    "renderedStart": mapped[0],
                    "renderedEnd": mapped[1],
                }
                for start, length, mapped in (
                    (s, l, map_span(mapping, s, l)) for s, l in spans
                )
            ]
    elif cell.kind == "output":
        entry["outputs"] = [
            {
                "mime": p.mime,
                "textContent": p.textContent,
                "imageDims": None if p.imageDims is None else list(p.imageDims),
                "imageDataUri": p.imageDataUri,
            }
            for p in cell.outputPayloads
        ]
    return entry


def build_data_payload(
    doc: LayoutDocument,
    nb: NotebookDoc,
    rels: RelationshipSet,
    *,
    file_indices: list[int] | None = None,
) -> dict:
    """Everything the viewer consumes, as one JSON-ready dict.

    rels must be the render set (in-scope, deduplicated); file_indices
    optionally records each relationship's index in the original file.
    """
    span_cues: dict[str, list[tuple[int, int]]] = {}
    for cue in doc.cueAnnotations:
        if cue.spans:
            span_cues[cue.cellId] = [(s.start, s.length) for s in cue.spans]

    rel_dicts = relationships_as_dicts(rels)
    for i, (entry, r) in enumerate(zip(rel_dicts, rels.relationships)):
        cls = classify(r)
        entry["class"] = {
            "categoryPair": cls.categoryPair,
            "granularityCombo": cls.granularityCombo,
            "inScope": cls.inScope,
        }
        entry["fileIndex"] = file_indices[i] if file_indices is not None else i

    return {
        "defaultMode": "sideBySide",
        "notebookName": Path(nb.sourcePath).stem,
        "layout": serialize_layout(doc),
        "cells": [_cell_payload(cell, span_cues) for cell in nb.cells],
        "relationships": rel_dicts,
        "linearOrder": [cell.id for cell in nb.cells],
    }


def emit_layout_json(doc: LayoutDocument, out: str | Path) -> None:
    Path(out).write_text(jsonutil.dumps(serialize_layout(doc)), encoding="utf-8")


def _asset_dir() -> Path:
    return Path(importlib.resources.files("interlink") / "viewer_assets")


_INDEX_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<meta name="viewport" content="width=device-width, initial-scale=1">
<title>{title}</title>
<link rel="stylesheet" href="assets/viewer.css">
</head>
<body>
<div id="interlink-root"></div>
<script id="{data_id}" type="application/json">{payload}</script>
<script src="assets/viewer.js"></script>
</body>
</html>
"""


def emit_html(
    doc: LayoutDocument,
    nb: NotebookDoc,
    rels: RelationshipSet,
    out: str | Path,
    *,
    file_indices: list[int] | None = None,
) -> dict:
    """Write index.html plus viewer assets; returns a written-file manifest."""
    asset_dir = _asset_dir()
    required = ("viewer.js", "viewer.css")
    if not all((asset_dir / name).is_file() for name in required):
        raise MissingViewerAssets(
            "compiled viewer assets (viewer.js, viewer.css) are not installed; "
            "build the frontend package first"
        )

    out_dir = Path(out)
    assets_out = out_dir / "assets"
    assets_out.mkdir(parents=True, exist_ok=True)

    payload = build_data_payload(doc, nb, rels, file_indices=file_indices)
    # "</" would terminate the script element early inside embedded JSON.
    payload_text = jsonutil.dumps_compact(payload).replace("</", "<\\/")
    index_html = _INDEX_TEMPLATE.format(
        title=html.escape(f"{payload['notebookName']} - InterLink"),
        data_id=DATA_ELEMENT_ID,
        payload=payload_text,
    )

    written = []
    index_path = out_dir / "index.html"
    index_path.write_text(index_html, encoding="utf-8")
    written.append(str(index_path))
    for name in required:
        target = assets_out / name
        target.write_bytes((asset_dir / name).read_bytes())
        written.append(str(target))
    return {"index": str(index_path), "written": written}


def extract_payload(index_html: str) -> str:
    """Inverse of the embed step, for round-trip checks."""
    marker = f'<script id="{DATA_ELEMENT_ID}" type="application/json">'
    start = index_html.index(marker) + len(marker)
    end = index_html.index("</script>", start)
    return index_html[start:end].replace("<\\/", "</")
