"""Notebook ingestion and the cell height model.

Cells get stable per-kind IDs: m<i> for the i-th markdown cell, c<j> for
the j-th code cell, and o<j> for the output cell produced by code cell
c<j>. A code cell with a non-empty outputs list yields exactly one output
cell, placed immediately after it; raw cells are dropped.
"""

from __future__ import annotations

import base64
import binascii
import io
import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .config import LayoutConfig

_IMAGE_MIMES = ("image/png", "image/jpeg", "image/gif")
_ANSI_RE = re.compile(r"\x1b\[[0-9;]*[A-Za-z]")


class NotebookParseError(Exception):
    """Malformed notebook file. Carries a byte offset or a cell index."""

    def __init__(self, message: str, *, offset: int | None = None, cell_index: int | None = None):
        super().__init__(message)
        self.message = message
        self.offset = offset
        self.cell_index = cell_index


@dataclass(frozen=True)
class OutputPayload:
    mime: str
    textContent: str | None = None
    imageDims: tuple[int, int] | None = None
    imageDataUri: str | None = None


@dataclass(frozen=True)
class Cell:
    id: str
    kind: str  # text | code | output
    source: str
    ordinal: int
    outputPayloads: tuple[OutputPayload, ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class NotebookDoc:
    cells: tuple[Cell, ...]
    sourcePath: str

    def id_map(self) -> dict[str, Cell]:
        return {cell.id: cell for cell in self.cells}


def _join_source(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, list) and all(isinstance(part, str) for part in value):
        return "".join(value)
    raise TypeError("source must be a string or list of strings")


def _metadata_dims(metadata, mime: str) -> tuple[int, int] | None:
    if not isinstance(metadata, dict):
        return None
    for scope in (metadata.get(mime), metadata):
        if isinstance(scope, dict):
            width, height = scope.get("width"), scope.get("height")
            if isinstance(width, int) and isinstance(height, int) and width > 0 and height > 0:
                return (width, height)
    return None


def _decode_image(data: str, mime: str):
    """Return (dims, dataUri) for a base64 image, or (None, None) if unusable."""
    try:
        raw = base64.b64decode(data, validate=True)
    except (binascii.Error, ValueError):
        return None, None
    try:
        from PIL import Image

        with Image.open(io.BytesIO(raw)) as img:
            dims = (int(img.width), int(img.height))
    except Exception:
        return None, None
    return dims, f"data:{mime};base64,{data}"


def _image_payload(data_map: dict, metadata) -> OutputPayload | None:
    for mime in _IMAGE_MIMES:
        if mime not in data_map:
            continue
        data = data_map[mime]
        if isinstance(data, list):
            data = "".join(data)
        if not isinstance(data, str):
            continue
        data = data.strip()
        dims = _metadata_dims(metadata, mime)
        uri = None
        decoded_dims, decoded_uri = _decode_image(data, mime)
        if decoded_dims is not None:
            uri = decoded_uri
            if dims is None:
                dims = decoded_dims
        if dims is not None:
            return OutputPayload(mime=mime, imageDims=dims, imageDataUri=uri)
    return None


def _output_payloads(outputs, cell_index: int) -> list[OutputPayload]:
    payloads: list[OutputPayload] = []
    for output in outputs:
        if not isinstance(output, dict):
            raise NotebookParseError(
                f"cell {cell_index}: output entries must be objects", cell_index=cell_index
            )
        otype = output.get("output_type")
        if otype == "stream":
            text = _join_source(output.get("text", ""))
            if text:
                payloads.append(OutputPayload(mime="text/plain", textContent=text))
        elif otype in ("execute_result", "display_data"):
            data_map = output.get("data", {})
            if not isinstance(data_map, dict):
                continue
            image = _image_payload(data_map, output.get("metadata"))
            if image is not None:
                payloads.append(image)
            if "text/plain" in data_map:
                text = _join_source(data_map["text/plain"])
                if text and image is None:
                    payloads.append(OutputPayload(mime="text/plain", textContent=text))
        elif otype == "error":
            traceback = output.get("traceback", [])
            if isinstance(traceback, list):
                text = _ANSI_RE.sub("", "\n".join(str(line) for line in traceback))
            else:
                text = _ANSI_RE.sub("", str(traceback))
            if text:
                payloads.append(OutputPayload(mime="application/vnd.error", textContent=text))
        # Unknown output types carry nothing we can measure; skip them.
    return payloads


def parse_notebook(path: str | Path) -> NotebookDoc:
    """Parse an nbformat v4 JSON file into an ordered cell sequence."""
    path = Path(path)
    raw = path.read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise NotebookParseError(f"{path}: invalid JSON: {exc.msg}", offset=exc.pos) from exc
    if not isinstance(data, dict):
        raise NotebookParseError(f"{path}: notebook root must be an object", offset=0)
    major = data.get("nbformat")
    if major != 4:
        raise NotebookParseError(f"{path}: unsupported nbformat major version {major!r}")
    raw_cells = data.get("cells")
    if not isinstance(raw_cells, list):
        raise NotebookParseError(f"{path}: missing cells list")

    cells: list[Cell] = []
    ordinal = 0
    text_count = 0
    code_count = 0
    for index, raw_cell in enumerate(raw_cells):
        if not isinstance(raw_cell, dict):
            raise NotebookParseError(f"cell {index}: must be an object", cell_index=index)
        cell_type = raw_cell.get("cell_type")
        if cell_type == "raw":
            continue
        try:
            source = _join_source(raw_cell.get("source", ""))
        except TypeError as exc:
            raise NotebookParseError(f"cell {index}: {exc}", cell_index=index) from exc
        if cell_type == "markdown":
            text_count += 1
            cells.append(Cell(id=f"m{text_count}", kind="text", source=source, ordinal=ordinal))
            ordinal += 1
        elif cell_type == "code":
            code_count += 1
            cells.append(Cell(id=f"c{code_count}", kind="code", source=source, ordinal=ordinal))
            ordinal += 1
            outputs = raw_cell.get("outputs", [])
            if not isinstance(outputs, list):
                raise NotebookParseError(
                    f"cell {index}: outputs must be a list", cell_index=index
                )
            if outputs:
                payloads = _output_payloads(outputs, index)
                out_source = "".join(p.textContent or "" for p in payloads)
                cells.append(
                    Cell(
                        id=f"o{code_count}",
                        kind="output",
                        source=out_source,
                        ordinal=ordinal,
                        outputPayloads=tuple(payloads),
                    )
                )
                ordinal += 1
        else:
            raise NotebookParseError(
                f"cell {index}: unknown cell_type {cell_type!r}", cell_index=index
            )
    return NotebookDoc(cells=tuple(cells), sourcePath=str(path))


def physical_line_count(text: str) -> int:
    """Lines as an editor counts them; one trailing newline is not a line."""
    if not text:
        return 1
    if text.endswith("\n"):
        text = text[:-1]
    return max(1, text.count("\n") + 1)


def wrapped_line_count(text: str, width: float, char_width: float) -> int:
    """Greedy character-budget wrap count over each physical line."""
    chars_per_line = max(1, math.floor(width / char_width))
    if not text:
        return 1
    if text.endswith("\n"):
        text = text[:-1]
    total = 0
    for line in text.split("\n"):
        total += max(1, math.ceil(len(line) / chars_per_line))
    return max(1, total)


def measure_cell(cell: Cell, cfg: LayoutConfig) -> float:
    """Deterministic content height for a cell, never below minCellHeight."""
    pad = 2 * cfg.cellPadding
    if cell.kind == "text":
        lines = wrapped_line_count(cell.source, cfg.leftTextWidth, cfg.avgCharWidth)
        height = lines * cfg.lineHeight + pad
    elif cell.kind == "code":
        height = physical_line_count(cell.source) * cfg.lineHeight + pad
    elif cell.kind == "output":
        content = 0.0
        for payload in cell.outputPayloads:
            if payload.imageDims is not None:
                width, img_height = payload.imageDims
                content += img_height * (cfg.rightContentWidth / width)
            elif payload.textContent is not None:
                content += physical_line_count(payload.textContent) * cfg.lineHeight
        height = content + pad
    else:
        raise ValueError(f"unknown cell kind {cell.kind!r}")
    return max(height, cfg.minCellHeight)
