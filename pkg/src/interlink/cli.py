"""Command-line entry point.

    interlink render --notebook nb.ipynb --relationships nb.rel.json --out build
    interlink lint   --notebook nb.ipynb --relationships nb.rel.json
    interlink stats  --relationships nb.rel.json

Exit codes: 0 success, 1 validation errors, 2 parse or I/O failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import __version__
from .bundle import MissingViewerAssets, emit_html, emit_layout_json
from .config import ConfigError, LayoutConfig, load_config
from .layout import LayoutError, annotate_cues, compute_layout, route_links
from .notebook import NotebookParseError, measure_cell, parse_notebook
from .relationships import (
    RelationshipParseError,
    RelationshipSet,
    aggregate,
    classify,
    parse_relationships,
    stats,
    validate,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_FAILURE = 2

CONFIG_ENV_VAR = "INTERLINK_CONFIG"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="interlink",
        description="Render a notebook and its relationship file into a "
        "side-by-side linked layout.",
    )
    parser.add_argument("--version", action="version", version=f"interlink {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p: argparse.ArgumentParser, *, notebook_required: bool) -> None:
        p.add_argument("--notebook", required=notebook_required, help="notebook file (.ipynb)")
        p.add_argument("--relationships", required=True, help="relationship file (JSON)")
        p.add_argument("--config", help=f"layout config JSON (or ${CONFIG_ENV_VAR})")
        p.add_argument(
            "--format", choices=("text", "json"), default="text", help="output format"
        )

    render = sub.add_parser("render", help="compute the layout and emit output")
    common(render, notebook_required=True)
    render.add_argument("--out", required=True, help="output directory")
    render.add_argument(
        "--emit",
        action="append",
        choices=("html", "layout-json"),
        help="what to emit (repeatable; default: html)",
    )

    lint = sub.add_parser("lint", help="check a relationship file against a notebook")
    common(lint, notebook_required=True)

    st = sub.add_parser("stats", help="print the taxonomy distribution and totals")
    common(st, notebook_required=False)

    return parser


def _load_layout_config(args) -> LayoutConfig:
    path = args.config or os.environ.get(CONFIG_ENV_VAR)
    if path:
        return load_config(path)
    return LayoutConfig()


def _emit_error(args, kind: str, message: str, **extra) -> None:
    if args.format == "json":
        payload = {"error": {"kind": kind, "message": message, **extra}}
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(f"error: {message}", file=sys.stderr)


def _diagnostic_dict(d) -> dict:
    return {
        "code": d.code,
        "severity": d.severity,
        "relationshipIndex": d.relationshipIndex,
        "side": d.side,
        "message": d.message,
    }


def _render_set(rels: RelationshipSet) -> tuple[RelationshipSet, list[int]]:
    """The relationships actually rendered: in scope, first occurrence only."""
    kept = []
    indices = []
    seen = set()
    for index, r in enumerate(rels.relationships):
        if not classify(r).inScope or r in seen:
            continue
        seen.add(r)
        kept.append(r)
        indices.append(index)
    return RelationshipSet(relationships=tuple(kept)), indices


def _cmd_render(args) -> int:
    cfg = _load_layout_config(args)
    nb = parse_notebook(args.notebook)
    rels = parse_relationships(args.relationships)

    diagnostics = validate(rels, nb)
    errors = [d for d in diagnostics if d.severity == "error"]
    if errors:
        if args.format == "json":
            print(
                json.dumps(
                    {
                        "error": {
                            "kind": "validation",
                            "message": f"{len(errors)} validation error(s)",
                        },
                        "diagnostics": [_diagnostic_dict(d) for d in diagnostics],
                    },
                    ensure_ascii=False,
                )
            )
        else:
            for d in diagnostics:
                print(f"{d.severity} {d.code} rel[{d.relationshipIndex}]: {d.message}",
                      file=sys.stderr)
            print(f"error: refusing to render with {len(errors)} validation error(s)",
                  file=sys.stderr)
        return EXIT_VALIDATION

    render_rels, file_indices = _render_set(rels)
    heights = {cell.id: measure_cell(cell, cfg) for cell in nb.cells}
    doc = compute_layout(nb, aggregate(render_rels), heights, cfg)
    doc = replace(
        doc,
        links=route_links(doc, cfg),
        cueAnnotations=annotate_cues(nb, render_rels),
    )

    out_dir = args.out
    emit_kinds = tuple(dict.fromkeys(args.emit)) if args.emit else ("html",)
    written = []
    os.makedirs(out_dir, exist_ok=True)
    if "layout-json" in emit_kinds:
        layout_path = os.path.join(out_dir, "layout.json")
        emit_layout_json(doc, layout_path)
        written.append(layout_path)
    if "html" in emit_kinds:
        manifest = emit_html(doc, nb, render_rels, out_dir, file_indices=file_indices)
        written.extend(manifest["written"])

    if args.format == "json":
        print(
            json.dumps(
                {
                    "ok": True,
                    "cells": len(nb.cells),
                    "links": len(doc.links),
                    "written": written,
                },
                ensure_ascii=False,
            )
        )
    else:
        for path in written:
            print(f"wrote {path}")
        print(f"ok: {len(nb.cells)} cells, {len(doc.links)} links")
    return EXIT_OK


def _cmd_lint(args) -> int:
    nb = parse_notebook(args.notebook)
    rels = parse_relationships(args.relationships)
    diagnostics = validate(rels, nb)
    errors = sum(1 for d in diagnostics if d.severity == "error")
    warnings = len(diagnostics) - errors
    if args.format == "json":
        print(
            json.dumps(
                {
                    "diagnostics": [_diagnostic_dict(d) for d in diagnostics],
                    "errors": errors,
                    "warnings": warnings,
                },
                ensure_ascii=False,
            )
        )
    else:
        for d in diagnostics:
            side = f".{d.side}" if d.side else ""
            print(f"{d.severity} {d.code} rel[{d.relationshipIndex}]{side}: {d.message}")
        print(f"{errors} error(s), {warnings} warning(s)")
    return EXIT_VALIDATION if errors else EXIT_OK


def _cmd_stats(args) -> int:
    rels = parse_relationships(args.relationships)
    result = stats(rels)
    if args.format == "json":
        print(json.dumps(result.as_dict(), ensure_ascii=False))
    else:
        for cls, count in result.distribution:
            print(f"{cls.label}: {count}")
        print(f"relationships: {result.totalRelationships}")
        print(f"aggregated: {result.totalAggregated}")
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"render": _cmd_render, "lint": _cmd_lint, "stats": _cmd_stats}
    try:
        return handlers[args.subcommand](args)
    except (NotebookParseError, RelationshipParseError) as exc:
        _emit_error(args, "parse", str(exc))
        return EXIT_FAILURE
    except ConfigError as exc:
        _emit_error(args, "config", str(exc))
        return EXIT_FAILURE
    except MissingViewerAssets as exc:
        _emit_error(args, "missing-viewer-assets", str(exc))
        return EXIT_FAILURE
    except LayoutError as exc:
        _emit_error(args, "layout", str(exc))
        return EXIT_FAILURE
    except OSError as exc:
        _emit_error(args, "io", str(exc))
        return EXIT_FAILURE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
