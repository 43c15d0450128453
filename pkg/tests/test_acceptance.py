"""Acceptance gate: one test per contract-level guarantee.

Each test here pins an end-to-end behavior of the package: the golden
walkthrough layout, pair aggregation, the relationship-class census,
randomized layout invariants with a brute-force cross-check, render
speed at survey scale, the lint corpus, and byte determinism.
"""

from __future__ import annotations

import json
import random
import time
from pathlib import Path

import jsonschema

import synth
from interlink import (
    LayoutConfig,
    NotebookDoc,
    RelationshipSet,
    Spacer,
    aggregate,
    all_taxonomy_classes,
    build_data_payload,
    compute_layout,
    emit_layout_json,
    measure_cell,
    parse_notebook,
    parse_relationships,
    run,
    serialize_layout,
    validate,
    with_links_and_cues,
)
from interlink.jsonutil import dumps, dumps_compact

DATA = Path(__file__).parent / "data"
SCHEMA = json.loads((Path(__file__).parent.parent / "layout.schema.json").read_text("utf-8"))


def measured_heights(nb: NotebookDoc, cfg: LayoutConfig) -> dict[str, float]:
    return {cell.id: measure_cell(cell, cfg) for cell in nb.cells}


def render_from_disk(nb_path, rel_path, cfg):
    """Parse inputs, refuse dirty ones, and produce the full layout document."""
    nb = parse_notebook(nb_path)
    rels = parse_relationships(rel_path)
    problems = [d for d in validate(rels, nb) if d.severity == "error"]
    assert problems == []
    doc = compute_layout(nb, aggregate(rels), measured_heights(nb, cfg), cfg)
    return with_links_and_cues(doc, nb, rels, cfg), nb, rels


# ---------------------------------------------------------------------------
# 1. Golden walkthrough layout
# ---------------------------------------------------------------------------


def test_walkthrough_layout_matches_the_golden_trace(tmp_path):
    cfg = LayoutConfig()
    doc, nb, rels = render_from_disk(
        DATA / "walkthrough.ipynb", DATA / "walkthrough.rel.json", cfg
    )

    golden = (DATA / "walkthrough_layout.json").read_text(encoding="utf-8")
    assert dumps(json.loads(golden)) == golden, "golden file is in canonical form"
    assert dumps(serialize_layout(doc)) == golden

    # The layout relations the golden bytes encode, stated directly.
    m1, c1, o1 = doc.cell("m1"), doc.cell("c1"), doc.cell("o1")
    assert m1.y == c1.y == 0
    assert m1.height == min(264, c1.height + o1.height + cfg.cellGap) == 244
    assert doc.cell("m2").y == m1.y + m1.height + cfg.cellGap == 260
    m3, c3 = doc.cell("m3"), doc.cell("c3")
    assert m3.y == c3.y == 420
    assert m3.height == min(m3.contentHeight, c3.height) == 184
    assert doc.cell("m4").height == cfg.defaultTextHeight == 120
    assert doc.spacers == (Spacer(column="right", y=620, height=136),)
    assert doc.cell("c4").y == 620 + 136 == 756
    assert doc.cell("m5").y == doc.cell("c4").y == 756
    assert doc.totalHeight == 920

    jsonschema.validate(json.loads(golden), SCHEMA)

    heights = measured_heights(nb, cfg)
    r_prime = aggregate(rels)
    best = min(
        _timed(
            lambda: dumps(
                serialize_layout(
                    with_links_and_cues(
                        compute_layout(nb, r_prime, heights, cfg), nb, rels, cfg
                    )
                )
            )
        )
        for _ in range(5)
    )
    assert best < 0.010, f"layout took {best * 1000:.2f} ms"


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


# ---------------------------------------------------------------------------
# 2. Aggregation to cell-ID pairs
# ---------------------------------------------------------------------------


def test_aggregation_collapses_anchor_variants_to_cell_pairs(tmp_path):
    rels = parse_relationships(DATA / "segmented.rel.json")
    assert [p.cellPair for p in aggregate(rels)] == [("m6", "c19"), ("m6", "o19")]

    # The same two pairs from a minimal two-relationship file, built inline.
    minimal = [
        {
            "source": {
                "cellId": "m6",
                "cellType": "text",
                "granularityType": "segment",
                "spanPos": {"start": 0, "length": 12},
            },
            "target": {"cellId": "c19", "cellType": "code", "granularityType": "cell"},
        },
        {
            "source": {"cellId": "m6", "cellType": "text", "granularityType": "cell"},
            "target": {
                "cellId": "o19",
                "cellType": "output",
                "granularityType": "segment",
                "sketch": {"bbox": [10, 20, 100, 80, 0]},
                "viewSize": [640, 480],
            },
        },
    ]
    path = tmp_path / "minimal.rel.json"
    path.write_text(json.dumps(minimal), encoding="utf-8")
    assert [p.cellPair for p in aggregate(parse_relationships(path))] == [
        ("m6", "c19"),
        ("m6", "o19"),
    ]


# ---------------------------------------------------------------------------
# 3. Relationship-class census
# ---------------------------------------------------------------------------


def test_structural_census_covers_every_relationship_class():
    classes = set(all_taxonomy_classes())
    assert len(classes) == 27
    inter = {c for c in classes if len(set(c.categoryPair.split("-"))) == 2}
    assert (len(inter), len(classes - inter)) == (12, 15)
    in_scope = {c for c in classes if c.inScope}
    assert len(in_scope) == 8
    assert {c.categoryPair for c in in_scope} == {"text-code", "text-output"}
    assert in_scope <= inter


# ---------------------------------------------------------------------------
# 4. Randomized layout invariants with a brute-force cross-check
# ---------------------------------------------------------------------------


def test_randomized_layouts_hold_every_invariant():
    cfg = LayoutConfig()
    no_rels = RelationshipSet(relationships=())
    start = time.perf_counter()
    oracle_runs = 0
    for trial in range(1000):
        rng = random.Random(424200 + trial)
        n = rng.randint(1, 6) if trial % 4 == 0 else rng.randint(1, 120)
        cells = synth.synth_cells(rng, n)
        heights = synth.synth_heights(rng, cells, cfg)
        pairs = synth.synth_pairs(rng, cells, 150)
        nb = NotebookDoc(cells=tuple(cells), sourcePath="synthetic.ipynb")

        doc = with_links_and_cues(compute_layout(nb, pairs, heights, cfg), nb, no_rels, cfg)
        synth.check_layout(cells, pairs, heights, cfg, doc)

        again = with_links_and_cues(compute_layout(nb, pairs, heights, cfg), nb, no_rels, cfg)
        assert again == doc
        if trial % 97 == 0:
            assert dumps(serialize_layout(again)) == dumps(serialize_layout(doc))

        if len(cells) <= 6:
            expected = synth.oracle_layout(cells, pairs, heights, cfg)
            got = {p.cellId: (p.y, p.height) for p in doc.placedCells}
            assert got == expected, (cells, pairs, heights)
            oracle_runs += 1
    elapsed = time.perf_counter() - start
    assert oracle_runs >= 200, "small notebooks must exercise the brute-force oracle"
    assert elapsed < 60.0, f"property suite took {elapsed:.1f} s"


# ---------------------------------------------------------------------------
# 5. Survey-scale render speed
# ---------------------------------------------------------------------------


def test_survey_scale_notebooks_render_fast(tmp_path):
    cfg = LayoutConfig()
    censuses = [("house", 55, 32, 24, 56), ("titanic", 49, 52, 49, 100)]
    for name, n_text, n_code, n_output, n_rels in censuses:
        rng = random.Random(hash(name) & 0xFFFF)
        nb_path = tmp_path / f"{name}.ipynb"
        nb_path.write_text(
            json.dumps(synth.census_notebook(rng, n_text, n_code, n_output)),
            encoding="utf-8",
        )
        parsed = parse_notebook(nb_path)
        raw_rels = synth.census_relationships(rng, parsed, n_rels)
        assert len(raw_rels) == n_rels
        rel_path = tmp_path / f"{name}.rel.json"
        rel_path.write_text(json.dumps(raw_rels), encoding="utf-8")

        start = time.perf_counter()
        doc, nb, rels = render_from_disk(nb_path, rel_path, cfg)
        emit_layout_json(doc, tmp_path / f"{name}.layout.json")
        elapsed = time.perf_counter() - start
        assert elapsed < 0.100, f"{name} render took {elapsed * 1000:.1f} ms"

        kinds = (n_text, n_code, n_output)
        assert tuple(sum(1 for c in nb.cells if c.kind == k) for k in ("text", "code", "output")) == kinds
        assert validate(rels, nb) == []
        distinct_pairs = {
            frozenset((r["source"]["cellId"], r["target"]["cellId"])) for r in raw_rels
        }
        assert len(doc.links) == len(distinct_pairs)


# ---------------------------------------------------------------------------
# 6. Lint corpus
# ---------------------------------------------------------------------------


def test_lint_corpus_flags_each_diagnostic_exactly_once():
    nb = parse_notebook(DATA / "lint.ipynb")
    rels = parse_relationships(DATA / "lint.rel.json")
    found = [(d.code, d.severity, d.relationshipIndex, d.side) for d in validate(rels, nb)]
    assert found == [
        ("D1", "error", 1, "source"),
        ("D2", "error", 2, "source"),
        ("D3", "error", 3, "source"),
        ("D4", "error", 4, "target"),
        ("D5", "warning", 5, None),
        ("D6", "warning", 6, None),
    ]

    clean_nb = parse_notebook(DATA / "walkthrough.ipynb")
    clean_rels = parse_relationships(DATA / "walkthrough.rel.json")
    assert validate(clean_rels, clean_nb) == []


# ---------------------------------------------------------------------------
# 7. Byte determinism across runs
# ---------------------------------------------------------------------------


def test_repeated_renders_are_byte_identical(tmp_path, capsys):
    outs = []
    for attempt in ("one", "two"):
        out = tmp_path / attempt
        code = run(
            [
                "render",
                "--notebook",
                str(DATA / "walkthrough.ipynb"),
                "--relationships",
                str(DATA / "walkthrough.rel.json"),
                "--out",
                str(out),
                "--emit",
                "layout-json",
            ]
        )
        assert code == 0
        outs.append((out / "layout.json").read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]

    payloads = []
    for _ in range(2):
        cfg = LayoutConfig()
        doc, nb, rels = render_from_disk(
            DATA / "walkthrough.ipynb", DATA / "walkthrough.rel.json", cfg
        )
        payloads.append(dumps_compact(build_data_payload(doc, nb, rels)))
    assert payloads[0] == payloads[1]
