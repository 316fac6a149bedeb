"""Shapes, cardinalities, the filtered search, partitioning, checkpoints."""

import itertools
import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from g2scan.disc6 import build_disc6, disc6_eval
from g2scan.model import poly_mul
from g2scan.search import (ALL_H, Checkpoint, CheckpointFormatError, ShapeSpec,
                           WorkUnit, cardinality, exact_delta, parse_shape,
                           partition, run_search, shape_boxes, write_candidates)

D6 = 10 ** 6


def numpy_delta_residues(h, bounds):
    """Independent oracle: Delta mod 2^64 at every point of the f-box by
    term-by-term evaluation of the divided discriminant polynomial (uint64
    wraparound is exact reduction mod 2^64; no tree/difference machinery).

    Dividing disc6(4f+h^2) by its content 2^12 must happen on the integer
    coefficients, not on residues, or the top 12 bits would be lost.
    """
    from g2scan.search import delta_poly_for_h

    grids = np.meshgrid(*[np.arange(-b, b + 1, dtype=np.int64) for b in bounds],
                        indexing="ij")
    fvals = [g.astype(np.uint64) for g in grids]
    total = np.zeros_like(fvals[0])
    for exps, c in delta_poly_for_h(h).iter_terms():
        term = np.full_like(total, np.uint64(c & ((1 << 64) - 1)))
        for i, e in enumerate(exps):
            for _ in range(e):
                term = term * fvals[i]
        total = total + term
    return total, grids


def test_parse_shape_grammar():
    s = parse_shape("S1:90", D6)
    assert s.variant == "S1" and s.params == (90,)
    s = parse_shape("S2:2,3.51", D6)
    assert s.params == (2, Fraction("3.51"))
    s = parse_shape("S4:10,10", D6)
    assert s.params == (10, 10)
    with pytest.raises(ValueError):
        parse_shape("S9:1", D6)
    with pytest.raises(ValueError):
        parse_shape("S2:2", D6)


def test_shape_validation():
    with pytest.raises(ValueError):
        ShapeSpec("S2", (0, Fraction(2)), D6)
    with pytest.raises(ValueError):
        ShapeSpec("S4", (1, 5), D6)
    with pytest.raises(ValueError):
        ShapeSpec("S1", (3,), -1)
    with pytest.raises(ValueError):
        ShapeSpec("S1", (3,), 1 << 63)


def test_disc_bound_zero_gives_empty_stream():
    assert run_search(ShapeSpec("S1", (1,), 0), workers=1) == []


def test_s1_boxes_and_cardinality():
    s = ShapeSpec("S1", (12,), D6)
    boxes = list(shape_boxes(s))
    assert len(boxes) == 16
    assert all(box.intervals == ((-12, 12),) * 7 for _, box in boxes)
    assert cardinality(s) == 16 * 25 ** 7  # ~9.77e10, the paper's ~1e11 row
    assert cardinality(ShapeSpec("S1", (0,), D6)) == 16


def test_final_search_cardinalities_match_paper_table():
    # sizes reported for the production boxes, to 1 percent
    pairs = [
        (ShapeSpec("S1", (90,), D6), 1.02e17),
        (ShapeSpec("S2", (2, Fraction("3.51")), D6), 9.84e16),
        (ShapeSpec("S3", (Fraction("7.14"),), D6), 1.01e17),
        (ShapeSpec("S4", (10, 10), D6), 2.10e16),
    ]
    for spec, reported in pairs:
        assert abs(cardinality(spec) - reported) <= 0.01 * reported
    # the S4 size in log scale, as also reported: ~10^16.3
    assert abs(math.log10(cardinality(pairs[3][0])) - 16.3) < 0.05


def test_s2_bounds_floor_rule():
    s = ShapeSpec("S2", (2, Fraction("3.51")), D6)
    _, box = next(iter(shape_boxes(s)))
    bounds = [hi for _, hi in box.intervals]
    assert bounds[6] == 2  # floor(2 * 3.51^0)
    assert bounds[0] == int(2 * Fraction("3.51") ** 6)  # floor(2 * 3.51^6)


def test_s4_union_is_exact_and_disjoint():
    s = ShapeSpec("S4", (2, 3), D6)
    boxes = [box for h, box in shape_boxes(s) if h == (0, 0, 0, 0)]
    assert 16 * sum(b.cardinality() for b in boxes) == cardinality(s)
    rng = random.Random(6)
    for _ in range(400):
        f = [rng.randint(-8, 8) for _ in range(7)]
        inside = sum(1 for b in boxes
                     if all(lo <= f[i] <= hi for i, (lo, hi) in enumerate(b.intervals)))
        budget = sum(math.ceil(math.log(abs(v) + 1, 2)) if v else 0 for v in f)
        assert inside == (1 if budget <= 3 else 0)


def test_run_search_matches_brute_force_s1_2():
    """Acceptance-grade oracle at small scale: S1(2), D = 10^6."""
    spec = ShapeSpec("S1", (2,), D6)
    got = {(m.f, m.h, d) for m, d in run_search(spec, workers=2)}

    expect = set()
    rng = random.Random(10)
    mask = (1 << 64) - 1
    for h in ALL_H:
        residues, grids = numpy_delta_residues(h, [2] * 7)
        window = (residues <= np.uint64(D6)) | (residues >= np.uint64((1 << 64) - D6))
        pts = np.argwhere(window)
        for ix in pts:
            f = tuple(int(g[tuple(ix)]) for g in grids)
            delta = exact_delta(f, h)
            if delta != 0 and abs(delta) <= D6:
                expect.add((f, h, delta))
        # spot-check the vectorized residues against exact big-int values
        flat = [tuple(int(g[tuple(ix)]) for g in grids)
                for ix in rng.sample(list(np.ndindex(residues.shape)), 40)]
        for f in flat:
            idx = tuple(f[i] + 2 for i in range(7))
            assert int(residues[idx]) == exact_delta(f, h) & mask

    assert got == expect
    assert any(f == (0, -1, -1, 0, 0, 0, 0) and h == (1, 1, 1, 1)
               for f, h, _ in got)


def test_window_rejects_singular_models():
    # Delta = 0 residues pass the window but must never be emitted
    spec = ShapeSpec("S1", (1,), D6)
    for m, d in run_search(spec, workers=1):
        assert d != 0 and abs(d) <= D6


def test_partition_covers_disjointly():
    spec = ShapeSpec("S1", (3,), D6)
    units = partition(spec, target_units=24)
    assert len(units) >= 24
    seen = set()
    total = 0
    for u in units:
        box = u.box()
        total += box.cardinality()
        for pt in [tuple(lo for lo, _ in box.intervals),
                   tuple(hi for _, hi in box.intervals)]:
            assert (u.h, pt) not in seen
            seen.add((u.h, pt))
    assert total == cardinality(spec)


def test_partitioned_equals_unpartitioned():
    spec = ShapeSpec("S1", (2,), D6)
    base = run_search(spec, workers=1)
    parts = run_search(spec, workers=2, units=partition(spec, target_units=50))
    assert {(m.f, m.h, d) for m, d in base} == {(m.f, m.h, d) for m, d in parts}


def test_checkpoint_kill_and_resume_byte_identical(tmp_path):
    spec = ShapeSpec("S1", (3,), D6)
    units = partition(spec, target_units=12)

    straight = tmp_path / "straight.ndjson"
    run_search(spec, workers=2, units=units, out_path=str(straight))

    cp = tmp_path / "cp.json"
    resumed = tmp_path / "resumed.ndjson"
    with pytest.raises(InterruptedError):
        run_search(spec, workers=2, units=units, checkpoint_path=str(cp),
                   stop_after_units=5, checkpoint_every=1)
    assert cp.exists()
    run_search(spec, workers=2, units=units, checkpoint_path=str(cp),
               out_path=str(resumed))
    assert resumed.read_bytes() == straight.read_bytes()


def test_checkpoint_rejects_corruption(tmp_path):
    path = tmp_path / "cp.json"
    path.write_text("{not json")
    with pytest.raises(CheckpointFormatError):
        Checkpoint.load(str(path))
    path.write_text(json.dumps({"format": "something-else"}))
    with pytest.raises(CheckpointFormatError):
        Checkpoint.load(str(path))
    path.write_text(json.dumps({"format": "g2scan-checkpoint", "version": 99}))
    with pytest.raises(CheckpointFormatError):
        Checkpoint.load(str(path))


def test_checkpoint_mismatched_shape_rejected(tmp_path):
    spec3 = ShapeSpec("S1", (3,), D6)
    cp = tmp_path / "cp.json"
    with pytest.raises(InterruptedError):
        run_search(spec3, workers=1, checkpoint_path=str(cp),
                   stop_after_units=1, checkpoint_every=1)
    with pytest.raises(CheckpointFormatError):
        run_search(ShapeSpec("S1", (2,), D6), workers=1, checkpoint_path=str(cp))


def test_h_symmetry_cross_check():
    """Coefficient reversal x -> 1/x maps the candidate set for h onto the
    candidate set for reversed h, preserving Delta (the optimization the
    paper exploits; used here only as a consistency check)."""
    spec = ShapeSpec("S1", (2,), D6)
    by_h = {}
    for m, d in run_search(spec, workers=2):
        by_h.setdefault(m.h, set()).add((m.f, d))
    for h, models in by_h.items():
        rev_h = h[::-1]
        expect = {(f[::-1], d) for f, d in models}
        assert by_h.get(rev_h, set()) == expect


def test_false_positive_rate_window():
    """On S1(2) the residue window triggers only for true |Delta| <= D or
    Delta = 0; no wraparound false positives at this scale."""
    h = (1, 1, 0, 1)
    residues, grids = numpy_delta_residues(h, [2] * 7)
    window = (residues <= np.uint64(D6)) | (residues >= np.uint64((1 << 64) - D6))
    for ix in np.argwhere(window):
        f = tuple(int(g[tuple(ix)]) for g in grids)
        assert abs(exact_delta(f, h)) <= D6
