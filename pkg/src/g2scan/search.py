"""Box search for integral models with small discriminant.

Shapes S1..S4 describe coefficient boxes for f (h always runs over the 16
polynomials with coefficients in {0,1}).  For each h the discriminant
Delta(f, h) = 2^-12 disc6(4f + h^2) is a polynomial in f0..f6 that a
monomial tree enumerates modulo 2^64 over every lattice point; residues
landing in the window [-D, D] mod 2^64 are recomputed exactly over ZZ and
kept when 0 < |Delta| <= D.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .disc6 import build_disc6, disc6_eval
from .model import WeierstrassModel, poly_mul
from .monotree import BoxSpec, MonomialTree, TreeScanner, build_tree
from .polyring import Poly, PolyRing

ALL_H = [(i & 1, (i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1) for i in range(16)]
MAX_DISC_BOUND = 1 << 62
VAR_ORDER = (0, 1, 2, 3, 4, 5, 6)  # f0 innermost


class CheckpointFormatError(Exception):
    pass


@dataclass(frozen=True)
class ShapeSpec:
    """One search shape plus the discriminant bound D."""

    variant: str                 # S1 | S2 | S3 | S4
    params: tuple                # S1: (B,)  S2: (a, b)  S3: (b,)  S4: (b, d)
    disc_bound: int

    def __post_init__(self):
        # D = 0 is legal and yields an empty stream (only Delta = 0 would
        # pass, and singular models are always rejected)
        if self.disc_bound < 0 or self.disc_bound > MAX_DISC_BOUND:
            raise ValueError("disc bound must be in [0, 2^62]")
        v, p = self.variant, self.params
        if v == "S1":
            if len(p) != 1 or p[0] < 0:
                raise ValueError("S1 needs B >= 0")
        elif v == "S2":
            if len(p) != 2 or p[0] < 1 or p[1] <= 1:
                raise ValueError("S2 needs a >= 1 and b > 1")
        elif v == "S3":
            if len(p) != 1 or p[0] <= 1:
                raise ValueError("S3 needs b > 1")
        elif v == "S4":
            if len(p) != 2 or p[0] < 2 or p[1] < 1:
                raise ValueError("S4 needs integer b >= 2 and d >= 1")
        else:
            raise ValueError(f"unknown shape variant {v!r}")

    def canonical(self) -> str:
        parts = ",".join(str(x) for x in self.params)
        return f"{self.variant}:{parts}"


def parse_shape(text: str, disc_bound: int) -> ShapeSpec:
    """Parse the CLI grammar S1:<B> | S2:<a>,<b> | S3:<b> | S4:<b>,<d>.

    Real-valued parameters are exact decimals (Fractions), so box bounds
    are reproducible.
    """
    try:
        variant, rest = text.split(":", 1)
        raw = rest.split(",")
    except ValueError as exc:
        raise ValueError(f"bad shape {text!r}") from exc
    variant = variant.upper()
    if variant in ("S1",):
        params = (int(raw[0]),) if len(raw) == 1 else None
    elif variant == "S2":
        params = (int(raw[0]), Fraction(raw[1])) if len(raw) == 2 else None
    elif variant == "S3":
        params = (Fraction(raw[0]),) if len(raw) == 1 else None
    elif variant == "S4":
        params = (int(raw[0]), int(raw[1])) if len(raw) == 2 else None
    else:
        raise ValueError(f"unknown shape variant {variant!r}")
    if params is None:
        raise ValueError(f"wrong parameter count in shape {text!r}")
    return ShapeSpec(variant, params, disc_bound)


def _floor(x) -> int:
    f = Fraction(x)
    return f.numerator // f.denominator


def _f_bounds(s: ShapeSpec) -> list[int] | None:
    """Symmetric per-coefficient bounds B_i for S1..S3 (None for S4)."""
    if s.variant == "S1":
        return [s.params[0]] * 7
    if s.variant == "S2":
        a, b = s.params
        return [_floor(a * Fraction(b) ** (6 - i)) for i in range(7)]
    if s.variant == "S3":
        b = Fraction(s.params[0])
        return [_floor(b ** (4 - abs(i - 3))) for i in range(7)]
    return None


def _s4_annulus(b: int, k: int) -> list[tuple[int, int]]:
    """Disjoint intervals of values v with ceil(log_b(|v|+1)) == k."""
    if k == 0:
        return [(0, 0)]
    lo, hi = b ** (k - 1), b ** k - 1
    return [(-hi, -lo), (lo, hi)]


def shape_boxes(s: ShapeSpec) -> Iterator[tuple[tuple, BoxSpec]]:
    """Yield (h, box) pieces whose disjoint union is the shape.

    Boxes use the monomial-tree variable order (f0 first/innermost).  For
    S4 each feasible budget vector contributes one box per choice of signs
    on its nonzero coordinates, so pieces are pairwise disjoint and their
    union is exactly the shape.
    """
    bounds = _f_bounds(s)
    if bounds is not None:
        for h in ALL_H:
            yield h, BoxSpec.make([(-bounds[i], bounds[i]) for i in range(7)])
        return
    b, d = s.params
    kmax = _s4_budget_max(b, d)
    for h in ALL_H:
        for budgets in _budget_vectors(7, d, kmax):
            for intervals in itertools.product(*(_s4_annulus(b, k) for k in budgets)):
                yield h, BoxSpec.make(intervals)


def _s4_budget_max(b: int, d: int) -> int:
    return d  # a single coordinate may consume the whole budget


def _budget_vectors(n: int, total: int, kmax: int):
    """All vectors in Z_{>=0}^n with sum <= total, lexicographic order."""
    vec = [0] * n

    def rec(i: int, left: int):
        if i == n:
            yield tuple(vec)
            return
        for k in range(0, min(left, kmax) + 1):
            vec[i] = k
            yield from rec(i + 1, left - k)
        vec[i] = 0

    yield from rec(0, total)


def cardinality(s: ShapeSpec) -> int:
    """Exact number of (f, h) pairs in the shape."""
    bounds = _f_bounds(s)
    if bounds is not None:
        total = 1
        for B in bounds:
            total *= 2 * B + 1
        return 16 * total
    b, d = s.params
    # weight[k] = number of values with per-coordinate budget exactly k
    weight = [1] + [2 * (b ** k - b ** (k - 1)) for k in range(1, d + 1)]
    acc = {0: 1}
    for _ in range(7):
        nxt: dict[int, int] = {}
        for used, ways in acc.items():
            for k, w in enumerate(weight):
                if used + k <= d:
                    nxt[used + k] = nxt.get(used + k, 0) + ways * w
        acc = nxt
    return 16 * sum(acc.values())


# -- discriminant polynomial per h ------------------------------------------

_delta_poly_cache: dict[tuple, Poly] = {}


def delta_poly_for_h(h: Sequence[int]) -> Poly:
    """Delta(f, h) = disc6(4f + h^2)/2^12 as a polynomial in f0..f6."""
    h = tuple(int(c) for c in h)
    got = _delta_poly_cache.get(h)
    if got is not None:
        return got
    h2 = poly_mul(h, h)
    ring = PolyRing(7, bits=6)
    base = [ring.from_terms([(tuple(1 if j == i else 0 for j in range(7)), 4),
                             ((0,) * 7, h2[i])]) for i in range(7)]
    out = ring.zero()
    for exps, c in build_disc6().iter_terms():
        t = ring.const(c)
        for i, e in enumerate(exps):
            if e:
                t = t.mul(base[i].pow(e))
        out = out.add(t)
    terms = {}
    for key, c in out.terms.items():
        q, r = divmod(c, 4096)
        if r:
            raise AssertionError("disc6(4f+h^2) must have content 2^12")
        terms[key] = q
    poly = Poly(ring, terms)
    _delta_poly_cache[h] = poly
    return poly


def build_search_tree(h: Sequence[int]) -> MonomialTree:
    return build_tree(delta_poly_for_h(h), VAR_ORDER)


def exact_delta(f: Sequence[int], h: Sequence[int], h2=None) -> int:
    if h2 is None:
        h2 = poly_mul(h, h)
    s = [4 * f[i] + h2[i] for i in range(7)]
    return disc6_eval(s) // 4096


# -- work units and checkpointing -------------------------------------------

@dataclass(frozen=True)
class WorkUnit:
    seq: int
    h_index: int
    h: tuple
    intervals: tuple  # 7 (lo, hi) pairs, f0 first

    def box(self) -> BoxSpec:
        return BoxSpec(self.intervals)


def partition(s: ShapeSpec, target_units: int | None = None,
              max_unit_points: int = 20_000_000) -> list[WorkUnit]:
    """Cover the shape with disjoint work units.

    Large boxes are split along the two outermost coefficient ranges (f6,
    then f5) into pieces of at most max_unit_points points; target_units,
    when given, lowers max_unit_points until at least that many units
    exist (boxes are never split below single (f6, f5) values).
    """
    if target_units is not None and target_units < 1:
        raise ValueError("target_units must be >= 1")
    pieces = list(shape_boxes(s))
    if target_units is not None:
        total = cardinality(s)
        max_unit_points = max(1, min(max_unit_points, total // target_units))
    units: list[WorkUnit] = []
    h_index = {h: i for i, h in enumerate(ALL_H)}
    for h, box in pieces:
        iv = list(box.intervals)
        for sub6 in _split_interval(iv[6], _axis_splits(box, 6, max_unit_points)):
            card6 = box.cardinality() // (iv[6][1] - iv[6][0] + 1) * (sub6[1] - sub6[0] + 1)
            for sub5 in _split_interval(iv[5], _splits_needed(card6, iv[5], max_unit_points)):
                units.append(WorkUnit(len(units), h_index[h], h,
                                      tuple(iv[:5] + [sub5, sub6])))
    return units


def _axis_splits(box: BoxSpec, axis: int, max_unit_points: int) -> int:
    card = box.cardinality()
    lo, hi = box.intervals[axis]
    length = hi - lo + 1
    want = -(-card // max_unit_points)  # ceil
    return min(length, want)


def _splits_needed(card: int, interval, max_unit_points: int) -> int:
    lo, hi = interval
    length = hi - lo + 1
    want = -(-card // max_unit_points)
    return min(length, want)


def _split_interval(interval, parts: int):
    lo, hi = interval
    length = hi - lo + 1
    parts = max(1, min(parts, length))
    base, extra = divmod(length, parts)
    start = lo
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        yield (start, start + size - 1)
        start += size


def shape_fingerprint(s: ShapeSpec, units: list[WorkUnit]) -> str:
    payload = f"{s.canonical()};D={s.disc_bound};units={len(units)}"
    return hashlib.sha256(payload.encode()).hexdigest()


class Checkpoint:
    """Resumable search state: which units finished and what they found."""

    VERSION = 1

    def __init__(self, fingerprint: str, total_units: int):
        self.fingerprint = fingerprint
        self.total_units = total_units
        self.done: set[int] = set()
        self.hits: dict[int, list] = {}

    def record(self, seq: int, hits: list) -> None:
        self.done.add(seq)
        self.hits[seq] = hits

    def save(self, path: str) -> None:
        state = {
            "format": "g2scan-checkpoint",
            "version": self.VERSION,
            "fingerprint": self.fingerprint,
            "total_units": self.total_units,
            "done": sorted(self.done),
            "hits": [[seq, self.hits[seq]] for seq in sorted(self.hits)],
        }
        tmp = f"{path}.tmp"
        with open(tmp, "w") as fh:
            json.dump(state, fh, separators=(",", ":"))
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str) -> "Checkpoint":
        try:
            with open(path) as fh:
                state = json.load(fh)
        except (json.JSONDecodeError, UnicodeDecodeError) as exc:
            raise CheckpointFormatError(f"corrupt checkpoint {path}: {exc}") from exc
        if not isinstance(state, dict) or state.get("format") != "g2scan-checkpoint":
            raise CheckpointFormatError(f"{path} is not a g2scan checkpoint")
        if state.get("version") != cls.VERSION:
            raise CheckpointFormatError(
                f"unsupported checkpoint version {state.get('version')!r}")
        cp = cls(state["fingerprint"], state["total_units"])
        cp.done = set(state["done"])
        cp.hits = {seq: hits for seq, hits in state["hits"]}
        return cp


# -- the scan kernel ---------------------------------------------------------

_worker_trees: dict[int, MonomialTree] = {}


def scan_unit(unit: WorkUnit, disc_bound: int) -> list:
    """All (f, Delta) in the unit with 0 < |Delta| <= disc_bound, in
    lexicographic order of f (f6 slowest)."""
    if disc_bound == 0:
        return []
    tree = _worker_trees.get(unit.h_index)
    if tree is None:
        tree = build_search_tree(unit.h)
        _worker_trees[unit.h_index] = tree
    scanner = TreeScanner(tree)
    window = (disc_bound, (1 << 64) - disc_bound)
    flagged: list[tuple] = []

    def emit(outer, parts, tile, mask):
        idx = [p[0] for p in parts]
        for ix in np.argwhere(mask):
            pt = tuple(int(idx[a][ix[a]]) for a in range(len(idx))) + outer
            flagged.append(pt)

    scanner.scan(unit.box(), window, emit, skip_zero=True)
    flagged.sort(key=lambda pt: pt[::-1])
    h2 = poly_mul(unit.h, unit.h)
    out = []
    for pt in flagged:
        delta = exact_delta(pt, unit.h, h2)
        if delta != 0 and abs(delta) <= disc_bound:
            out.append([list(pt), delta])
    return out


def _pool_scan(args):
    unit, disc_bound = args
    return unit.seq, scan_unit(unit, disc_bound)


def run_search(s: ShapeSpec, workers: int = 1, checkpoint_path: str | None = None,
               out_path: str | None = None, *, units: list[WorkUnit] | None = None,
               stop_after_units: int | None = None, checkpoint_every: int = 64,
               progress=None) -> list[tuple[WeierstrassModel, int]]:
    """Run the search; returns every candidate (model, Delta) exactly once.

    Candidates are ordered by work-unit sequence and lexicographically
    within a unit, so output is deterministic regardless of worker count.
    stop_after_units aborts after that many newly completed units have
    been checkpointed (used by the kill/restart tests).
    """
    if units is None:
        units = partition(s)
    fingerprint = shape_fingerprint(s, units)

    cp = None
    if checkpoint_path and os.path.exists(checkpoint_path):
        cp = Checkpoint.load(checkpoint_path)
        if cp.fingerprint != fingerprint:
            raise CheckpointFormatError(
                "checkpoint does not match this shape/disc-bound/partition")
    if cp is None:
        cp = Checkpoint(fingerprint, len(units))

    pending = [u for u in units if u.seq not in cp.done]
    completed_now = 0
    if pending:
        jobs = [(u, s.disc_bound) for u in pending]
        if workers > 1:
            import multiprocessing as mp

            with mp.get_context("fork").Pool(workers) as pool:
                for seq, hits in pool.imap(_pool_scan, jobs, chunksize=1):
                    cp.record(seq, hits)
                    completed_now += 1
                    if progress:
                        progress(len(cp.done), len(units))
                    if checkpoint_path and completed_now % checkpoint_every == 0:
                        cp.save(checkpoint_path)
                    if stop_after_units and completed_now >= stop_after_units:
                        pool.terminate()
                        break
        else:
            for job in jobs:
                seq, hits = _pool_scan(job)
                cp.record(seq, hits)
                completed_now += 1
                if progress:
                    progress(len(cp.done), len(units))
                if checkpoint_path and completed_now % checkpoint_every == 0:
                    cp.save(checkpoint_path)
                if stop_after_units and completed_now >= stop_after_units:
                    break
        if checkpoint_path:
            cp.save(checkpoint_path)

    if len(cp.done) < len(units):
        raise InterruptedError(
            f"search stopped with {len(cp.done)}/{len(units)} units complete")

    results = []
    for u in units:
        for f, delta in cp.hits.get(u.seq, []):
            results.append((WeierstrassModel(tuple(f), u.h), delta))
    if out_path:
        write_candidates(out_path, results)
    return results


def write_candidates(path: str, results) -> None:
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        for m, delta in results:
            fh.write(json.dumps({"model": [list(m.f), list(m.h)], "disc": delta},
                                separators=(",", ":")) + "\n")
    os.replace(tmp, path)
