"""Curve records, isomorphism-class deduplication, and the end-to-end
pipeline (search -> dedup -> invariants -> L-data -> optional conductor).

Candidates are grouped by the exact geometric class (G2 triple) together
with |disc|, refined by small-prime traces, and merged only when an
explicit Q-isomorphism is found by a bounded change-of-variables search;
groups whose members resist merging stay separate and are flagged.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .conductor import resolve_two_part
from .igusa import g2_invariants, igusa, igusa_clebsch
from .lfun import good_lfactor, isogeny_hash, point_count, primes_upto
from .model import (ModelTransform, WeierstrassModel, discriminant,
                    format_model, parse_model, transform)
from .search import ShapeSpec, run_search

FORMAT_HEADER = {"g2scan_format": 1}
FINGERPRINT_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23)
TRANSFORM_ENTRY_BOUND = 8
MINIMALITY_CHECKED_ABOVE_P = 5


@dataclass
class CurveClass:
    """One presumed Q-isomorphism class of curves found by the search."""

    representative: WeierstrassModel
    disc: int
    g2: tuple
    members: list = field(default_factory=list)
    unverified_merge_candidate: bool = False

    @property
    def abs_disc(self) -> int:
        return abs(self.disc)

    def class_id(self) -> str:
        payload = f"{[str(v) for v in self.g2]};{self.abs_disc};{format_model(self.representative)}"
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class CurveRecord:
    model: WeierstrassModel
    disc: int
    members: int = 1
    igusa_clebsch: tuple | None = None
    igusa: tuple | None = None
    g2: tuple | None = None
    good_lfactors: list | None = None
    hash: int | None = None
    partial_hash: bool = False
    hash_skipped: tuple = ()
    conductor: dict | None = None
    g2_class_id: str | None = None
    unverified_merge_candidate: bool = False
    minimality_checked_above_p: int = MINIMALITY_CHECKED_ABOVE_P


# -- Q-isomorphism search ----------------------------------------------------

@lru_cache(maxsize=1)
def _transform_quadruples() -> tuple:
    """Primitive (a,b,c,d) with entries bounded, det nonzero and |det| a
    perfect square (required when both models have the same |disc|),
    ordered by max entry so cheap transforms are tried first."""
    squares = {k * k for k in range(1, 12)}
    quads = []
    rng = range(-TRANSFORM_ENTRY_BOUND, TRANSFORM_ENTRY_BOUND + 1)
    for a in rng:
        for b in rng:
            for c in rng:
                for d in rng:
                    det = a * d - b * c
                    if det == 0 or abs(det) not in squares:
                        continue
                    if math.gcd(math.gcd(abs(a), abs(b)),
                                math.gcd(abs(c), abs(d))) != 1:
                        continue
                    quads.append((max(abs(a), abs(b), abs(c), abs(d)), (a, b, c, d)))
    quads.sort()
    return tuple(q for _, q in quads)


def _float_solve4(mat, rhs):
    """Solve a 4x4 float system in place; None when near-singular."""
    a = [list(mat[i]) + [rhs[i]] for i in range(4)]
    for col in range(4):
        piv = max(range(col, 4), key=lambda r: abs(a[r][col]))
        if abs(a[piv][col]) < 1e-12:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1.0 / a[col][col]
        row = a[col] = [v * inv for v in a[col]]
        for r in range(4):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], row)]
    return [a[i][4] for i in range(4)]


_FLOAT_SAMPLES = (0.6180339887498949, -1.4142135623730951)


def _float_match(m1, m2, quad, e: float) -> bool:
    """Cheap necessary test for transform(m1,(quad,e,j)) == m2: solve the
    h-lift system and check both transformation identities in floats."""
    a, b, c, d = quad
    det = a * d - b * c
    det3 = float(det) ** 3
    cols = _lift_basis_float(quad)
    lifted_h1 = [sum(cols[k][i] * m1.h[k] for k in range(4)) for i in range(4)]
    rhs = [(e * lifted_h1[i] - det3 * m2.h[i]) * 0.5 for i in range(4)]
    j = _float_solve4([[cols[k][i] for k in range(4)] for i in range(4)], rhs)
    if j is None:
        return False
    for t in _FLOAT_SAMPLES:
        u = a - c * t
        if abs(u) < 1e-9:
            continue
        sig = (d * t - b) / u
        h1s = _horner(m1.h, sig)
        js = _horner(j, sig)
        f1s = _horner(m1.f, sig)
        scale3 = u ** 3 / det3
        h2t = _horner(m2.h, t)
        if not _close((e * h1s - 2 * js) * scale3, h2t):
            return False
        f2t = _horner(m2.f, t)
        rhs_f = (e * e * f1s + e * h1s * js - js * js) * (u ** 6 / det3 ** 2)
        if not _close(rhs_f, f2t):
            return False
    return True


@lru_cache(maxsize=20000)
def _lift_basis_float(quad):
    a, b, c, d = quad
    cols = []
    for k in range(4):
        base = [1.0]
        for _ in range(k):
            base = _pmulf(base, [-float(b), float(d)])
        for _ in range(3 - k):
            base = _pmulf(base, [float(a), -float(c)])
        cols.append(tuple(base) + (0.0,) * (4 - len(base)))
    return tuple(cols)


def _pmulf(p, q):
    out = [0.0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for jj, y in enumerate(q):
                if y:
                    out[i + jj] += x * y
    return out


def _horner(coeffs, x: float) -> float:
    acc = 0.0
    for cc in reversed(coeffs):
        acc = acc * x + float(cc)
    return acc


def _close(x: float, y: float, tol: float = 1e-6) -> bool:
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def _iroot(n: int, k: int) -> int | None:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n in (0, 1):
        return n
    r = int(round(n ** (1.0 / k)))
    for cand in (r - 1, r, r + 1, r + 2):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def _rational_root(q: Fraction, k: int) -> Fraction | None:
    num = _iroot(q.numerator, k)
    if num is None:
        return None
    den = _iroot(q.denominator, k)
    if den is None:
        return None
    return Fraction(num, den)


def _lift_basis(quad):
    """Columns of the degree-3 substitution lift: coefficient vectors of
    (d x - b)^k (a - c x)^(3-k), plus det^3."""
    a, b, c, d = quad
    det3 = Fraction(a * d - b * c) ** 3
    cols = []
    for k in range(4):
        base = [Fraction(1)]
        for _ in range(k):
            base = _pmul(base, [Fraction(-b), Fraction(d)])
        for _ in range(3 - k):
            base = _pmul(base, [Fraction(a), Fraction(-c)])
        cols.append(base + [Fraction(0)] * (4 - len(base)))
    return cols, det3


def _pmul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                if y:
                    out[i + j] += x * y
    return out


def _solve_linear4(cols, rhs) -> list | None:
    a = [[cols[j][i] for j in range(4)] + [rhs[i]] for i in range(4)]
    for col in range(4):
        piv = next((r for r in range(col, 4) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(4):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[i][4] for i in range(4)]


def find_isomorphism(m1: WeierstrassModel, m2: WeierstrassModel,
                     d1: int | None = None, d2: int | None = None):
    """Bounded search for a transform with transform(m1, t) == m2."""
    if d1 is None:
        d1 = discriminant(m1)
    if d2 is None:
        d2 = discriminant(m2)
    ratio = Fraction(d2, d1)
    if ratio <= 0:
        return None  # opposite discriminant signs are never Q-isomorphic
    tenth = _rational_root(ratio, 10)
    if tenth is None:
        return None  # disc ratio admits no scaling factor e at any det
    e_by_absdet: dict[int, Fraction | None] = {}
    for quad in _transform_quadruples():
        a, b, c, d = quad
        absdet = abs(a * d - b * c)
        e_pos = e_by_absdet.get(absdet, 0)
        if e_pos == 0:
            e_pos = e_by_absdet[absdet] = _rational_root(tenth * absdet ** 3, 2)
        if e_pos is None:
            continue
        for e in (e_pos, -e_pos):
            if not _float_match(m1, m2, quad, float(e)):
                continue
            cols, det3 = _lift_basis(quad)
            lifted_h1 = [sum(cols[k][i] * m1.h[k] for k in range(4))
                         for i in range(4)]
            # h2 det^3 = (e h1 - 2 j)(sigma) (a - c x)^3  =>  solve for j
            rhs = [(e * lifted_h1[i] - det3 * m2.h[i]) / 2 for i in range(4)]
            j = _solve_linear4(cols, rhs)
            if j is None:
                continue
            t = ModelTransform(a, b, c, d, e, tuple(j))
            if transform(m1, t) == m2:
                return t
    return None


# -- dedup -------------------------------------------------------------------

def trace_fingerprint(m: WeierstrassModel, disc: int) -> tuple:
    out = [1 if disc > 0 else -1]
    for p in FINGERPRINT_PRIMES:
        if disc % p == 0:
            out.append(None)
        else:
            out.append(p + 1 - point_count(m, p, 1))
    return tuple(out)


def _class_key(item):
    model, disc = item
    g2 = g2_invariants(igusa(igusa_clebsch(model))).tuple()
    return (g2, abs(disc), trace_fingerprint(model, disc))


def _merge_bucket(args) -> list[CurveClass]:
    """Union models of one (G2, |disc|, traces) bucket into classes by
    explicit transform search."""
    key, items, max_members_tried = args
    g2 = key[0]
    classes: list[CurveClass] = []
    for model, disc in items:
        joined = False
        for cls in classes:
            for member in cls.members[:max_members_tried]:
                if find_isomorphism(member, model, cls.disc, disc) is not None:
                    cls.members.append(model)
                    if (model.f, model.h) < (cls.representative.f, cls.representative.h):
                        cls.representative = model
                        cls.disc = disc
                    joined = True
                    break
            if joined:
                break
        if not joined:
            classes.append(CurveClass(model, disc, g2, [model]))
    if len(classes) > 1:
        for cls in classes:
            cls.unverified_merge_candidate = True
    return classes


def dedup(candidates, max_members_tried: int = 5, workers: int = 1) -> list[CurveClass]:
    """Group candidate (model, disc) pairs into presumed Q-isomorphism
    classes.

    Grouping key: exact G2 triple and |disc| (never merged across
    different keys), refined by small-prime traces; within a key, models
    join an existing class only when an explicit transform is found.
    """
    items = sorted(candidates, key=lambda t: (t[0].f, t[0].h))
    if workers > 1 and len(items) > 64:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(workers) as pool:
            keys = pool.map(_class_key, items, chunksize=512)
    else:
        keys = [_class_key(it) for it in items]

    groups: dict[tuple, list] = {}
    for key, item in zip(keys, items):
        groups.setdefault(key, []).append(item)
    jobs = [(key, members, max_members_tried) for key, members in groups.items()]

    if workers > 1 and len(jobs) > 64:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(workers) as pool:
            merged = pool.map(_merge_bucket, jobs, chunksize=64)
    else:
        merged = [_merge_bucket(j) for j in jobs]

    out = [cls for bucket in merged for cls in bucket]
    out.sort(key=lambda c: (c.abs_disc, c.g2, c.representative.f, c.representative.h))
    return out


# -- record assembly and analyses --------------------------------------------

def class_record(cls: CurveClass, analyses=("invariants",),
                 lfactor_bound: int = 64) -> CurveRecord:
    rec = CurveRecord(model=cls.representative, disc=cls.disc,
                      members=len(cls.members),
                      unverified_merge_candidate=cls.unverified_merge_candidate,
                      g2_class_id=cls.class_id())
    if "invariants" in analyses:
        ic = igusa_clebsch(cls.representative)
        j = igusa(ic)
        rec.igusa_clebsch = ic.tuple()
        rec.igusa = j.tuple()
        rec.g2 = g2_invariants(j).tuple()
    if "lfactors" in analyses:
        rec.good_lfactors = []
        for p in primes_upto(lfactor_bound):
            if cls.disc % p:
                rec.good_lfactors.append((p, good_lfactor(cls.representative, p).coeffs))
    if "hash" in analyses:
        h = isogeny_hash(cls.representative)
        rec.hash = h.value
        rec.partial_hash = h.partial
        rec.hash_skipped = h.skipped_primes
    if "conductor" in analyses:
        try:
            res = resolve_two_part(cls.representative, delta=cls.disc)
        except ValueError as exc:
            rec.conductor = {"status": f"unavailable: {exc}"}
        else:
            if res.resolved:
                v = res.resolved
                rec.conductor = {"status": "resolved", "n": v.conductor,
                                 "w": v.candidate.w, "l2": list(v.candidate.l2),
                                 "radius": v.enclosure.rad_float()}
            else:
                rec.conductor = {"status": res.status}
    return rec


def _analyze_one(args):
    cls, analyses, lfactor_bound = args
    return class_record(cls, analyses, lfactor_bound)


def run_pipeline(shape: ShapeSpec, workers: int = 1, analyses=("invariants",),
                 out_path: str | None = None, checkpoint_path: str | None = None,
                 lfactor_bound: int = 64) -> list[CurveRecord]:
    """search -> dedup -> per-class analyses -> records (optionally saved)."""
    candidates = run_search(shape, workers=workers, checkpoint_path=checkpoint_path)
    classes = dedup(candidates)
    jobs = [(cls, tuple(analyses), lfactor_bound) for cls in classes]
    if workers > 1 and len(jobs) > 8:
        import multiprocessing as mp

        with mp.get_context("fork").Pool(workers) as pool:
            records = pool.map(_analyze_one, jobs, chunksize=16)
    else:
        records = [_analyze_one(j) for j in jobs]
    if out_path:
        export_records(records, out_path, "jsonl")
    return records


# -- serialization -----------------------------------------------------------

def _frac_str(v) -> str:
    return str(Fraction(v))


def record_to_dict(rec: CurveRecord) -> dict:
    out = {
        "model": [list(rec.model.f), list(rec.model.h)],
        "disc": rec.disc,
        "members": rec.members,
    }
    if rec.igusa_clebsch is not None:
        out["igusa_clebsch"] = [_frac_str(v) for v in rec.igusa_clebsch]
    if rec.igusa is not None:
        out["igusa"] = [_frac_str(v) for v in rec.igusa]
    if rec.g2 is not None:
        out["g2"] = [_frac_str(v) for v in rec.g2]
    if rec.good_lfactors is not None:
        out["good_lfactors"] = [[p, list(c)] for p, c in rec.good_lfactors]
    if rec.hash is not None:
        out["hash"] = rec.hash
    if rec.conductor is not None:
        out["conductor"] = rec.conductor
    out["flags"] = {
        "minimality_checked_above_p": rec.minimality_checked_above_p,
        "partial_hash": rec.partial_hash,
        "hash_skipped": list(rec.hash_skipped),
        "g2_class_id": rec.g2_class_id,
        "unverified_merge_candidate": rec.unverified_merge_candidate,
    }
    return out


def record_from_dict(d: dict) -> CurveRecord:
    model = WeierstrassModel(tuple(d["model"][0]), tuple(d["model"][1]))
    flags = d.get("flags", {})
    rec = CurveRecord(
        model=model, disc=d["disc"], members=d.get("members", 1),
        g2_class_id=flags.get("g2_class_id"),
        partial_hash=flags.get("partial_hash", False),
        hash_skipped=tuple(flags.get("hash_skipped", ())),
        unverified_merge_candidate=flags.get("unverified_merge_candidate", False),
        minimality_checked_above_p=flags.get("minimality_checked_above_p",
                                             MINIMALITY_CHECKED_ABOVE_P),
    )
    if "igusa_clebsch" in d:
        rec.igusa_clebsch = tuple(Fraction(v) for v in d["igusa_clebsch"])
    if "igusa" in d:
        rec.igusa = tuple(Fraction(v) for v in d["igusa"])
    if "g2" in d:
        rec.g2 = tuple(Fraction(v) for v in d["g2"])
    if "good_lfactors" in d:
        rec.good_lfactors = [(p, tuple(c)) for p, c in d["good_lfactors"]]
    if "hash" in d:
        rec.hash = d["hash"]
    if "conductor" in d:
        rec.conductor = d["conductor"]
    return rec


CSV_COLUMNS = ["model", "disc", "members", "igusa_clebsch", "igusa", "g2",
               "good_lfactors", "hash", "conductor", "flags"]


def export_records(records, path: str, fmt: str = "jsonl") -> None:
    text = export_text(records, fmt)
    with open(path, "w", newline="") as fh:
        fh.write(text)


def export_text(records, fmt: str = "jsonl") -> str:
    if fmt == "jsonl":
        lines = [json.dumps(FORMAT_HEADER, separators=(",", ":"))]
        for rec in records:
            lines.append(json.dumps(record_to_dict(rec), separators=(",", ":")))
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["g2scan_format", 1])
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            d = record_to_dict(rec)
            writer.writerow([json.dumps(d.get(col), separators=(",", ":"))
                             for col in CSV_COLUMNS])
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")


def import_records(path: str) -> list[CurveRecord]:
    with open(path, newline="") as fh:
        first = fh.readline()
        if first.startswith("g2scan_format"):
            return _import_csv(fh, first)
        try:
            header = json.loads(first)
        except json.JSONDecodeError as exc:
            raise ValueError(f"line 1: missing or corrupt header: {exc}") from exc
        if header != FORMAT_HEADER:
            raise ValueError(f"line 1: unsupported format header {header!r}")
        records = []
        for ln, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            try:
                records.append(record_from_dict(json.loads(line)))
            except (json.JSONDecodeError, KeyError, IndexError, ValueError) as exc:
                raise ValueError(f"line {ln}: malformed record: {exc}") from exc
        return records


def _import_csv(fh, first_line: str) -> list[CurveRecord]:
    header_row = next(csv.reader([first_line]))
    if header_row[:2] != ["g2scan_format", "1"]:
        raise ValueError("line 1: unsupported csv header")
    reader = csv.reader(fh)
    try:
        cols = next(reader)
    except StopIteration as exc:
        raise ValueError("line 2: missing column row") from exc
    if cols != CSV_COLUMNS:
        raise ValueError("line 2: unexpected column layout")
    records = []
    for ln, row in enumerate(reader, start=3):
        if not row:
            continue
        try:
            d = {col: json.loads(cell) for col, cell in zip(cols, row)
                 if cell not in ("", "null")}
            records.append(record_from_dict(d))
        except (json.JSONDecodeError, KeyError, IndexError, ValueError) as exc:
            raise ValueError(f"line {ln}: malformed record: {exc}") from exc
    return records
