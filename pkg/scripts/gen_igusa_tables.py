#!/usr/bin/env python3
"""Regenerate src/g2scan/_igusa_tables.py.

The three even Igusa-Clebsch invariants are defined by symmetric sums of
squared root differences of the sextic.  This script expands those sums
symbolically over the universal sextic, rewrites them as polynomials in
the coefficients a0..a6 (weight w picks up a6^w), checks the result
against a floating-point evaluation from numerically computed roots, and
writes the term tables used at runtime.
"""

import itertools
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from g2scan.polyring import Poly, PolyRing  # noqa: E402

R6 = PolyRing(6, bits=6)   # root variables
RA = PolyRing(7, bits=6)   # coefficient variables a0..a6

I2_PATTERN = [(0, 1), (2, 3), (4, 5)]
I4_PATTERN = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
I6_PATTERN = I4_PATTERN + [(0, 3), (1, 4), (2, 5)]


def distinct_edge_sets(pattern):
    seen = set()
    for perm in itertools.permutations(range(6)):
        edges = frozenset(frozenset((perm[a], perm[b])) for a, b in pattern)
        seen.add(edges)
    return sorted(tuple(sorted(tuple(sorted(e)) for e in es)) for es in seen)


def expand_sum(edge_sets):
    total = R6.zero()
    for edges in edge_sets:
        prod = R6.const(1)
        for a, b in edges:
            diff = R6.var(a).sub(R6.var(b))
            prod = prod.mul(diff.mul(diff))
        total = total.add(prod)
    return total


def elementary_symmetric(k):
    out = R6.zero()
    for combo in itertools.combinations(range(6), k):
        out = out.add(R6.from_terms([(tuple(1 if i in combo else 0 for i in range(6)), 1)]))
    return out


E = [None] + [elementary_symmetric(k) for k in range(1, 7)]


def to_elementary(p):
    """Rewrite a symmetric polynomial as {e-exponent tuple: coeff}."""
    result = {}
    work = p
    while work:
        exps, coeff = max(work.iter_terms())
        lam = list(exps)
        assert all(lam[i] >= lam[i + 1] for i in range(5)), f"not symmetric at {exps}"
        emono = tuple(lam[i] - (lam[i + 1] if i < 5 else 0) for i in range(6))
        prod = R6.const(coeff)
        for k, m in enumerate(emono, start=1):
            if m:
                prod = prod.mul(E[k].pow(m))
        work = work.sub(prod)
        result[emono] = coeff
    return result


def to_coefficients(emonos, weight):
    """a6^weight * P(e_k -> (-1)^k a_{6-k}/a6) as a polynomial in a0..a6."""
    terms = []
    for emono, coeff in emonos.items():
        wdeg = sum(k * m for k, m in enumerate(emono, start=1))
        assert wdeg % 2 == 0, "odd isobaric weight cannot appear"
        total_e = sum(emono)
        assert total_e <= weight, f"a6 exponent would be negative: {emono}"
        exps = [0] * 7
        for k, m in enumerate(emono, start=1):
            exps[6 - k] += m
        exps[6] += weight - total_e
        terms.append((tuple(exps), coeff))
    return RA.from_terms(terms)


def float_oracle(coeffs, edge_sets, weight):
    roots = np.roots(coeffs[::-1])
    total = 0.0 + 0.0j
    for edges in edge_sets:
        prod = 1.0 + 0.0j
        for a, b in edges:
            d = roots[a] - roots[b]
            prod *= d * d
        total += prod
    return (coeffs[6] ** weight) * total


def validate(table, edge_sets, weight, trials=400, seed=0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        while True:
            c = [int(v) for v in rng.integers(-9, 10, size=7)]
            if c[6] != 0:
                break
        exact = table.evaluate(c)
        approx = float_oracle(c, edge_sets, weight)
        if exact == 0:
            err = abs(approx)
            ok = err < 1e-3
        else:
            err = abs(approx - exact) / abs(exact)
            ok = err < 1e-8
        worst = max(worst, err)
        if not ok:
            raise SystemExit(f"validation failed: {c} exact={exact} approx={approx}")
    return worst


def main():
    tables = {}
    for name, pattern, weight in [("I2", I2_PATTERN, 2),
                                  ("I4", I4_PATTERN, 4),
                                  ("I6", I6_PATTERN, 6)]:
        edge_sets = distinct_edge_sets(pattern)
        print(f"{name}: {len(edge_sets)} distinct expressions")
        sym = expand_sum(edge_sets)
        emonos = to_elementary(sym)
        table = to_coefficients(emonos, weight)
        worst = validate(table, edge_sets, weight)
        print(f"{name}: {len(table)} coefficient terms, worst oracle error {worst:.2e}")
        tables[name] = table

    out = Path(__file__).resolve().parent.parent / "src" / "g2scan" / "_igusa_tables.py"
    with out.open("w") as fh:
        fh.write('"""Generated by scripts/gen_igusa_tables.py; do not edit."""\n\n')
        for name in ("I2", "I4", "I6"):
            terms = sorted(tables[name].iter_terms())
            fh.write(f"{name}_TERMS = (\n")
            for exps, c in terms:
                fh.write(f"    ({exps!r}, {c}),\n")
            fh.write(")\n\n")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
