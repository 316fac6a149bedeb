"""Universal discriminant of a degree-6 polynomial.

disc6 is the polynomial in the generic coefficients a0..a6 obtained from
the resultant of the generic sextic with its derivative, divided by the
leading coefficient and signed by (-1)^(6*5/2).  It is built symbolically
once and memoized; specializing it at the coefficients of any concrete
polynomial of degree <= 6 gives that polynomial's degree-6 discriminant.
"""

from __future__ import annotations

from .polyring import Poly, PolyRing, sylvester_resultant_symbolic

#: ring of the seven generic coefficients a0..a6
RING = PolyRing(7, bits=6)

_disc6: Poly | None = None


def build_disc6() -> Poly:
    """Return disc6 as an exact 246-term polynomial in a0..a6 (memoized)."""
    global _disc6
    if _disc6 is not None:
        return _disc6

    n = 11  # Sylvester matrix size for deg 6 and deg 5
    zero = RING.zero()
    rows: list[list[Poly]] = []
    # 5 rows of sextic coefficients a6..a0, shifted
    for r in range(5):
        row = [zero] * n
        for j in range(7):
            row[r + j] = RING.var(6 - j)
        rows.append(row)
    # 6 rows of derivative coefficients 6*a6 .. 1*a1, shifted
    for r in range(6):
        row = [zero] * n
        for j in range(6):
            row[r + j] = RING.var(6 - j, coeff=6 - j)
        rows.append(row)

    res = sylvester_resultant_symbolic(RING, rows)
    # disc6 = (1/a6) * (-1)^(6*5/2) * Res(g, g') = -Res/a6
    _disc6 = res.divexact_var(6).neg()
    return _disc6


_fast_eval = None


def disc6_eval(coeffs) -> int:
    """disc6 at (c0..c6); exact for ints, works for Fractions too."""
    global _fast_eval
    if _fast_eval is None:
        _fast_eval = _compile_eval(build_disc6())
    return _fast_eval(*coeffs)


def _compile_eval(poly):
    """Generate a flat arithmetic function for the 246-term evaluation;
    roughly 10x faster than walking the term dictionary per call."""
    need: dict[tuple[int, int], str] = {}
    terms = sorted(poly.iter_terms())
    for exps, _ in terms:
        for i, e in enumerate(exps):
            if e >= 2:
                need[(i, e)] = f"c{i}_{e}"
    lines = ["def _disc6_fast(c0, c1, c2, c3, c4, c5, c6):"]
    for (i, e), name in sorted(need.items()):
        prev = f"c{i}" if e == 2 else f"c{i}_{e-1}"
        lines.append(f"    {name} = {prev} * c{i}")
    parts = []
    for exps, c in terms:
        factors = [str(c)]
        for i, e in enumerate(exps):
            if e == 1:
                factors.append(f"c{i}")
            elif e >= 2:
                factors.append(f"c{i}_{e}")
        parts.append("*".join(factors))
    lines.append("    return (" + "\n        + ".join(parts) + ")")
    ns: dict = {}
    exec("\n".join(lines), ns)  # noqa: S102 - generated from our own term list
    return ns["_disc6_fast"]


def disc6_terms() -> list[tuple[tuple[int, ...], int]]:
    """Term list [(exponent vector over a0..a6, coefficient)]."""
    return list(build_disc6().iter_terms())


_content_cache: int | None = None


def delta_universal_content() -> int:
    """Content of disc6(4 f_univ + h_univ^2) in ZZ[f0..f6, h0..h3].

    This is what makes Delta(f, h) = 2^-12 disc6(4f + h^2) integral for
    every integral model; the expansion has 28685 terms and the content
    is 2^12.
    """
    global _content_cache
    if _content_cache is not None:
        return _content_cache
    import math

    ring = PolyRing(11, bits=6)
    hvar = [ring.var(7 + i) for i in range(4)]
    h2 = [ring.zero() for _ in range(7)]
    for i in range(4):
        for j in range(4):
            h2[i + j] = h2[i + j].add(hvar[i].mul(hvar[j]))
    base = [ring.var(i).scale(4).add(h2[i]) for i in range(7)]
    pows = [[ring.const(1)] for _ in range(7)]
    for i in range(7):
        for _ in range(6):
            pows[i].append(pows[i][-1].mul(base[i]))
    total = ring.zero()
    for exps, c in build_disc6().iter_terms():
        t = ring.const(c)
        for i, e in enumerate(exps):
            if e:
                t = t.mul(pows[i][e])
        total = total.add(t)
    g = 0
    for c in total.terms.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    _content_cache = g
    return g
