"""Analytic resolution of the conductor's 2-part.

For each candidate (ord_2(N) = m, root number w, Euler factor L2) the
functional-equation defect S(2^(1/4) sqrt(N)) - w S(2^(-1/4) sqrt(N)) is
enclosed in a ball built from truncated Bessel sums over odd Dirichlet
coefficients plus the printed truncation error bound.  A candidate is
refuted when the ball excludes zero; with exact arithmetic on true
Hasse-Weil data exactly one candidate should remain.

Both evaluation arguments lie on the grid x_k = sqrt(2^(k - 1/2) N_odd)
(k = m and m + 1), and the inner sums S_C^odd(x_k / 2^j) land back on the
grid at k - 2j, so one cache of odd sums indexed by the integer k serves
every candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from mpmath.libmp import mpf_add, to_float

from .ball import Ball, BallContext, truncation_bound
from .lfun import (EulerFactor, bad_lfactor_ord1, expand_dirichlet,
                   local_factor, primes_upto)
from .model import WeierstrassModel, discriminant

ROOT_FILTER_SLACK = 1e-9
SQRT2 = math.sqrt(2)


@dataclass(frozen=True)
class ConductorCandidate:
    m: int            # ord_2(N)
    w: int            # +1 | -1
    l2: tuple         # coefficients of L_2(T), constant term 1

    def label(self) -> str:
        return f"m={self.m} w={self.w:+d} L2={list(self.l2)}"


@dataclass(frozen=True)
class Verdict:
    candidate: ConductorCandidate
    conductor: int
    enclosure: Ball
    consistent: bool

    def abs_lower(self) -> float:
        """Rigorous lower bound for |defect| (0 when consistent)."""
        return to_float(self.enclosure.abs_lower())


@dataclass
class Resolution:
    status: str                      # resolved | ambiguous | inconsistent
    n_odd: int
    ord2_delta: int
    verdicts: list[Verdict] = field(default_factory=list)
    resolved: Verdict | None = None
    survivors: list[Verdict] = field(default_factory=list)


def _inverse_root_moduli(coeffs) -> list[float]:
    monic = list(coeffs)
    if len(monic) == 1:
        return []
    return [abs(z) for z in np.roots(monic)]


def candidate_l2_set(m: int) -> list[tuple]:
    """Candidate Euler factors at 2 for ord_2(N) = m, deterministic order.

    m = 0: self-dual degree-4 factors (c3 = 2 c1, c4 = 4); m >= 1: every
    integer polynomial of degree <= 3 whose inverse roots have modulus at
    most sqrt(2).  The bound sqrt(2) + 1e-9 absorbs floating root error;
    integrality makes the filter exact in practice.
    """
    if not 0 <= m <= 20:
        raise ValueError("m must be in [0, 20]")
    limit = SQRT2 + ROOT_FILTER_SLACK
    seen: set[tuple] = set()
    if m == 0:
        for c1 in range(-5, 6):
            for c2 in range(-12, 13):
                coeffs = (1, c1, c2, 2 * c1, 4)
                if max(_inverse_root_moduli(coeffs)) <= limit:
                    seen.add(coeffs)
    else:
        for c1 in range(-4, 5):
            for c2 in range(-6, 7):
                for c3 in range(-2, 3):
                    trimmed = [1, c1, c2, c3]
                    while len(trimmed) > 1 and trimmed[-1] == 0:
                        trimmed.pop()
                    coeffs = tuple(trimmed)
                    moduli = _inverse_root_moduli(coeffs)
                    if not moduli or max(moduli) <= limit:
                        seen.add(coeffs)
    return sorted(seen, key=lambda t: (len(t), t))


def dirichlet_two_powers(l2: tuple, jmax: int) -> list[int]:
    """a_{2^j} for j = 0..jmax from the power series of 1/L2(T)."""
    out = [1]
    for k in range(1, jmax + 1):
        s = 0
        for i in range(1, min(k, len(l2) - 1) + 1):
            s += l2[i] * out[k - i]
        out.append(-s)
    return out


def s_c_odd(ctx: BallContext, x: Ball, coeffs, c: float) -> Ball:
    """(1/x) sum over odd n <= C x of a_n K0(4 pi sqrt(n/x)).

    coeffs[n] must be available for every odd n up to C * sup(x); terms
    whose inclusion depends on where the exact (irrational) cutoff C x
    falls inside the ball of x are enclosed as half-included.
    """
    n_hi = int(math.floor(c * to_float(x.abs_upper()) * (1 + 1e-15)))
    n_lo = int(math.floor(c * to_float(x.abs_lower()) * (1 - 1e-15)))
    if n_hi >= 1 and _coeff_bound(coeffs) < n_hi:
        raise ValueError(f"need odd Dirichlet coefficients up to {n_hi}")
    four_pi = ctx.mul_int(ctx.pi(), 4)
    total = ctx.exact(0)
    for n in range(1, n_hi + 1, 2):
        a_n = coeffs[n]
        if a_n == 0:
            continue
        arg = ctx.mul(four_pi, ctx.sqrt(ctx.div(ctx.exact(n), x)))
        term = ctx.mul_int(ctx.bessel_k0(arg), a_n)
        if n > n_lo:
            # cutoff-straddling term: enclose both inclusion and exclusion
            half = ctx.shift(term, -1)
            term = ctx.add_error(half, half.abs_upper())
        total = ctx.add(total, term)
    return ctx.div(total, x)


def _coeff_bound(coeffs) -> int:
    if hasattr(coeffs, "bound"):
        return coeffs.bound
    return len(coeffs) - 1


def s_c(ctx: BallContext, x: Ball, coeffs, two_powers, c: float) -> Ball:
    """S_C(x) via the odd decomposition
    sum_j (a_{2^j}/2^j) S_C^odd(x/2^j)."""
    cx = c * to_float(x.abs_upper())
    jmax = max(0, int(math.floor(math.log2(cx)))) if cx >= 1 else -1
    if jmax >= len(two_powers):
        raise ValueError(f"need a_2^j up to j = {jmax}")
    total = ctx.exact(0)
    for j in range(jmax + 1):
        xj = ctx.shift(x, -j)
        inner = s_c_odd(ctx, xj, coeffs, c)
        total = ctx.add(total, ctx.mul(ctx.dyadic(two_powers[j], -j), inner))
    return total


class GridCache:
    """S_C^odd values on the argument grid x_k = sqrt(2^(k-1/2) N_odd)."""

    def __init__(self, ctx: BallContext, n_odd: int, coeffs, c: float):
        self.ctx = ctx
        self.n_odd = n_odd
        self.coeffs = coeffs
        self.c = c
        self._x: dict[int, Ball] = {}
        self._sc_odd: dict[int, Ball] = {}
        self._sqrt2 = ctx.sqrt(ctx.exact(2))

    def x(self, k: int) -> Ball:
        got = self._x.get(k)
        if got is None:
            ctx = self.ctx
            val = ctx.div(ctx.dyadic(self.n_odd, k), self._sqrt2)
            got = self._x[k] = ctx.sqrt(val)
        return got

    def sc_odd(self, k: int) -> Ball:
        got = self._sc_odd.get(k)
        if got is None:
            got = self._sc_odd[k] = s_c_odd(self.ctx, self.x(k), self.coeffs, self.c)
        return got

    def sc(self, k: int, two_powers) -> Ball:
        """S_C(x_k) through the odd decomposition; x_k/2^j = x_{k-2j}."""
        ctx = self.ctx
        cx = self.c * to_float(self.x(k).abs_upper())
        jmax = max(0, int(math.floor(math.log2(cx)))) if cx >= 1 else -1
        if jmax >= len(two_powers):
            raise ValueError(f"need a_2^j up to j = {jmax}")
        total = ctx.exact(0)
        for j in range(jmax + 1):
            total = ctx.add(total, ctx.mul(ctx.dyadic(two_powers[j], -j),
                                           self.sc_odd(k - 2 * j)))
        return total


def odd_local_data(m: WeierstrassModel, delta: int | None = None) -> dict:
    """Odd bad-prime data {p: (EulerFactor, ord_p N)} via the nodal rule.

    Requires ord_p(Delta) = 1 at every odd bad prime; anything else needs
    externally supplied local data.
    """
    if delta is None:
        delta = discriminant(m)
    d = abs(delta)
    while d % 2 == 0:
        d //= 2
    out = {}
    for p in _odd_prime_factors(d):
        factor, exp = bad_lfactor_ord1(m, p)
        out[p] = (factor, exp)
    return out


def _odd_prime_factors(n: int) -> list[int]:
    out = []
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


def resolve_two_part(m: WeierstrassModel, odd_bad_data: dict | None = None,
                     delta: int | None = None, c: float = 10.0,
                     prec: int = 53, progress=None) -> Resolution:
    """Test every (ord_2 N, w, L2) candidate against the functional
    equation and return the verdict table.

    odd_bad_data maps each odd bad prime to (EulerFactor, ord_p N); when
    omitted it is computed with the nodal rule, which requires
    ord_p(Delta) = 1 at those primes.
    """
    if delta is None:
        delta = discriminant(m)
    if delta == 0:
        raise ValueError("singular model")
    if odd_bad_data is None:
        odd_bad_data = odd_local_data(m, delta)

    ord2 = 0
    d = abs(delta)
    while d % 2 == 0:
        d //= 2
        ord2 += 1
    mmax = min(20, ord2)
    n_odd = 1
    for p, (_, exp) in odd_bad_data.items():
        n_odd *= p ** exp

    ctx = BallContext(prec)
    cache = GridCache(ctx, n_odd, None, c)
    xmax = cache.x(mmax + 1)
    bound = int(math.floor(c * xmax.mid_float() * 1.001)) + 2

    factors = {p: fac for p, (fac, _) in odd_bad_data.items()}
    order_cache = {}
    for p in primes_upto(bound):
        if p == 2 or p in factors:
            continue
        order = int(math.log(bound) / math.log(p)) + 1
        while p ** order > bound:
            order -= 1
        factors[p] = local_factor(m, p, order)
        order_cache[p] = order
    coeffs = expand_dirichlet(factors, bound, parity="odd")
    cache.coeffs = coeffs

    jmax_global = max(4, int(math.log2(max(c * xmax.mid_float(), 2))) + 2)
    verdicts = []
    total_candidates = sum(len(candidate_l2_set(mm)) * 2 for mm in range(mmax + 1))
    done = 0
    for mm in range(mmax + 1):
        n_val = (1 << mm) * n_odd
        tb = _up_add(truncation_bound(ctx, cache.x(mm + 1), c),
                     truncation_bound(ctx, cache.x(mm), c))
        for l2 in candidate_l2_set(mm):
            two_powers = dirichlet_two_powers(l2, jmax_global)
            hi = cache.sc(mm + 1, two_powers)
            lo = cache.sc(mm, two_powers)
            for w in (1, -1):
                defect = ctx.sub(hi, lo) if w == 1 else ctx.add(hi, lo)
                defect = ctx.add_error(defect, tb)
                verdicts.append(Verdict(ConductorCandidate(mm, w, l2), n_val,
                                        defect, defect.contains_zero()))
                done += 1
                if progress:
                    progress(done, total_candidates)

    survivors = [v for v in verdicts if v.consistent]
    if len(survivors) == 1:
        status, resolved = "resolved", survivors[0]
    elif survivors:
        status, resolved = "ambiguous", None
    else:
        status, resolved = "inconsistent", None
    return Resolution(status, n_odd, ord2, verdicts, resolved, survivors)


def _up_add(a: tuple, b: tuple) -> tuple:
    return mpf_add(a, b, 30, "u")
