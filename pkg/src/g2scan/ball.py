"""Midpoint-radius enclosure arithmetic and a rigorous K-Bessel function.

Balls are pairs of mpmath libmp floats (unbounded exponent).  Midpoints
round to nearest at the context precision; radii accumulate the incoming
radii, the propagated cross terms, and one relative epsilon per operation,
always rounded away from zero, so every derived ball encloses the exact
value.  Elementary functions are evaluated at interval endpoints with
directed rounding plus a two-ulp guard.

K0 uses the defining power series (with rigorous geometric tail bounds)
below x = 20, evaluated with enough guard bits to absorb the e^(2x)
cancellation, and the alternating asymptotic expansion above, whose
remainder is bounded by the first omitted term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mpmath.libmp import (from_int, from_man_exp, fzero, mpf_abs, mpf_add,
                          mpf_div, mpf_euler, mpf_exp, mpf_gt, mpf_le, mpf_log,
                          mpf_lt, mpf_mul, mpf_mul_int, mpf_neg, mpf_pi,
                          mpf_shift, mpf_sqrt, mpf_sub, to_float, to_str)

RADPREC = 30  # radius bookkeeping precision (always rounded up)


@dataclass(frozen=True)
class Ball:
    """Enclosure [mid - rad, mid + rad] of a real number."""

    mid: tuple
    rad: tuple  # nonnegative

    def contains_zero(self) -> bool:
        return mpf_le(mpf_abs(self.mid), self.rad)

    def is_nonzero(self) -> bool:
        return mpf_gt(mpf_abs(self.mid), self.rad)

    def mid_float(self) -> float:
        return to_float(self.mid)

    def rad_float(self) -> float:
        return to_float(self.rad)

    def abs_lower(self) -> tuple:
        """Rigorous lower bound for |x| over the ball."""
        lo = mpf_sub(mpf_abs(self.mid), self.rad, RADPREC, "f")
        return lo if mpf_gt(lo, fzero) else fzero

    def abs_upper(self) -> tuple:
        return mpf_add(mpf_abs(self.mid), self.rad, RADPREC, "u")

    def __repr__(self):
        return f"Ball({to_str(self.mid, 17)} +/- {to_str(self.rad, 5)})"


def _up(*vals) -> tuple:
    acc = fzero
    for v in vals:
        acc = mpf_add(acc, v, RADPREC, "u")
    return acc


class BallContext:
    """Ball arithmetic at a fixed working precision (>= 53 bits)."""

    def __init__(self, prec: int = 53):
        if prec < 53:
            raise ValueError("precision below 53 bits is not supported")
        self.prec = prec
        self._eps = from_man_exp(1, 1 - prec)  # >= 2 rounding half-ulps

    # -- constructors --------------------------------------------------------

    def exact(self, x) -> Ball:
        if isinstance(x, Ball):
            return x
        if isinstance(x, int):
            return Ball(from_int(x), fzero)
        if isinstance(x, tuple):
            return Ball(x, fzero)
        raise TypeError(f"cannot make an exact ball from {type(x)}")

    def dyadic(self, man: int, exp: int) -> Ball:
        return Ball(from_man_exp(man, exp), fzero)

    def from_endpoints(self, lo: tuple, hi: tuple) -> Ball:
        mid = mpf_shift(mpf_add(lo, hi, self.prec, "n"), -1)
        rad = _up(mpf_sub(hi, mid, RADPREC, "u"), mpf_sub(mid, lo, RADPREC, "u"),
                  self._eps_term(mid))
        return Ball(mid, rad)

    def pi(self) -> Ball:
        return self.from_endpoints(mpf_pi(self.prec, "f"), mpf_pi(self.prec, "c"))

    def euler_gamma(self) -> Ball:
        return self.from_endpoints(mpf_euler(self.prec, "f"), mpf_euler(self.prec, "c"))

    def _eps_term(self, mid: tuple) -> tuple:
        return mpf_mul(mpf_abs(mid), self._eps, RADPREC, "u")

    # -- ring operations -----------------------------------------------------

    def add(self, a: Ball, b: Ball) -> Ball:
        mid = mpf_add(a.mid, b.mid, self.prec, "n")
        return Ball(mid, _up(a.rad, b.rad, self._eps_term(mid)))

    def sub(self, a: Ball, b: Ball) -> Ball:
        mid = mpf_sub(a.mid, b.mid, self.prec, "n")
        return Ball(mid, _up(a.rad, b.rad, self._eps_term(mid)))

    def neg(self, a: Ball) -> Ball:
        return Ball(mpf_neg(a.mid), a.rad)

    def mul(self, a: Ball, b: Ball) -> Ball:
        mid = mpf_mul(a.mid, b.mid, self.prec, "n")
        rad = _up(mpf_mul(mpf_abs(a.mid), b.rad, RADPREC, "u"),
                  mpf_mul(mpf_abs(b.mid), a.rad, RADPREC, "u"),
                  mpf_mul(a.rad, b.rad, RADPREC, "u"),
                  self._eps_term(mid))
        return Ball(mid, rad)

    def mul_int(self, a: Ball, n: int) -> Ball:
        mid = mpf_mul_int(a.mid, n, self.prec, "n")
        rad = _up(mpf_mul_int(a.rad, abs(n), RADPREC, "u"), self._eps_term(mid))
        return Ball(mid, rad)

    def div(self, a: Ball, b: Ball) -> Ball:
        bmag_low = b.abs_lower()
        if not mpf_gt(bmag_low, fzero):
            raise ZeroDivisionError("divisor ball contains zero")
        mid = mpf_div(a.mid, b.mid, self.prec, "n")
        num = _up(mpf_mul(mpf_abs(a.mid), b.rad, RADPREC, "u"),
                  mpf_mul(mpf_abs(b.mid), a.rad, RADPREC, "u"))
        den = mpf_mul(mpf_abs(b.mid), bmag_low, RADPREC, "f")
        rad = _up(mpf_div(num, den, RADPREC, "u"), self._eps_term(mid))
        return Ball(mid, rad)

    def div_int(self, a: Ball, n: int) -> Ball:
        return self.div(a, self.exact(n))

    def shift(self, a: Ball, k: int) -> Ball:
        return Ball(mpf_shift(a.mid, k), mpf_shift(a.rad, k))

    def add_error(self, a: Ball, err: tuple) -> Ball:
        return Ball(a.mid, _up(a.rad, err))

    def hull(self, a: Ball, b: Ball) -> Ball:
        lo_a = mpf_sub(a.mid, a.rad, self.prec + 10, "f")
        lo_b = mpf_sub(b.mid, b.rad, self.prec + 10, "f")
        hi_a = mpf_add(a.mid, a.rad, self.prec + 10, "c")
        hi_b = mpf_add(b.mid, b.rad, self.prec + 10, "c")
        lo = lo_a if mpf_lt(lo_a, lo_b) else lo_b
        hi = hi_a if mpf_gt(hi_a, hi_b) else hi_b
        return self.from_endpoints(lo, hi)

    def round_to(self, a: Ball, prec: int) -> Ball:
        ctx = BallContext(prec)
        mid = mpf_add(a.mid, fzero, prec, "n")
        return Ball(mid, _up(a.rad, ctx._eps_term(mid)))

    # -- monotone elementary functions ---------------------------------------

    def _endpoints(self, a: Ball):
        lo = mpf_sub(a.mid, a.rad, self.prec + 10, "f")
        hi = mpf_add(a.mid, a.rad, self.prec + 10, "c")
        return lo, hi

    def _guard(self, lo: tuple, hi: tuple) -> Ball:
        # two-ulp outward slack over directed rounding of the function values
        slack_lo = mpf_mul(mpf_abs(lo), self._eps, RADPREC, "u")
        slack_hi = mpf_mul(mpf_abs(hi), self._eps, RADPREC, "u")
        lo = mpf_sub(lo, slack_lo, self.prec + 10, "f")
        hi = mpf_add(hi, slack_hi, self.prec + 10, "c")
        return self.from_endpoints(lo, hi)

    def sqrt(self, a: Ball) -> Ball:
        lo, hi = self._endpoints(a)
        if mpf_lt(lo, fzero):
            raise ValueError("sqrt of a ball reaching below zero")
        return self._guard(mpf_sqrt(lo, self.prec, "f"), mpf_sqrt(hi, self.prec, "c"))

    def exp(self, a: Ball) -> Ball:
        lo, hi = self._endpoints(a)
        return self._guard(mpf_exp(lo, self.prec, "f"), mpf_exp(hi, self.prec, "c"))

    def log(self, a: Ball) -> Ball:
        lo, hi = self._endpoints(a)
        if not mpf_gt(lo, fzero):
            raise ValueError("log of a ball reaching below zero")
        return self._guard(mpf_log(lo, self.prec, "f"), mpf_log(hi, self.prec, "c"))

    # -- K-Bessel ------------------------------------------------------------

    def bessel_k0(self, x: Ball) -> Ball:
        """Enclosure of K0 over the ball x; requires x > 0.

        K0 is strictly decreasing, so the hull of rigorous evaluations at
        the interval endpoints encloses the range.
        """
        lo, hi = self._endpoints(x)
        if not mpf_gt(lo, fzero):
            raise ValueError("bessel_k0 requires x > 0")
        a = _k0_point(lo, self.prec)
        if x.rad == fzero:
            return a
        b = _k0_point(hi, self.prec)
        return self.hull(a, b)


_POWER_SERIES_CUTOFF = 20.0


def _k0_point(x: tuple, prec: int) -> Ball:
    xf = to_float(x)
    if xf <= _POWER_SERIES_CUTOFF:
        wp = prec + int(3 * xf) + 30
        res = _k0_series(x, wp)
    else:
        res = _k0_asymptotic(x, prec + 30)
    return BallContext(prec).round_to(res, prec)


def _k0_series(x: tuple, wp: int) -> Ball:
    """K0(x) = -(log(x/2) + gamma) I0(x) + sum_{k>=1} H_k (x^2/4)^k / k!^2.

    Both series have positive terms; tails are bounded geometrically once
    the term ratio z/(k+1)^2 drops below 1/2.
    """
    ctx = BallContext(wp)
    u = ctx.exact(mpf_shift(x, -1))
    z = ctx.mul(u, u)
    zhi = to_float(z.abs_upper())
    lead = ctx.neg(ctx.add(ctx.log(u), ctx.euler_gamma()))

    term = ctx.exact(1)
    s_i = ctx.exact(1)
    s_h = ctx.exact(0)
    h = ctx.exact(0)
    k = 0
    while True:
        k += 1
        term = ctx.div_int(ctx.mul(term, z), k * k)
        h = ctx.add(h, ctx.div_int(ctx.exact(1), k))
        s_i = ctx.add(s_i, term)
        s_h = ctx.add(s_h, ctx.mul(term, h))
        if k * k <= 2 * zhi or k < 4:
            continue
        t_hi = to_float(term.abs_upper())
        if t_hi < math.ldexp(max(to_float(s_i.abs_upper()), 1.0), -wp - 4):
            break
        if k > 10_000:
            raise ArithmeticError("K0 power series failed to converge")
    q = zhi / (k + 1) ** 2
    assert q < 0.5, "tail ratio must be < 1/2 at the stopping index"
    t_hi = to_float(term.abs_upper())
    h_hi = to_float(h.abs_upper())
    tail_i = t_hi * q / (1 - q)
    tail_h = t_hi * (h_hi * q / (1 - q) + q / (1 - q) ** 2)
    s_i = ctx.add_error(s_i, _float_up(tail_i))
    s_h = ctx.add_error(s_h, _float_up(tail_h))
    return ctx.add(ctx.mul(lead, s_i), s_h)


def _k0_asymptotic(x: tuple, wp: int) -> Ball:
    """K0(x) = sqrt(pi/(2x)) e^-x (1 + sum_k a_k), a_k = a_{k-1} *
    -(2k-1)^2 / (8 k x); the remainder after stopping is bounded by the
    first omitted term (alternating enveloping series for x > 0)."""
    ctx = BallContext(wp)
    xb = ctx.exact(x)
    term = ctx.exact(1)
    total = ctx.exact(1)
    prev_mag = None
    k = 0
    while True:
        k += 1
        term = ctx.div(ctx.mul_int(term, -((2 * k - 1) ** 2)), ctx.mul_int(xb, 8 * k))
        mag = to_float(term.abs_upper())
        if prev_mag is not None and mag >= prev_mag:
            break  # passed the smallest term; stop before adding it
        total = ctx.add(total, term)
        prev_mag = mag
        if mag < math.ldexp(1.0, -wp - 4):
            k += 1
            term = ctx.div(ctx.mul_int(term, -((2 * k - 1) ** 2)), ctx.mul_int(xb, 8 * k))
            break
    total = ctx.add_error(total, term.abs_upper())
    pref = ctx.sqrt(ctx.div(ctx.pi(), ctx.shift(xb, 1)))
    return ctx.mul(ctx.mul(pref, ctx.exp(ctx.neg(xb))), total)


def truncation_bound(ctx: BallContext, x: Ball, c: float) -> tuple:
    """Upper bound for the Bessel-sum truncation error at argument x with
    cutoff parameter C >= 5: 4 C x^(1/4) (1 + 2 x sqrt(C)) e^(-4 pi sqrt(C)),
    evaluated upward at the upper end of x."""
    if c < 5:
        raise ValueError("truncation bound requires C >= 5")
    xhi = ctx.exact(x.abs_upper())
    cb = ctx.exact(_from_float_exact(c))
    quarter_root = ctx.sqrt(ctx.sqrt(xhi))
    sqrt_c = ctx.sqrt(cb)
    inner = ctx.add(ctx.exact(1), ctx.mul_int(ctx.mul(xhi, sqrt_c), 2))
    expo = ctx.exp(ctx.neg(ctx.mul_int(ctx.mul(ctx.pi(), sqrt_c), 4)))
    val = ctx.mul(ctx.mul_int(ctx.mul(quarter_root, inner), 4), ctx.mul(cb, expo))
    return val.abs_upper()


def _from_float_exact(c) -> tuple:
    if isinstance(c, int):
        return from_int(c)
    m, e = math.frexp(c)
    man = int(m * (1 << 53))
    return from_man_exp(man, e - 53)


def _float_up(v: float) -> tuple:
    """An mpf upper bound for a nonnegative float (one ulp of slack)."""
    if v == 0.0:
        return fzero
    m, e = math.frexp(v)
    return from_man_exp(int(m * (1 << 53)) + 1, e - 53)
