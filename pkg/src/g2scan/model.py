"""Genus-2 Weierstrass models y^2 + h(x) y = f(x) and exact discriminants.

Coefficient vectors are positional and fixed-length (f has 7 entries,
h has 4); degrees are implicit and trailing zeros are allowed, which is
what makes specialization of the universal discriminant correct when
leading coefficients vanish.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .disc6 import disc6_eval


@dataclass(frozen=True)
class WeierstrassModel:
    """One model y^2 + h(x) y = f(x), deg f <= 6, deg h <= 3."""

    f: tuple  # 7 coefficients f0..f6
    h: tuple  # 4 coefficients h0..h3

    def __post_init__(self):
        if len(self.f) != 7 or len(self.h) != 4:
            raise ValueError("f must have 7 coefficients and h must have 4")

    @staticmethod
    def make(f: Sequence, h: Sequence) -> "WeierstrassModel":
        f = tuple(f) + (0,) * (7 - len(f))
        h = tuple(h) + (0,) * (4 - len(h))
        return WeierstrassModel(f, h)

    def is_integral(self) -> bool:
        return all(_is_integer(c) for c in self.f + self.h)

    def as_integral(self) -> "WeierstrassModel":
        if not self.is_integral():
            raise ValueError("model has non-integral coefficients")
        return WeierstrassModel(tuple(int(c) for c in self.f), tuple(int(c) for c in self.h))

    def is_genus2(self) -> bool:
        return discriminant(self) != 0


@dataclass(frozen=True)
class ModelTransform:
    """Change of variables x' = (ax+b)/(cx+d), y' = (e y + j(x))/(cx+d)^3."""

    a: int
    b: int
    c: int
    d: int
    e: Fraction
    j: tuple  # 4 coefficients j0..j3, rational

    def __post_init__(self):
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError("transform must have ad - bc != 0")
        if self.e == 0:
            raise ValueError("transform must have e != 0")

    @staticmethod
    def make(a, b, c, d, e=1, j=(0, 0, 0, 0)) -> "ModelTransform":
        j = tuple(Fraction(x) for x in j) + (Fraction(0),) * (4 - len(j))
        return ModelTransform(a, b, c, d, Fraction(e), j)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c


def _is_integer(c) -> bool:
    if isinstance(c, int):
        return True
    if isinstance(c, Fraction):
        return c.denominator == 1
    return False


def poly_mul(p: Sequence, q: Sequence) -> list:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return out


def simplify(m: WeierstrassModel) -> tuple:
    """Coefficients of the simplified sextic 4 f + h^2."""
    h2 = poly_mul(m.h, m.h)
    return tuple(4 * m.f[i] + h2[i] for i in range(7))


def discriminant(m: WeierstrassModel):
    """Exact discriminant 2^-12 disc6(4f + h^2); integer for integral models."""
    d = disc6_eval(simplify(m))
    if isinstance(d, int):
        q, r = divmod(d, 4096)
        if r:
            raise AssertionError("disc6(4f+h^2) is always divisible by 2^12")
        return q
    return Fraction(d) / 4096


def normalize_h(m: WeierstrassModel) -> WeierstrassModel:
    """Equivalent integral model with h coefficients in {0, 1}; same disc."""
    m = m.as_integral()
    hp = tuple(c & 1 for c in m.h)
    j = tuple((hp[i] - m.h[i]) // 2 for i in range(4))
    jh = poly_mul(j, m.h)
    jj = poly_mul(j, j)
    f = tuple(m.f[i] - jh[i] - jj[i] for i in range(7))
    return WeierstrassModel(f, hp)


def transform(m: WeierstrassModel, t: ModelTransform) -> WeierstrassModel:
    """Model satisfied by the transformed coordinates (x', y').

    Satisfies discriminant(transform(m, t)) == e^20 (ad-bc)^-30 discriminant(m).
    """
    a, b, c, d, e = t.a, t.b, t.c, t.d, t.e
    det = t.det
    # x = (d x' - b)/(a - c x'); substitute and clear (a - c x') powers.
    num = (-b, d)   # d*x' - b
    den = (a, -c)   # a - c*x'
    num_pows = _pow_table(num, 6)
    den_pows = _pow_table(den, 6)

    def compose(coeffs: Sequence, deg: int) -> list:
        # sum_k coeffs[k] * (d x'-b)^k (a-c x')^(deg-k), degree <= deg in x'
        out = [Fraction(0)] * (deg + 1)
        for k, ck in enumerate(coeffs):
            if ck:
                prod = poly_mul(num_pows[k], den_pows[deg - k])
                for i, v in enumerate(prod):
                    out[i] += ck * v
        return out

    eh2j = [e * m.h[i] - 2 * t.j[i] for i in range(4)]
    hp = [v / Fraction(det) ** 3 for v in compose(eh2j, 3)]

    hj = poly_mul(m.h, t.j)
    jj = poly_mul(t.j, t.j)
    fnum = [e * e * m.f[i] + e * hj[i] - jj[i] for i in range(7)]
    fp = [v / Fraction(det) ** 6 for v in compose(fnum, 6)]

    return WeierstrassModel(tuple(_normalize_num(v) for v in fp),
                            tuple(_normalize_num(v) for v in hp))


def _pow_table(p: Sequence, n: int) -> list:
    pows = [[1]]
    for _ in range(n):
        pows.append(poly_mul(pows[-1], p))
    return pows


def _normalize_num(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def format_model(m: WeierstrassModel) -> str:
    """Canonical encoding [[f0,...,f6],[h0,...,h3]] with decimal integers."""
    m = m.as_integral()
    return json.dumps([list(m.f), list(m.h)], separators=(",", ":"))


def parse_model(text: str) -> WeierstrassModel:
    try:
        data = json.loads(text)
        f, h = data
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad model encoding: {text!r}") from exc
    if len(f) != 7 or len(h) != 4 or not all(isinstance(c, int) for c in f + h):
        raise ValueError(f"bad model encoding: {text!r}")
    return WeierstrassModel(tuple(f), tuple(h))
