"""Sparse multivariate integer polynomials with packed exponent keys.

Exponent vectors are packed into a single Python int, ``bits`` bits per
variable, so term arithmetic is dict arithmetic on int keys.  Packing is
only valid while every per-variable exponent stays below 2**bits; all
constructors in this package stay far below that.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator


class PolyRing:
    """Ring descriptor: number of variables and exponent field width."""

    def __init__(self, nvars: int, bits: int = 6):
        self.nvars = nvars
        self.bits = bits
        self.mask = (1 << bits) - 1
        self.shifts = [bits * i for i in range(nvars)]

    def pack(self, exps: Iterable[int]) -> int:
        key = 0
        for i, e in enumerate(exps):
            if e:
                if e < 0 or e > self.mask:
                    raise ValueError(f"exponent {e} out of packed range")
                key |= e << self.shifts[i]
        return key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple((key >> s) & self.mask for s in self.shifts)

    def zero(self) -> "Poly":
        return Poly(self, {})

    def const(self, c: int) -> "Poly":
        return Poly(self, {0: c} if c else {})

    def var(self, i: int, exp: int = 1, coeff: int = 1) -> "Poly":
        return Poly(self, {self.pack([exp if j == i else 0 for j in range(self.nvars)]): coeff})

    def from_terms(self, terms: Iterable[tuple[Iterable[int], int]]) -> "Poly":
        d: dict[int, int] = {}
        for exps, c in terms:
            if c:
                k = self.pack(exps)
                nc = d.get(k, 0) + c
                if nc:
                    d[k] = nc
                else:
                    d.pop(k, None)
        return Poly(self, d)


class Poly:
    """Immutable-by-convention sparse polynomial over ZZ."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def iter_terms(self) -> Iterator[tuple[tuple[int, ...], int]]:
        unpack = self.ring.unpack
        for k, c in self.terms.items():
            yield unpack(k), c

    def add(self, other: "Poly") -> "Poly":
        d = dict(self.terms)
        for k, c in other.terms.items():
            nc = d.get(k, 0) + c
            if nc:
                d[k] = nc
            else:
                del d[k]
        return Poly(self.ring, d)

    def neg(self) -> "Poly":
        return Poly(self.ring, {k: -c for k, c in self.terms.items()})

    def sub(self, other: "Poly") -> "Poly":
        return self.add(other.neg())

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return self.ring.zero()
        return Poly(self.ring, {k: c * v for k, v in self.terms.items()})

    def mul_term(self, key: int, coeff: int) -> "Poly":
        return Poly(self.ring, {k + key: c * coeff for k, c in self.terms.items()})

    def mul(self, other: "Poly") -> "Poly":
        if len(self.terms) > len(other.terms):
            self, other = other, self
        out: dict[int, int] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = k1 + k2
                nc = out.get(k, 0) + c1 * c2
                if nc:
                    out[k] = nc
                else:
                    del out[k]
        return Poly(self.ring, out)

    def pow(self, n: int) -> "Poly":
        result = self.ring.const(1)
        base = self
        while n:
            if n & 1:
                result = result.mul(base)
            base = base.mul(base) if n > 1 else base
            n >>= 1
        return result

    def divexact_var(self, i: int, exp: int = 1) -> "Poly":
        """Divide by x_i**exp; every term must carry at least that power."""
        shift = self.ring.shifts[i]
        mask = self.ring.mask
        out = {}
        for k, c in self.terms.items():
            if ((k >> shift) & mask) < exp:
                raise ValueError(f"term not divisible by variable {i}**{exp}")
            out[k - (exp << shift)] = c
        return Poly(self.ring, out)

    def degree_in(self, i: int) -> int:
        shift = self.ring.shifts[i]
        mask = self.ring.mask
        return max(((k >> shift) & mask) for k in self.terms) if self.terms else -1

    def total_degrees(self) -> set[int]:
        degs = set()
        for exps, _ in self.iter_terms():
            degs.add(sum(exps))
        return degs

    def content(self) -> int:
        g = 0
        for c in self.terms.values():
            g = math.gcd(g, c)
            if g == 1:
                return 1
        return g

    def evaluate(self, values):
        """Evaluate at a point; works for any commutative coefficient type."""
        pows = []
        for i, v in enumerate(values):
            d = self.degree_in(i)
            row = [1]
            for _ in range(max(d, 0)):
                row.append(row[-1] * v)
            pows.append(row)
        total = 0
        for exps, c in self.iter_terms():
            t = c
            for i, e in enumerate(exps):
                if e:
                    t = t * pows[i][e]
            total = total + t
        return total

    def map_ring(self, ring: PolyRing, var_map) -> "Poly":
        """Reinterpret in another ring, sending variable i to var_map[i]."""
        out: dict[int, int] = {}
        for exps, c in self.iter_terms():
            new = [0] * ring.nvars
            for i, e in enumerate(exps):
                if e:
                    new[var_map[i]] += e
            k = ring.pack(new)
            nc = out.get(k, 0) + c
            if nc:
                out[k] = nc
            else:
                del out[k]
        return Poly(ring, out)


def sylvester_resultant_symbolic(ring: PolyRing, f_rows: list[list[Poly]]) -> Poly:
    """Determinant of a square matrix of (monomial-ish) polynomials.

    Laplace expansion along rows with memoization on the remaining column
    set.  Intended for banded matrices such as Sylvester matrices, where
    most entries are zero and the entries are single terms.
    """
    n = len(f_rows)
    zero = ring.zero()
    memo: dict[tuple[int, int], Poly] = {}

    def minor(row: int, colmask: int) -> Poly:
        if row == n:
            return ring.const(1)
        key = (row, colmask)
        got = memo.get(key)
        if got is not None:
            return got
        acc = zero
        sign = 1
        for j in range(n):
            bit = 1 << j
            if not (colmask & bit):
                continue
            entry = f_rows[row][j]
            if entry:
                sub = minor(row + 1, colmask & ~bit)
                if sub:
                    term = entry.mul(sub)
                    acc = acc.add(term if sign > 0 else term.neg())
            sign = -sign
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


def integer_matrix_det(rows: list[list[int]]) -> int:
    """Exact determinant of an integer matrix via fraction-free Bareiss."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pk - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]
