"""Igusa-Clebsch, Igusa, and G2 invariants of genus-2 models.

Invariants are evaluated on the simplified sextic 4f + h^2 through exact
coefficient polynomials (generated once from the symmetric root-difference
definitions; see scripts/gen_igusa_tables.py).  With that normalization
I10 = disc6(4f + h^2) = 2^12 Delta(f, h).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._igusa_tables import I2_TERMS, I4_TERMS, I6_TERMS
from .disc6 import disc6_eval
from .model import WeierstrassModel, simplify


@dataclass(frozen=True)
class IgusaClebsch:
    I2: object
    I4: object
    I6: object
    I10: object

    def tuple(self):
        return (self.I2, self.I4, self.I6, self.I10)


@dataclass(frozen=True)
class IgusaInvariants:
    J2: Fraction
    J4: Fraction
    J6: Fraction
    J8: Fraction
    J10: Fraction

    def tuple(self):
        return (self.J2, self.J4, self.J6, self.J8, self.J10)


@dataclass(frozen=True)
class G2Invariants:
    g1: Fraction
    g2: Fraction
    g3: Fraction
    branch: str  # "J2" | "J4" | "J6"

    def tuple(self):
        return (self.g1, self.g2, self.g3)


def _eval_terms(terms, values):
    pows = []
    for i, v in enumerate(values):
        d = max((e[i] for e, _ in terms), default=0)
        row = [1]
        for _ in range(d):
            row.append(row[-1] * v)
        pows.append(row)
    acc = 0
    for exps, c in terms:
        t = c
        for i, e in enumerate(exps):
            if e:
                t = t * pows[i][e]
        acc = acc + t
    return acc


def igusa_clebsch_of_sextic(s) -> IgusaClebsch:
    """Invariants of the curve y^2 = s(x) for a squarefree sextic/quintic s.

    Exact integers for integral s; I10 equals disc6(s).
    """
    i10 = disc6_eval(s)
    if i10 == 0:
        raise ValueError("singular sextic: I10 = 0")
    return IgusaClebsch(
        _eval_terms(I2_TERMS, s),
        _eval_terms(I4_TERMS, s),
        _eval_terms(I6_TERMS, s),
        i10,
    )


def igusa_clebsch(m: WeierstrassModel) -> IgusaClebsch:
    """Exact Igusa-Clebsch invariants of the model; rejects singular input."""
    return igusa_clebsch_of_sextic(simplify(m))


def igusa(ic: IgusaClebsch) -> IgusaInvariants:
    """Igusa J-invariants as exact rationals."""
    if ic.I10 == 0:
        raise ValueError("singular input: I10 = 0")
    J2 = Fraction(ic.I2, 8)
    J4 = (4 * J2 ** 2 - ic.I4) / 96
    J6 = (8 * J2 ** 3 - 160 * J2 * J4 - ic.I6) / 576
    J8 = (J2 * J6 - J4 ** 2) / 4
    J10 = Fraction(ic.I10, 4096)
    return IgusaInvariants(J2, Fraction(J4), Fraction(J6), Fraction(J8), J10)


def g2_invariants(j: IgusaInvariants) -> G2Invariants:
    """Absolute invariants (three affine coordinates on the moduli space)."""
    if j.J10 == 0:
        raise ValueError("J10 must be nonzero")
    if j.J2 != 0:
        return G2Invariants(j.J2 ** 5 / j.J10, j.J2 ** 3 * j.J4 / j.J10,
                            j.J2 ** 2 * j.J6 / j.J10, "J2")
    if j.J4 != 0:
        return G2Invariants(Fraction(0), j.J4 ** 5 / j.J10 ** 2,
                            j.J4 * j.J6 / j.J10, "J4")
    return G2Invariants(Fraction(0), Fraction(0), j.J6 ** 5 / j.J10 ** 3, "J6")


def g2_of_model(m: WeierstrassModel) -> G2Invariants:
    return g2_invariants(igusa(igusa_clebsch(m)))


def same_geometric_class(a: IgusaClebsch, b: IgusaClebsch) -> bool:
    """Equality as points of weighted projective (2,4,6,10)-space over any
    algebraically closed field.

    Implemented through the weight-0 ratios that make up the G2 triple
    (J2^5/J10 etc., with the J4- and J6-branches as the fallback when
    lower-weight invariants vanish); the triple separates geometric
    classes, so no root extraction of the scaling factor is needed.
    """
    return g2_invariants(igusa(a)).tuple() == g2_invariants(igusa(b)).tuple()
