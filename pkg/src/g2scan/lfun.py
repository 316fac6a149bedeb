"""Local L-data: point counts, Euler factors, Dirichlet expansion,
isogeny-class hash, and Sato-Tate moment statistics.

Good odd primes are handled by quadratic-character sums over the
simplified sextic (O(p^r) work); p = 2 is counted on the full
y^2 + h y = f form over F_2 / F_4 when the discriminant is odd.  Odd bad
primes p with ord_p(Delta) = 1 get their degree-3 factor from the nodal
reduction rule; all other odd bad primes take external local data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ._pi_digits import P as HASH_P
from ._pi_digits import PI_BASE_P_DIGITS
from .model import WeierstrassModel, discriminant, simplify


@dataclass(frozen=True)
class EulerFactor:
    """L_p(T) = coeffs[0] + coeffs[1] T + ...; coeffs[0] is always 1.

    good degree-4 factors satisfy c3 = p c1 and c4 = p^2; truncated
    factors carry only the coefficients needed for the expansion bound
    (higher p-power coefficients were never computed).
    """

    p: int
    coeffs: tuple
    good: bool
    cond_exp: int = 0
    truncated: bool = False

    def __post_init__(self):
        if self.coeffs[0] != 1:
            raise ValueError("Euler factor must have constant term 1")
        if self.good and not self.truncated:
            c = self.coeffs
            if len(c) != 5 or c[3] != self.p * c[1] or c[4] != self.p ** 2:
                raise ValueError("good factor must satisfy the degree-4 "
                                 "functional equation shape")

    @property
    def a_p(self) -> int:
        return -self.coeffs[1]

    def known_order(self) -> int:
        return len(self.coeffs) - 1 if self.truncated else 10 ** 9

    def dirichlet_powers(self, kmax: int) -> list[int]:
        """a_{p^k} for k = 0..kmax from the power series of 1/L_p(T)."""
        c = self.coeffs
        if self.truncated and kmax > len(c) - 1:
            raise ValueError(f"factor at p={self.p} truncated below order {kmax}")
        out = [1]
        for k in range(1, kmax + 1):
            s = 0
            for i in range(1, min(k, len(c) - 1) + 1):
                s += c[i] * out[k - i]
            out.append(-s)
        return out


@dataclass(frozen=True)
class DirichletSeries:
    bound: int
    a: tuple  # a[n] for 0 <= n <= bound; a[0] unused (0)
    parity: str  # "all" | "odd"
    unknown_primes: frozenset = frozenset()

    def __getitem__(self, n: int) -> int:
        if self.parity == "odd" and n % 2 == 0:
            raise KeyError("even coefficients are not available (parity=odd)")
        return self.a[n]


@dataclass(frozen=True)
class HashResult:
    value: int
    partial: bool = False
    skipped_primes: tuple = ()


@dataclass
class MomentStats:
    bound: int
    a1_moments: list[float] = field(default_factory=list)  # E[a1~^k], k=1..8
    a2_moments: list[float] = field(default_factory=list)  # E[a2~^k], k=1..4
    a1_samples: int = 0
    a2_samples: int = 0
    a2_bound: int = 0


# -- primes and characters ---------------------------------------------------

@lru_cache(maxsize=None)
def primes_upto(n: int) -> tuple:
    if n < 2:
        return ()
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


@lru_cache(maxsize=4096)
def _char_table(p: int) -> np.ndarray:
    """chi[v] in {-1, 0, 1}: the quadratic character of v mod p."""
    chi = np.full(p, -1, dtype=np.int64)
    chi[0] = 0
    v = (np.arange(1, p, dtype=np.int64) ** 2) % p
    chi[v] = 1
    return chi


def _poly_values_modp(coeffs, p: int, xs: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(xs)
    for c in reversed(coeffs):
        acc = (acc * xs + c % p) % p
    return acc


# -- point counting ----------------------------------------------------------

def point_count(m: WeierstrassModel, p: int, r: int = 1) -> int:
    """#X(F_{p^r}) for an odd prime p of good reduction and r in {1, 2}."""
    if p == 2:
        return _point_count_2(m, r)
    if p % 2 == 0 or r not in (1, 2):
        raise ValueError("p must be an odd prime and r in {1, 2}")
    s = [c % p for c in simplify(m)]
    if discriminant(m) % p == 0:
        raise ValueError(f"bad reduction at {p}")
    chi = _char_table(p)
    if r == 1:
        xs = np.arange(p, dtype=np.int64)
        vals = _poly_values_modp(s, p, xs)
        affine = p + int(chi[vals].sum())
        return affine + _points_at_infinity(s, p, chi, 1)
    # F_{p^2} = F_p(theta), theta^2 = nr (a fixed nonresidue);
    # chi_{p^2}(v) = chi_p(Norm v) with Norm(u + w theta) = u^2 - nr w^2
    nr = int(np.flatnonzero(chi < 0)[0])
    u, w = np.meshgrid(np.arange(p, dtype=np.int64),
                       np.arange(p, dtype=np.int64), indexing="ij")
    au = np.zeros_like(u)
    aw = np.zeros_like(w)
    for c in reversed(s):
        au, aw = (au * u + nr * aw * w + c % p) % p, (au * w + aw * u) % p
    norm = (au * au - nr * aw * aw) % p
    affine = p * p + int(chi[norm].sum())
    return affine + _points_at_infinity(s, p, chi, 2)


def _points_at_infinity(s, p, chi, r: int) -> int:
    if s[6] % p:
        if r == 2:
            return 2  # every element of F_p* is a square in F_{p^2}
        return 2 if chi[s[6] % p] > 0 else 0
    if s[5] % p:
        return 1
    raise ValueError("sextic degenerates mod p; not a good prime")


def _gf4_mul(a: int, b: int) -> int:
    # F_4 as {0, 1, 2, 3} = {0, 1, t, t+1} with t^2 = t + 1
    if a == 0 or b == 0:
        return 0
    if a == 1:
        return b
    if b == 1:
        return a
    return {(2, 2): 3, (2, 3): 1, (3, 2): 1, (3, 3): 2}[(a, b)]


def _point_count_2(m: WeierstrassModel, r: int) -> int:
    """#X(F_{2^r}) from the full y^2 + h y = f form, r in {1, 2}."""
    if discriminant(m) % 2 == 0:
        raise ValueError("bad reduction at 2")
    if r not in (1, 2):
        raise ValueError("r must be 1 or 2")
    if r == 1:
        elems, mul, trace = (0, 1), lambda a, b: a & b, lambda v: v
    else:
        elems, mul, trace = (0, 1, 2, 3), _gf4_mul, lambda v: 1 if v in (2, 3) else 0

    def poly_at(coeffs, x):
        acc = 0
        for c in reversed(coeffs):
            acc = mul(acc, x) ^ (c & 1)
        return acc

    def solutions(b, c):
        # y^2 + b y = c over the field
        if b == 0:
            return 1  # squaring is a bijection
        binv_sq = mul(_gf2r_inv(b, r), _gf2r_inv(b, r))
        return 2 if trace(mul(c, binv_sq)) == 0 else 0

    total = 0
    for x in elems:
        total += solutions(poly_at(m.h, x), poly_at(m.f, x))
    total += solutions(m.h[3] & 1, m.f[6] & 1)
    return total


def _gf2r_inv(a: int, r: int) -> int:
    if a == 0:
        raise ZeroDivisionError
    if a == 1:
        return 1
    return {2: 3, 3: 2}[a]  # F_4 inverses


# -- Euler factors -----------------------------------------------------------

def good_lfactor(m: WeierstrassModel, p: int) -> EulerFactor:
    """Degree-4 factor at a good prime from N_1 and N_2."""
    n1 = point_count(m, p, 1)
    n2 = point_count(m, p, 2)
    t1 = p + 1 - n1
    t2 = p * p + 1 - n2
    c2, rem = divmod(t1 * t1 - t2, 2)
    if rem:
        raise AssertionError("t1^2 - t2 must be even")
    return EulerFactor(p, (1, -t1, c2, -p * t1, p * p), good=True)


def trace_lfactor(m: WeierstrassModel, p: int) -> EulerFactor:
    """Truncated factor (1 - a_p T + ...) when only a_p is needed."""
    n1 = point_count(m, p, 1)
    return EulerFactor(p, (1, -(p + 1 - n1)), good=True, truncated=True)


def local_factor(m: WeierstrassModel, p: int, order: int) -> EulerFactor:
    """Good factor valid for Dirichlet coefficients up to p^order."""
    return good_lfactor(m, p) if order >= 2 else trace_lfactor(m, p)


def bad_lfactor_ord1(m: WeierstrassModel, p: int) -> tuple[EulerFactor, int]:
    """Degree-3 factor and conductor exponent 1 at an odd prime with
    ord_p(Delta) = 1 (nodal reduction).

    The reduced sextic has a single rational double point (possibly at
    infinity); writing its normalization as an elliptic curve E gives
    L_p = (1 + w T)(1 - a T + p T^2) with w minus the character of the
    tangent-slope discriminant and a = p + 1 - #E(F_p).
    """
    if p == 2 or p % 2 == 0:
        raise ValueError("p must be odd")
    delta = discriminant(m)
    v, rest = 0, delta
    while rest % p == 0:
        rest //= p
        v += 1
    if v != 1:
        raise ValueError(f"ord_{p}(Delta) = {v}, nodal rule needs exactly 1")
    s = [c % p for c in simplify(m)]
    chi = _char_table(p)
    deg = max((i for i, c in enumerate(s) if c), default=-1)
    xs = np.arange(p, dtype=np.int64)

    if deg >= 5:
        roots = _double_roots(s, p, xs)
        if len(roots) != 1:
            raise ValueError("reduction is not nodal (double-root count != 1)")
        x0 = roots[0]
        g = _deflate_double_root(s, deg, p, x0)
        gx0 = _poly_int_mod(g, x0, p)
        if gx0 == 0 or not _squarefree_mod(g, p, xs):
            raise ValueError("reduction is not nodal (cusp or extra multiplicity)")
        w = -int(chi[gx0])
        count = p + int(chi[_poly_values_modp(g, p, xs)].sum())
        if len(g) - 1 == 3:
            count += 1
        else:
            count += 2 if chi[g[-1]] > 0 else 0
    elif deg == 4:
        if not _squarefree_mod(s[:5], p, xs):
            raise ValueError("reduction is not nodal (finite singularity too)")
        g = s[:5]
        w = -int(chi[g[4]])
        count = p + int(chi[_poly_values_modp(g, p, xs)].sum())
        count += 2 if chi[g[4]] > 0 else 0
    else:
        raise ValueError("reduction drops degree below 4; not the nodal case")

    a = p + 1 - count
    if w not in (-1, 1) or a * a > 4 * p:
        raise ValueError("normalization is not an elliptic curve")
    # (1 + wT)(1 - aT + pT^2)
    coeffs = (1, w - a, p - a * w, w * p)
    return EulerFactor(p, coeffs, good=False, cond_exp=1), 1


def _poly_int_mod(coeffs, x, p):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _double_roots(s, p, xs) -> list[int]:
    vals = _poly_values_modp(s, p, xs)
    der = [(i * s[i]) % p for i in range(1, 7)]
    dvals = _poly_values_modp(der, p, xs)
    return [int(x) for x in xs[(vals == 0) & (dvals == 0)]]


def _deflate_double_root(s, deg, p, x0) -> list[int]:
    out = list(s[:deg + 1])
    for _ in range(2):
        # synthetic division by (x - x0)
        q = [0] * (len(out) - 1)
        acc = 0
        for i in range(len(out) - 1, 0, -1):
            acc = (acc * x0 + out[i]) % p
            q[i - 1] = acc
        rem = (acc * x0 + out[0]) % p
        if rem:
            raise ValueError("expected root is not a root")
        out = q
    return out


def _squarefree_mod(g, p, xs) -> bool:
    vals = _poly_values_modp(g, p, xs)
    der = [(i * g[i]) % p for i in range(1, len(g))]
    dvals = _poly_values_modp(der, p, xs)
    if bool(np.any((vals == 0) & (dvals == 0))):
        return False
    # a repeated irreducible quadratic factor would force ord_p >= 2 and is
    # excluded by the caller's ord_p(Delta) = 1 hypothesis
    return True


# -- Dirichlet expansion -----------------------------------------------------

def expand_dirichlet(factors: dict, bound: int, parity: str = "all") -> DirichletSeries:
    """Coefficients a_1..a_bound by multiplicativity from local factors.

    parity="odd" expands over odd n only (no factor needed at 2).
    """
    if parity not in ("all", "odd"):
        raise ValueError("parity must be 'all' or 'odd'")
    a = [0] * (bound + 1)
    if bound >= 1:
        a[1] = 1
    ppower: dict[int, list[int]] = {}
    for p in primes_upto(bound):
        if parity == "odd" and p == 2:
            continue
        if p not in factors:
            raise ValueError(f"missing Euler factor for prime {p} <= {bound}")
        kmax = 0
        q = p
        while q <= bound:
            kmax += 1
            q *= p
        ppower[p] = factors[p].dirichlet_powers(kmax)

    spf = _smallest_prime_factor(bound)
    for n in range(2, bound + 1):
        if parity == "odd" and n % 2 == 0:
            continue
        p = spf[n]
        q, m_ = p, n // p
        k = 1
        while m_ % p == 0:
            m_ //= p
            q *= p
            k += 1
        a[n] = ppower[p][k] * a[m_] if m_ > 1 else ppower[p][k]
    unknown = frozenset({2}) if parity == "odd" else frozenset()
    return DirichletSeries(bound, tuple(a), parity, unknown)


@lru_cache(maxsize=8)
def _smallest_prime_factor(n: int) -> np.ndarray:
    spf = np.zeros(n + 1, dtype=np.int64)
    for p in range(2, n + 1):
        if spf[p] == 0:
            spf[p::p][spf[p::p] == 0] = p
    return spf


# -- isogeny hash ------------------------------------------------------------

HASH_RANGE = (1 << 12, 1 << 13)


def isogeny_hash(m: WeierstrassModel) -> HashResult:
    """Sum of c_p a_p over primes in (2^12, 2^13), mod P = 2^61 - 1.

    Primes of bad reduction in the range (impossible for |Delta| <= 10^6)
    are skipped and flagged rather than assumed away.
    """
    delta = discriminant(m)
    if delta == 0:
        raise ValueError("singular model")
    lo, hi = HASH_RANGE
    ps = [p for p in primes_upto(hi - 1) if p > lo]
    total = 0
    skipped = []
    for i, p in enumerate(ps):
        if delta % p == 0:
            skipped.append(p)
            continue
        n1 = point_count(m, p, 1)
        total += PI_BASE_P_DIGITS[i] * (p + 1 - n1)
    return HashResult(total % HASH_P, bool(skipped), tuple(skipped))


# -- Sato-Tate moments -------------------------------------------------------

def st_moments(m: WeierstrassModel, bound: int, a2_bound: int = 1024) -> MomentStats:
    """Empirical moments of a_p/sqrt(p) (k <= 8) and c2/p (k <= 4) over
    good primes.

    The c2 moments need N_2 (O(p^2) work per prime), so they run only up
    to a2_bound; the trace moments run to the full bound.
    """
    if bound < 100:
        raise ValueError("bound must be >= 100")
    delta = discriminant(m)
    stats = MomentStats(bound=bound, a2_bound=min(a2_bound, bound))
    sums1 = [0.0] * 8
    sums2 = [0.0] * 4
    for p in primes_upto(bound):
        if delta % p == 0:
            continue
        n1 = point_count(m, p, 1)
        a1 = (p + 1 - n1) / p ** 0.5
        stats.a1_samples += 1
        acc = 1.0
        for k in range(8):
            acc *= a1
            sums1[k] += acc
        if p <= stats.a2_bound:
            fac = good_lfactor(m, p)
            a2 = fac.coeffs[2] / p
            stats.a2_samples += 1
            acc = 1.0
            for k in range(4):
                acc *= a2
                sums2[k] += acc
    stats.a1_moments = [s / max(stats.a1_samples, 1) for s in sums1]
    stats.a2_moments = [s / max(stats.a2_samples, 1) for s in sums2]
    return stats
