"""Monomial tree: incremental instantiation of a multivariate polynomial.

The tree has one level per variable.  A node at level m is a distinct
exponent prefix (x1..xm) of some term; the unique parent of a level-(m+1)
node is the prefix obtained by dropping the x_{m+1} exponent.  Leaves
(level n) are the terms.  Instantiating x_m at an integer value multiplies
each level-m register by value^exp and accumulates into the parent
register, so after instantiating levels n..2 the level-1 registers are the
coefficients of a univariate polynomial in x1 whose values along an
integer interval are streamed with finite differences.

All registers are 64-bit residues with wrapping arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .polyring import Poly

MASK64 = (1 << 64) - 1
_U64 = np.uint64


@dataclass(frozen=True)
class BoxSpec:
    """Closed integer intervals A1 x ... x An, innermost variable first."""

    intervals: tuple  # of (lo, hi) pairs

    def __post_init__(self):
        for lo, hi in self.intervals:
            if lo > hi:
                raise ValueError(f"empty interval [{lo}, {hi}]")

    @staticmethod
    def make(intervals: Sequence) -> "BoxSpec":
        return BoxSpec(tuple((int(lo), int(hi)) for lo, hi in intervals))

    @property
    def n(self) -> int:
        return len(self.intervals)

    def cardinality(self) -> int:
        total = 1
        for lo, hi in self.intervals:
            total *= hi - lo + 1
        return total


class MonomialTree:
    """Layered tree for one polynomial under a fixed variable order."""

    def __init__(self, nvars: int, levels, leaf_coeffs):
        # levels[m-1] = (exp_last, parent) arrays for level m (1-indexed)
        self.n = nvars
        self.exp = [lv[0] for lv in levels]
        self.parent = [lv[1] for lv in levels]
        self.reg = [np.zeros(len(lv[0]), dtype=_U64) for lv in levels]
        self.reg[-1][:] = leaf_coeffs
        self._leaf_coeffs = leaf_coeffs.copy()
        self.deg = [int(e.max()) if len(e) else 0 for e in self.exp]
        self.adds = 0  # finite-difference addition counter
        # segment structure for fast parent accumulation (parents are
        # consecutive because nodes are sorted by prefix)
        self._seg = []
        for m in range(len(self.exp)):
            par = self.parent[m]
            if m == 0 or len(par) == 0:
                self._seg.append(None)
                continue
            if np.any(np.diff(par) < 0):
                raise AssertionError("parent indices must be nondecreasing")
            starts = np.flatnonzero(np.r_[True, np.diff(par) != 0])
            self._seg.append((starts, par[starts]))

    # -- structure ---------------------------------------------------------

    def node_count(self) -> int:
        """Total nodes over levels 1..n (leaves included, no root)."""
        return sum(len(e) for e in self.exp)

    def fused_node_count(self) -> int:
        """Storage cells of the fused evaluator: a root cell, one cell per
        node at levels 1..n-1, and a cell per leaf except that a leaf which
        is its parent's only child shares the parent's cell (its constant
        folds into the single multiplication that instantiates x_n)."""
        if self.n == 1:
            return 1 + len(self.exp[0])
        inner = sum(len(e) for e in self.exp[:-1])
        child_counts = np.bincount(self.parent[-1], minlength=len(self.exp[-2]))
        only_children = int(np.count_nonzero(child_counts == 1))
        leaves = len(self.exp[-1])
        return 1 + inner + (leaves - only_children)

    def level_sizes(self) -> list[int]:
        return [len(e) for e in self.exp]

    def nominal_storage_bytes(self) -> int:
        """8 bytes per register, 1 per exponent, 4 per parent link."""
        nodes = self.node_count()
        links = sum(len(p) for p in self.parent[1:])
        return 9 * nodes + 4 * links

    def clone(self) -> "MonomialTree":
        t = object.__new__(MonomialTree)
        t.n = self.n
        t.exp = self.exp
        t.parent = self.parent
        t.reg = [r.copy() for r in self.reg]
        t._leaf_coeffs = self._leaf_coeffs
        t.deg = self.deg
        t.adds = 0
        t._seg = self._seg
        return t

    # -- instantiation -----------------------------------------------------

    def instantiate_level(self, m: int, value: int) -> None:
        """Substitute x_m = value; level m-1 registers become the
        coefficients of the partially instantiated polynomial."""
        if m < 2 or m > self.n:
            raise ValueError(f"level {m} out of range 2..{self.n}")
        pows = _power_row(value, self.deg[m - 1])
        contrib = self.reg[m - 1] * pows[self.exp[m - 1]]
        dst = self.reg[m - 2]
        dst[:] = 0
        starts, ids = self._seg[m - 1]
        dst[ids] = np.add.reduceat(contrib, starts)

    def univariate_coeffs(self) -> np.ndarray:
        """Level-1 registers as a dense coefficient array c[0..deg]."""
        coeffs = np.zeros(self.deg[0] + 1, dtype=_U64)
        coeffs[self.exp[0]] = self.reg[0]
        return coeffs

    # -- full enumeration (pure finite-difference path) ---------------------

    def enumerate(self, box: BoxSpec, sink: Callable) -> None:
        """Call sink(point, residue) at every lattice point of the box, in
        lexicographic order with the outermost variable slowest.  The
        innermost loop costs exactly deg_x1 wrapping additions per point."""
        if box.n != self.n:
            raise ValueError("box dimension does not match variable count")
        point = [0] * self.n
        if self.n == 1:
            self._run_level1(box.intervals[0], point, sink)
            return

        def rec(m: int) -> None:
            lo, hi = box.intervals[m - 1]
            for v in range(lo, hi + 1):
                point[m - 1] = v
                self.instantiate_level(m, v)
                if m == 2:
                    self._run_level1(box.intervals[0], point, sink)
                else:
                    rec(m - 1)

        rec(self.n)

    def _run_level1(self, interval, point, sink):
        lo, hi = interval
        coeffs = [int(c) for c in self.univariate_coeffs()]
        regs = diff_init(coeffs, lo)
        point[0] = lo
        sink(tuple(point), regs.current())
        for v in range(lo + 1, hi + 1):
            point[0] = v
            sink(tuple(point), diff_step(regs))
            self.adds += regs.d


class DiffRegisters:
    """Forward-difference registers of a univariate polynomial mod 2^64."""

    __slots__ = ("r", "d")

    def __init__(self, r: list[int]):
        self.r = r
        self.d = len(r) - 1

    def current(self) -> int:
        return self.r[0]


def diff_init(coeffs: Sequence[int], start: int) -> DiffRegisters:
    """Registers holding successive forward differences of g at start."""
    d = len(coeffs) - 1
    vals = [_eval_mod64(coeffs, start + k) for k in range(d + 1)]
    for j in range(1, d + 1):
        for i in range(d, j - 1, -1):
            vals[i] = (vals[i] - vals[i - 1]) & MASK64
    return DiffRegisters(vals)


def diff_step(regs: DiffRegisters) -> int:
    """Advance one step (exactly deg additions) and return the new value."""
    r = regs.r
    for i in range(regs.d):
        r[i] = (r[i] + r[i + 1]) & MASK64
    return r[0]


def _eval_mod64(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    xm = x & MASK64
    for c in reversed(coeffs):
        acc = (acc * xm + c) & MASK64
    return acc


def _power_row(value: int, deg: int) -> np.ndarray:
    # plain-int arithmetic avoids numpy's scalar overflow warning; the
    # wraparound mod 2^64 is intended
    pows = np.empty(deg + 1, dtype=_U64)
    v = value & MASK64
    acc = 1
    for i in range(deg + 1):
        pows[i] = acc
        acc = (acc * v) & MASK64
    return pows


def build_tree(poly: Poly, var_order: Sequence[int]) -> MonomialTree:
    """Monomial tree of poly with var_order[0] the innermost variable."""
    if not poly:
        raise ValueError("cannot build a monomial tree for the zero polynomial")
    n = poly.ring.nvars
    if sorted(var_order) != list(range(n)):
        raise ValueError("var_order must be a permutation of the variables")

    terms = []
    for exps, c in poly.iter_terms():
        terms.append((tuple(exps[v] for v in var_order), c & MASK64))
    terms.sort()

    levels = []
    prefix_index: dict[tuple, int] = {(): 0}
    for m in range(1, n + 1):
        prefixes = sorted({t[0][:m] for t in terms})
        idx = {p: i for i, p in enumerate(prefixes)}
        exp_last = np.array([p[-1] for p in prefixes], dtype=np.int64)
        parent = np.array([prefix_index[p[:-1]] for p in prefixes], dtype=np.int64)
        levels.append((exp_last, parent))
        prefix_index = idx

    leaf_coeffs = np.zeros(len(levels[-1][0]), dtype=_U64)
    for exps, c in terms:
        leaf_coeffs[prefix_index[exps]] = c
    return MonomialTree(n, levels, leaf_coeffs)


class TreeScanner:
    """Vectorized box scan: outer variables by tree instantiation, the (up
    to) three innermost variables evaluated on tiles with uint64 tensor
    contractions.

    Tiles are handed to an emit callback as
        emit(outer, parts, tile, mask)
    where outer is the tuple of current values of x_{inner+1}..x_n, parts
    is the per-axis (values, vandermonde) chunk pair for x1..x_inner, tile
    is the residue array indexed [i1, i2, i3] by value position on each
    inner axis, and mask flags residues passing the window filter (mask is
    None when no window was given, in which case every tile is emitted).
    """

    def __init__(self, tree: MonomialTree):
        self.tree = tree
        self.inner = min(3, tree.n)
        exp = tree.exp
        parent = tree.parent
        # full exponent tuple of each node at the gather level
        if self.inner == 1:
            self.gather = (exp[0],)
        elif self.inner == 2:
            self.gather = (exp[0][parent[1]], exp[1])
        else:
            self.gather = (exp[0][parent[1][parent[2]]], exp[1][parent[2]], exp[2])
        self.dims = tuple(int(g.max()) + 1 for g in self.gather)
        self.flat_gather = np.ravel_multi_index(self.gather, self.dims)

    def scan(self, box: BoxSpec, window: tuple[int, int] | None,
             emit: Callable, tile_limits=(4096, 64, 64),
             skip_zero: bool = False) -> int:
        """Run the scan over the box; returns the number of points visited.

        window = (lo, hi) flags residues r with r <= lo or r >= hi (the
        two's-complement window |r| <= D when lo = D, hi = 2^64 - D).
        skip_zero drops residues that are exactly 0; sound for the
        discriminant filter because r = 0 means the exact value is either
        0 (singular) or at least 2^64 in absolute value, never a hit.
        """
        tree = self.tree
        n = tree.n
        if box.n != n:
            raise ValueError("box dimension does not match variable count")
        inner = self.inner
        axes = []
        for i in range(inner):
            lo, hi = box.intervals[i]
            vals = np.arange(lo, hi + 1, dtype=np.int64)
            limit = tile_limits[i] if i < len(tile_limits) else 64
            deg = tree.deg[i]
            chunks = []
            for s in range(0, len(vals), limit):
                chunk = vals[s:s + limit]
                vander = np.empty((len(chunk), deg + 1), dtype=_U64)
                vander[:, 0] = 1
                cu = chunk.astype(_U64)
                for e in range(1, deg + 1):
                    vander[:, e] = vander[:, e - 1] * cu
                chunks.append((chunk, vander))
            axes.append(chunks)

        count = 0
        tensor = np.zeros(int(np.prod(self.dims)), dtype=_U64)
        gidx = self.flat_gather
        lvl = inner - 1
        if window is not None:
            wlo = _U64(window[0])
            whi = _U64(window[1])
            one = _U64(1)
            wlo_shifted = wlo - one  # (r - 1) <= lo - 1 tests 1 <= r <= lo

        def eval_tiles(outer):
            nonlocal count
            tensor[:] = 0
            tensor[gidx] = tree.reg[lvl]
            C = tensor.reshape(self.dims)
            for parts in _chunk_product(axes):
                tile = C
                for _, vander in reversed(parts):
                    tile = np.tensordot(vander, tile, axes=(1, tile.ndim - 1))
                count += tile.size
                if window is None:
                    emit(outer, parts, tile, None)
                else:
                    if skip_zero:
                        mask = ((tile - one) <= wlo_shifted) | (tile >= whi)
                    else:
                        mask = (tile <= wlo) | (tile >= whi)
                    if mask.any():
                        emit(outer, parts, tile, mask)

        if inner == n:
            eval_tiles(())
            return count

        outer_vals = [0] * (n - inner)

        def rec(m: int) -> None:
            lo, hi = box.intervals[m - 1]
            for v in range(lo, hi + 1):
                outer_vals[m - 1 - inner] = v
                tree.instantiate_level(m, v)
                if m == inner + 1:
                    eval_tiles(tuple(outer_vals))
                else:
                    rec(m - 1)

        rec(n)
        return count


def _chunk_product(axes):
    """Iterate chunk combinations, innermost axis fastest."""
    if len(axes) == 1:
        for a in axes[0]:
            yield (a,)
    elif len(axes) == 2:
        for b in axes[1]:
            for a in axes[0]:
                yield (a, b)
    else:
        for c in axes[2]:
            for b in axes[1]:
                for a in axes[0]:
                    yield (a, b, c)
