"""Exact sparse linear algebra over the integers / rationals.

Ranks are computed by fraction-free elimination on sparse integer rows.  A
modular rank (dense elimination over a word-size prime field) is always a
lower bound for the rational rank; callers that also hold an upper bound
can accept it without running the exact elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np
import scipy.sparse as sp

from . import kernels

PRIMES = (2147483647, 2147483629)


@dataclass(frozen=True, eq=False)
class SparseExactMatrix:
    """Integer matrix in COO form, duplicates already summed and zeros dropped.

    ``row_labels`` / ``col_labels`` are the exterior monomials (bitmasks)
    indexing rows and columns.
    """

    shape: tuple[int, int]
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    row_labels: np.ndarray
    col_labels: np.ndarray

    @classmethod
    def from_coo(cls, shape, rows, cols, vals, row_labels=None, col_labels=None):
        a = sp.coo_matrix((np.asarray(vals, np.int64), (np.asarray(rows, np.int64), np.asarray(cols, np.int64))),
                          shape=shape).tocsr()
        a.sum_duplicates()
        a.eliminate_zeros()
        a = a.tocoo()
        order = np.lexsort((a.col, a.row))
        if row_labels is None:
            row_labels = np.arange(shape[0], dtype=np.int64)
        if col_labels is None:
            col_labels = np.arange(shape[1], dtype=np.int64)
        return cls(tuple(shape), a.row[order].astype(np.int64), a.col[order].astype(np.int64),
                   a.data[order].astype(np.int64), np.asarray(row_labels, np.int64),
                   np.asarray(col_labels, np.int64))

    @classmethod
    def from_dense(cls, a, row_labels=None, col_labels=None):
        a = np.asarray(a, dtype=np.int64)
        r, c = np.nonzero(a)
        return cls.from_coo(a.shape, r, c, a[r, c], row_labels, col_labels)

    @property
    def nnz(self) -> int:
        return int(self.vals.size)

    def is_zero(self) -> bool:
        return self.nnz == 0

    def to_scipy(self):
        return sp.csr_matrix((self.vals, (self.rows, self.cols)), shape=self.shape, dtype=np.int64)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.shape, dtype=np.int64)
        out[self.rows, self.cols] = self.vals
        return out

    def row_dicts(self) -> list[dict[int, int]]:
        out: list[dict[int, int]] = [dict() for _ in range(self.shape[0])]
        for r, c, v in zip(self.rows.tolist(), self.cols.tolist(), self.vals.tolist()):
            out[r][c] = v
        return out

    @property
    def T(self) -> "SparseExactMatrix":
        return SparseExactMatrix.from_coo(self.shape[::-1], self.cols, self.rows, self.vals,
                                          self.col_labels, self.row_labels)

    def __matmul__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        _check_product_bound(self, other)
        prod = (self.to_scipy() @ other.to_scipy()).tocoo()
        return SparseExactMatrix.from_coo((self.shape[0], other.shape[1]), prod.row, prod.col, prod.data,
                                          self.row_labels, other.col_labels)

    def __add__(self, other: "SparseExactMatrix") -> "SparseExactMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return SparseExactMatrix.from_coo(
            self.shape, np.concatenate([self.rows, other.rows]), np.concatenate([self.cols, other.cols]),
            np.concatenate([self.vals, other.vals]), self.row_labels, self.col_labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseExactMatrix):
            return NotImplemented
        return (self.shape == other.shape and np.array_equal(self.rows, other.rows)
                and np.array_equal(self.cols, other.cols) and np.array_equal(self.vals, other.vals))

    __hash__ = None


def vstack(a: SparseExactMatrix, b: SparseExactMatrix) -> SparseExactMatrix:
    if a.shape[1] != b.shape[1]:
        raise ValueError("column counts differ")
    return SparseExactMatrix.from_coo(
        (a.shape[0] + b.shape[0], a.shape[1]), np.concatenate([a.rows, b.rows + a.shape[0]]),
        np.concatenate([a.cols, b.cols]), np.concatenate([a.vals, b.vals]),
        np.concatenate([a.row_labels, b.row_labels]), a.col_labels)


def exact_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact product of two dense integer matrices.

    When every partial sum is provably below 2**53 the product is done in
    float64 (BLAS) and is still exact; otherwise int64, or Python ints when
    even that could overflow.
    """
    if a.size == 0 or b.size == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    bound = int(np.abs(a).max()) * int(np.abs(b).max()) * a.shape[1]
    if bound < 1 << 53:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < 1 << 62:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def _check_product_bound(a, b):
    # int64 products stay exact while |entries| * inner nnz stays far below 2**63
    if a.nnz == 0 or b.nnz == 0:
        return
    bound = int(np.abs(a.vals).max()) * int(np.abs(b.vals).max()) * max(a.shape[1], 1)
    if bound >= 1 << 62:
        raise OverflowError("integer sparse product could overflow int64")


# -- exact elimination ---------------------------------------------------------------

def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    return {k: v // g for k, v in row.items()}


def _as_rows(M) -> list[dict[int, int]]:
    if isinstance(M, SparseExactMatrix):
        return M.row_dicts()
    a = np.asarray(M, dtype=object)
    if a.ndim != 2:
        if a.size == 0:
            return []
        raise ValueError("expected a 2-d matrix")
    return [{j: int(v) for j, v in enumerate(row) if v} for row in a]


def exact_rank(M) -> int:
    """Rank over the rationals by fraction-free sparse elimination.

    Rows are reduced one at a time against the pivots found so far; each
    pivot row is kept primitive (content divided out) so entries stay small.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    rows = _as_rows(M)
    rows.sort(key=len)
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = _primitive(row)
                rank += 1
                break
            a, b = row[lead], piv[lead]
            g = gcd(a, b)
            fa, fb = b // g, a // g
            new = {k: fa * v for k, v in row.items()}
            for k, v in piv.items():
                x = new.get(k, 0) - fb * v
                if x:
                    new[k] = x
                else:
                    new.pop(k, None)
            row = _primitive(new) if new else new
    return rank


def rref(M):
    """Reduced row echelon form over the rationals.

    Returns ``(rows, pivot_cols)`` with ``rows`` a list of ``{col: Fraction}``
    whose pivot entries equal 1.
    """
    rows = [{k: Fraction(v) for k, v in r.items()} for r in _as_rows(M)]
    pivots: list[tuple[int, dict]] = []
    for row in rows:
        for col, prow in pivots:
            f = row.get(col)
            if f:
                for k, v in prow.items():
                    x = row.get(k, 0) - f * v
                    if x:
                        row[k] = x
                    else:
                        row.pop(k, None)
        if not row:
            continue
        lead = min(row)
        inv = 1 / row[lead]
        row = {k: v * inv for k, v in row.items()}
        for _, prow in pivots:
            f = prow.get(lead)
            if f:
                for k, v in row.items():
                    x = prow.get(k, 0) - f * v
                    if x:
                        prow[k] = x
                    else:
                        prow.pop(k, None)
        pivots.append((lead, row))
    pivots.sort(key=lambda t: t[0])
    return [r for _, r in pivots], [c for c, _ in pivots]


def nullspace(M, ncols: int | None = None) -> list[list[int]]:
    """Integer basis of the right kernel, one primitive vector per free column.

    The vector attached to free column ``f`` vanishes on every other free
    column; vectors come in increasing order of ``f``.
    """
    if ncols is None:
        ncols = M.shape[1] if hasattr(M, "shape") else (len(M[0]) if len(M) else 0)
    rows, piv = rref(M)
    pset = set(piv)
    out = []
    for f in range(ncols):
        if f in pset:
            continue
        vec = {f: Fraction(1)}
        for c, r in zip(piv, rows):
            v = r.get(f)
            if v:
                vec[c] = -v
        den = 1
        for v in vec.values():
            den = den * v.denominator // gcd(den, v.denominator)
        ints = [0] * ncols
        for k, v in vec.items():
            ints[k] = int(v * den)
        g = 0
        for v in ints:
            g = gcd(g, v)
        out.append([v // g for v in ints])
    return out


# -- modular ranks -----------------------------------------------------------------

def modular_rank(M, p: int = PRIMES[0]) -> int:
    """Rank over GF(p); never exceeds the rational rank."""
    if isinstance(M, SparseExactMatrix):
        if M.nnz == 0:
            return 0
        a = np.zeros(M.shape, dtype=np.int64)
        a[M.rows, M.cols] = M.vals % p
    else:
        a = np.asarray(M)
        if a.size == 0 or not a.any():
            return 0
        a = (a % p).astype(np.int64) if a.dtype == object else a.astype(np.int64, copy=False)
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return kernels.rank_mod_p(a, p)


def certified_rank(M, upper: int | None = None, primes=PRIMES, stats: dict | None = None) -> int:
    """Exact rank, using modular ranks when they meet a proven upper bound.

    A rank over GF(p) is a lower bound for the rational rank.  If it reaches
    ``upper`` (or ``min(shape)``) the value is exact.  Otherwise the next prime
    is tried, and finally the exact elimination decides.
    """
    cap = min(M.shape) if upper is None else min(upper, min(M.shape))
    nnz = M.nnz if isinstance(M, SparseExactMatrix) else int(np.count_nonzero(M))
    if nnz == 0:
        return 0
    best = 0
    for p in primes:
        best = max(best, modular_rank(M, p))
        if best >= cap:
            if stats is not None:
                stats["modular"] = stats.get("modular", 0) + 1
            return best
    if stats is not None:
        stats["exact"] = stats.get("exact", 0) + 1
    return exact_rank(M)


def certify_chain_ranks(dims, lower, exact_of, stats: dict | None = None) -> list[int]:
    """Exact ranks ``r_p`` of the maps ``f_p: C_p -> C_{p+1}`` of a complex.

    ``dims[p] = dim C_p`` and ``lower[p]`` is a lower bound for ``rank f_p``
    (e.g. a modular rank).  Because ``f_{p+1} f_p = 0``, ``r_p + r_{p+1} <=
    dims[p+1]``; any lower bound that meets the resulting upper bound is
    exact.  ``exact_of(p)`` computes the remaining ones exactly.
    """
    n = len(lower)
    lo = list(lower)
    known = [False] * n
    while True:
        changed = False
        for p in range(n):
            if known[p]:
                continue
            up = min(dims[p], dims[p + 1])
            if p > 0:
                up = min(up, dims[p] - lo[p - 1])
            if p + 1 < n:
                up = min(up, dims[p + 1] - lo[p + 1])
            if lo[p] > up:
                raise ArithmeticError(f"rank bounds crossed at degree {p}: {lo[p]} > {up}")
            if lo[p] == up:
                known[p] = True
                changed = True
        if all(known):
            break
        if not changed:
            # settle the cheapest uncertified map exactly, then propagate
            p = min((q for q in range(n) if not known[q]), key=lambda q: dims[q] * dims[q + 1])
            lo[p] = exact_of(p)
            known[p] = True
            if stats is not None:
                stats["exact"] = stats.get("exact", 0) + 1
    return lo
