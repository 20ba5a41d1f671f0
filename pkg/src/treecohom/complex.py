"""The exterior complex of a Lie algebra model, split into weight blocks.

Every monomial of the exterior algebra is enumerated once, bucketed by
(weight, degree) and sorted canonically inside its bucket.  The coboundary
``D``, the boundary ``delta`` and the Hodge Laplacian ``L = D delta + delta D``
all preserve weight, so everything is computed block by block.

Ranks are exact.  Modular ranks are used only when a proven upper bound
shows they are already exact; see :func:`treecohom.linalg.certified_rank`.
"""

from __future__ import annotations

import json
import os
import weakref
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .exterior import ChainVector, is_harmonic
from .liealg import LieAlgebraModel
from .linalg import (SparseExactMatrix, certified_rank, certify_chain_ranks, exact_matmul, exact_rank,
                     modular_rank, nullspace, rref)

MAX_ENUM_DIM = 26


class CohomologyMismatch(ArithmeticError):
    """Two independent computations of the same block invariant disagree."""

    def __init__(self, message, degree=None, weight=None):
        super().__init__(message)
        self.degree = degree
        self.weight = weight


@dataclass(frozen=True)
class BettiTable:
    dim: int
    betti: tuple[int, ...]
    per_weight: dict = field(compare=False)  # (p, weight) -> dim, nonzero entries only

    @property
    def total(self) -> int:
        return sum(self.betti)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "betti": list(self.betti),
            "per_weight": [{"p": p, "weight": list(w), "dim": d} for (p, w), d in sorted(self.per_weight.items())],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class WeightBlock:
    """Everything computed on one weight: dimensions, ranks and kernels per degree."""

    weight: tuple[int, ...]
    dims: list[int]
    d_rank: list[int]          # rank D_p : C_p -> C_{p+1}
    b_rank: list[int]          # rank delta_p : C_p -> C_{p-1}   (index p)
    betti_rank: list[int]      # dim ker D_p - rank D_{p-1}
    laplacian_kernel: list[int] | None = None
    joint_kernel: list[int] | None = None  # dim (ker D_p  cap  ker delta_p)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TREECOHOM_THREADS", "1")))
    except ValueError:
        return 1


class GradedComplex:
    def __init__(self, L: LieAlgebraModel, max_dim: int = MAX_ENUM_DIM):
        N = L.dim
        if N > max_dim:
            raise ValueError(f"exterior algebra of a {N}-dimensional algebra is too large to enumerate "
                             f"(limit {max_dim})")
        self.L = L
        self.N = N
        self.brackets = np.ascontiguousarray(L.bracket_list)
        W = L.weight_array.astype(np.int32)
        size = 1 << N
        wt = np.zeros((size, W.shape[1]), dtype=np.int32)
        deg = np.zeros(size, dtype=np.int8)
        rev = np.zeros(size, dtype=np.int64)
        for b in range(N):
            lo, hi = 1 << b, 2 << b
            wt[lo:hi] = wt[:lo] + W[b]
            deg[lo:hi] = deg[:lo] + 1
            rev[lo:hi] = rev[:lo] | (1 << (N - 1 - b))
        uniq, wid = np.unique(wt, axis=0, return_inverse=True)
        wid = wid.reshape(-1)
        # canonical order inside a block = lexicographic on index tuples = decreasing bit-reversed mask
        order = np.lexsort((-rev, deg, wid))
        self.masks = order.astype(np.int64)  # position in `order` is the mask itself
        sw, sd = wid[order], deg[order].astype(np.int64)
        starts = np.flatnonzero(np.r_[True, (sw[1:] != sw[:-1]) | (sd[1:] != sd[:-1])])
        stops = np.r_[starts[1:], size]
        self.pos = np.empty(size, dtype=np.int64)
        self.weights = [tuple(int(x) for x in row) for row in uniq]
        self._slices: dict[tuple[int, ...], dict[int, tuple[int, int]]] = {w: {} for w in self.weights}
        for a, b in zip(starts.tolist(), stops.tolist()):
            w = self.weights[int(sw[a])]
            self._slices[w][int(sd[a])] = (a, b)
            self.pos[self.masks[a:b]] = np.arange(b - a, dtype=np.int64)
        self._blocks: dict[tuple[int, ...], WeightBlock] = {}
        self.stats: dict[str, int] = {}

    # -- blocks and matrices ------------------------------------------------------

    def _key(self, w) -> tuple[int, ...]:
        w = tuple(int(x) for x in w)
        if len(w) != self.L.diagram.node_count + 1:
            raise ValueError(f"weight {w} should have {self.L.diagram.node_count + 1} coordinates")
        return w

    def block(self, p: int, w) -> np.ndarray:
        """Monomials of degree ``p`` and weight ``w`` in canonical order."""
        sl = self._slices.get(self._key(w), {}).get(p)
        if sl is None:
            return np.zeros(0, dtype=np.int64)
        return self.masks[sl[0]:sl[1]]

    def dims(self, w) -> list[int]:
        return [self.block(p, w).size for p in range(self.N + 1)]

    def coboundary_matrix(self, p: int, w) -> SparseExactMatrix:
        src, dst = self.block(p, w), self.block(p + 1, w)
        if src.size == 0 or dst.size == 0:
            return SparseExactMatrix.from_coo((dst.size, src.size), [], [], [], dst, src)
        r, c, v = kernels.coboundary_coo(src, self.brackets, self.pos)
        return SparseExactMatrix.from_coo((dst.size, src.size), r, c, v, dst, src)

    def boundary_matrix(self, p: int, w) -> SparseExactMatrix:
        src, dst = self.block(p, w), self.block(p - 1, w)
        if src.size == 0 or dst.size == 0:
            return SparseExactMatrix.from_coo((dst.size, src.size), [], [], [], dst, src)
        r, c, v = kernels.boundary_coo(src, self.brackets, self.pos)
        return SparseExactMatrix.from_coo((dst.size, src.size), r, c, v, dst, src)

    def laplacian_matrix(self, p: int, w) -> SparseExactMatrix:
        """``D_{p-1} delta_p + delta_{p+1} D_p`` on the degree-``p`` block."""
        return self.coboundary_matrix(p - 1, w) @ self.boundary_matrix(p, w) + \
            self.boundary_matrix(p + 1, w) @ self.coboundary_matrix(p, w)

    # -- ranks and kernels -----------------------------------------------------------

    def _dense(self, p: int, w, co: bool) -> np.ndarray:
        """Dense integer matrix of ``D_p`` (``co``) or ``delta_p`` on a block."""
        src = self.block(p, w)
        dst = self.block(p + 1 if co else p - 1, w)
        out = np.zeros((dst.size, src.size), dtype=np.int64)
        if src.size and dst.size:
            fn = kernels.coboundary_coo if co else kernels.boundary_coo
            r, c, v = fn(src, self.brackets, self.pos)
            np.add.at(out, (r, c), v)
        return out

    def weight_block(self, w, laplacian: bool = True) -> WeightBlock:
        w = self._key(w)
        have = self._blocks.get(w)
        if have is not None and (have.laplacian_kernel is not None or not laplacian):
            return have
        N = self.N
        dims = self.dims(w)
        stats = self.stats
        D = [self._dense(p, w, True) for p in range(N)]
        B = [self._dense(p, w, False) for p in range(N + 1)]
        d_rank = certify_chain_ranks(dims, [modular_rank(m) for m in D],
                                     lambda p: exact_rank(D[p]), stats)
        # boundary maps read in reverse form a complex C_N -> ... -> C_0
        rdims = dims[::-1]
        rb = certify_chain_ranks(rdims, [modular_rank(B[N - t]) for t in range(N)],
                                 lambda t: exact_rank(B[N - t]), stats)
        b_rank = [0] + [rb[N - p] for p in range(1, N + 1)]
        rank = lambda p: d_rank[p] if 0 <= p < N else 0  # noqa: E731
        brank = lambda p: b_rank[p] if 0 <= p <= N else 0  # noqa: E731
        betti_rank = [dims[p] - rank(p) - rank(p - 1) for p in range(N + 1)]
        blk = WeightBlock(w, dims, d_rank, b_rank, betti_rank)
        if laplacian:
            lap, joint = [0] * (N + 1), [0] * (N + 1)
            for p in range(N + 1):
                if dims[p] == 0:
                    continue
                Lp = np.zeros((dims[p], dims[p]), dtype=np.int64)
                if p >= 1:
                    Lp = Lp + exact_matmul(D[p - 1], B[p])
                if p < N:
                    Lp = Lp + exact_matmul(B[p + 1], D[p])
                upper = min(rank(p - 1), brank(p)) + min(brank(p + 1), rank(p))
                lap[p] = dims[p] - certified_rank(Lp, upper, stats=stats)
                stack = np.vstack([D[p], B[p]]) if p < N else B[p]
                joint[p] = dims[p] - certified_rank(stack, rank(p) + brank(p), stats=stats)
                if lap[p] != joint[p]:
                    raise CohomologyMismatch(
                        f"ker L ({lap[p]}) != ker D cap ker delta ({joint[p]}) at p={p}, w={w}", p, w)
            blk.laplacian_kernel, blk.joint_kernel = lap, joint
        self._blocks[w] = blk
        return blk

    def all_blocks(self, laplacian: bool = True) -> list[WeightBlock]:
        n = _threads()
        if n > 1:
            with ThreadPoolExecutor(n) as ex:
                return list(ex.map(lambda w: self.weight_block(w, laplacian), self.weights))
        return [self.weight_block(w, laplacian) for w in self.weights]

    def betti(self, method: str = "both") -> BettiTable:
        if method not in ("laplacian", "rank", "both"):
            raise ValueError(f"method must be laplacian, rank or both, got {method!r}")
        blocks = self.all_blocks(laplacian=method != "rank")
        totals = [0] * (self.N + 1)
        per_weight = {}
        for blk in blocks:
            for p in range(self.N + 1):
                if method == "rank":
                    d = blk.betti_rank[p]
                elif method == "laplacian":
                    d = blk.laplacian_kernel[p]
                else:
                    d = blk.laplacian_kernel[p]
                    if d != blk.betti_rank[p]:
                        raise CohomologyMismatch(
                            f"Laplacian kernel {d} != rank-nullity {blk.betti_rank[p]} at p={p}, "
                            f"w={blk.weight}", p, blk.weight)
                if d:
                    per_weight[(p, blk.weight)] = d
                    totals[p] += d
        return BettiTable(self.N, tuple(totals), per_weight)

    def harmonic_basis(self, p: int, w) -> list[ChainVector]:
        """Exact basis of ``ker L`` on a block, in echelon form on canonical monomial order."""
        w = self._key(w)
        if p == 0:
            return [] if any(w) else [ChainVector.one()]
        cols = self.block(p, w)
        if cols.size == 0:
            return []
        Lp = self.laplacian_matrix(p, w)
        ker = nullspace(Lp, cols.size)
        if not ker:
            return []
        rows, _ = rref(ker)
        out = []
        for row in rows:
            v = ChainVector({int(cols[c]): x for c, x in row.items()}).primitive()
            if not is_harmonic(self.L, v):
                raise CohomologyMismatch(f"kernel vector of L is not closed and co-closed at p={p}, w={w}", p, w)
            out.append(v)
        return out


_COMPLEXES: "weakref.WeakKeyDictionary[LieAlgebraModel, GradedComplex]" = weakref.WeakKeyDictionary()


def graded_complex(L: LieAlgebraModel) -> GradedComplex:
    gc = _COMPLEXES.get(L)
    if gc is None:
        gc = _COMPLEXES[L] = GradedComplex(L)
    return gc


def coboundary_matrix(L: LieAlgebraModel, p: int, w) -> SparseExactMatrix:
    return graded_complex(L).coboundary_matrix(p, w)


def boundary_matrix(L: LieAlgebraModel, p: int, w) -> SparseExactMatrix:
    return graded_complex(L).boundary_matrix(p, w)


def laplacian_matrix(L: LieAlgebraModel, p: int, w) -> SparseExactMatrix:
    return graded_complex(L).laplacian_matrix(p, w)


def laplacian_kernel_dim(L: LieAlgebraModel, p: int, w) -> int:
    blk = graded_complex(L).weight_block(w)
    return blk.laplacian_kernel[p]


def betti(L: LieAlgebraModel, method: str = "both") -> BettiTable:
    return graded_complex(L).betti(method)


def betti_per_weight(L: LieAlgebraModel) -> dict:
    return dict(betti(L, "both").per_weight)


def harmonic_basis(L: LieAlgebraModel, p: int, w) -> list[ChainVector]:
    return graded_complex(L).harmonic_basis(p, w)


def weights_of(L: LieAlgebraModel) -> list[tuple[int, ...]]:
    return list(graded_complex(L).weights)
