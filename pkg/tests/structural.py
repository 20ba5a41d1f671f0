"""Structural invariants shared by the acceptance suite and the unit tests.

Each function returns a list of human readable failures (empty means pass).
"""
from itertools import combinations

import numpy as np

from treecohom import builtin_diagram, lie_algebra
from treecohom.complex import graded_complex, harmonic_basis, weights_of
from treecohom.diagram import DiagramError, is_homoclan
from treecohom.exterior import ChainVector, boundary, coboundary
from treecohom.liealg import MonomialOperator, bracket, center, embed_operator
from treecohom.linalg import exact_matmul


def differentials(L):
    """D^2 = 0, delta^2 = 0 and D_p equal to the transpose of delta_{p+1} on every weight block."""
    gc = graded_complex(L)
    bad = []
    for w in gc.weights:
        D = [gc._dense(p, w, True) for p in range(gc.N)]
        B = [gc._dense(p, w, False) for p in range(gc.N + 1)]
        for p in range(gc.N - 1):
            if D[p].size and D[p + 1].size and exact_matmul(D[p + 1], D[p]).any():
                bad.append(f"D^2 != 0 at p={p} w={w}")
        for p in range(2, gc.N + 1):
            if B[p].size and B[p - 1].size and exact_matmul(B[p - 1], B[p]).any():
                bad.append(f"delta^2 != 0 at p={p} w={w}")
        for p in range(gc.N):
            if not np.array_equal(D[p], B[p + 1].T):
                bad.append(f"D_{p} is not the transpose of delta_{p + 1} at w={w}")
    return bad


def brackets(L):
    """Closure, antisymmetry, Jacobi and weight additivity on the structure table."""
    bad = []
    n = L.dim
    for i in range(n):
        for j in range(n):
            terms = bracket(L.basis[i], L.basis[j])
            got = L.bracket_indices(i, j)
            if not terms:
                if got is not None:
                    bad.append(f"table has a zero bracket ({i},{j})")
                continue
            if len(terms) != 1 or terms[0][1] not in L.index:
                bad.append(f"[{L.basis[i]}, {L.basis[j]}] leaves the basis")
                continue
            c, op = terms[0]
            if got != (c, L.index[op]):
                bad.append(f"table entry ({i},{j}) = {got}, direct bracket {c}*{op}")
            W = L.weight_array
            if not np.array_equal(W[i] + W[j], W[L.index[op]]):
                bad.append(f"weight not additive on ({i},{j})")

    def br(i, vec):
        out = {}
        for k, c in vec.items():
            r = L.bracket_indices(i, k)
            if r:
                out[r[1]] = out.get(r[1], 0) + c * r[0]
        return out

    for i, j, k in combinations(range(n), 3):
        tot = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for key, val in br(a, br(b, {c: 1})).items():
                tot[key] = tot.get(key, 0) + val
        if any(tot.values()):
            bad.append(f"Jacobi fails on ({i},{j},{k})")
    return bad


def center_is_tips(L):
    T = L.diagram
    want = {L.index[MonomialOperator.make({}, t)] for t in T.tips}
    got = center(L)
    return [] if got == want else [f"center {sorted(got)} != tip derivatives {sorted(want)}"]


def homoclan_subdiagrams(T):
    """Every proper connected ancestor-closed subdiagram, with its embedding."""
    out = []
    for k in range(1, T.node_count):
        for keep in combinations(T.nodes, k):
            try:
                sub, emb = T.relabel(keep)
            except DiagramError:
                continue
            if is_homoclan(sub, T, emb):
                out.append((sub, emb))
    return out


def harmonic_inclusion(T, sub, emb):
    """Harmonics of the subalgebra stay closed and co-closed inside the ambient complex."""
    Ls, L = lie_algebra(sub), lie_algebra(T)
    to_amb = [L.index[embed_operator(op, emb)] for op in Ls.basis]
    bad = []
    for w in weights_of(Ls):
        for p in range(1, Ls.dim + 1):
            for v in harmonic_basis(Ls, p, w):
                img = {}
                for m, c in v.terms.items():
                    idx = [to_amb[i] for i, bit in enumerate(bin(m)[:1:-1]) if bit == "1"]
                    img.update(ChainVector.monomial(idx, c).terms)
                img = ChainVector(img)
                if coboundary(L, img) or boundary(L, img):
                    bad.append(f"harmonic {v.render(Ls)} of the subdiagram is not harmonic in the ambient")
    return bad


def monomial_eigenvectors(n):
    """The Laplacian of a(n, 0) is diagonal in the monomial basis."""
    L = lie_algebra(builtin_diagram("a", n, 0))
    gc = graded_complex(L)
    bad = []
    for w in gc.weights:
        for p in range(gc.N + 1):
            M = gc.laplacian_matrix(p, w)
            if np.any(M.rows != M.cols):
                bad.append(f"off-diagonal Laplacian entry at p={p} w={w}")
    return bad


def methods_agree(L):
    gc = graded_complex(L)
    return [f"block {b.weight}: laplacian {b.laplacian_kernel} rank {b.betti_rank}"
            for b in gc.all_blocks() if list(b.laplacian_kernel) != list(b.betti_rank)]
