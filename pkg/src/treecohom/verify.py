"""Identity and inequality checks, each returning a :class:`CheckReport`.

Every check recomputes what it needs; a failing report carries a witness
(first mismatching exponent vector, or the violated inequality with numbers).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import permutations
from math import comb

import numpy as np

from . import closedform as cf
from .complex import betti, betti_per_weight
from .diagram import TreeDiagram
from .exterior import ChainVector, boundary, coboundary, from_operators, is_harmonic
from .laurent import LaurentPoly, one_minus, product
from .liealg import LieAlgebraModel, MonomialOperator, lie_algebra


@dataclass
class CheckReport:
    check: str
    passed: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {"check": self.check, "pass": self.passed, "witness": self.witness}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.check}: " + json.dumps(self.witness, sort_keys=True)


def _compare(name: str, lhs: LaurentPoly, rhs: LaurentPoly, **extra) -> CheckReport:
    diff = lhs.first_difference(rhs)
    if diff is None:
        return CheckReport(name, True, {"terms": len(lhs), **extra})
    e, a, b = diff
    return CheckReport(name, False, {"exponent": list(e), "lhs": a, "rhs": b, **extra})


# -- Euler characteristic identity ------------------------------------------------------------

def euler_lhs(L: LieAlgebraModel) -> LaurentPoly:
    """``prod over basis elements u of (1 - e^weight(u))``, one factor per dimension of each weight space."""
    dim = L.diagram.node_count + 1
    return product((one_minus(w) for w in L.weights), dim)


def euler_rhs(bw: dict, dim: int) -> LaurentPoly:
    """``sum (-1)^p dim H^p_w e^w`` from a per-weight Betti map ``{(p, w): d}``."""
    terms: dict = {}
    for (p, w), d in bw.items():
        terms[w] = terms.get(w, 0) + (-d if p & 1 else d)
    return LaurentPoly(dim, terms)


def check_euler(L: LieAlgebraModel) -> CheckReport:
    lhs = euler_lhs(L)
    rhs = euler_rhs(betti_per_weight(L), L.diagram.node_count + 1)
    return _compare("euler", lhs, rhs, algebra=L.flavor, dim=L.dim)


# -- denominator identity for a(n, 0) ---------------------------------------------------------

def _shift(n: int) -> LaurentPoly:
    return LaurentPoly.monomial([n - i for i in range(n + 1)])


def vandermonde_sides(n: int) -> tuple[LaurentPoly, LaurentPoly]:
    """``prod_{i<j} (z_i - z_j)`` and ``sum_s sign(s) prod_i z_{s(i)}^(n-i)``, expanded independently."""
    dim = n + 1
    lhs = product((LaurentPoly(dim, {tuple(int(k == i) for k in range(dim)): 1,
                                     tuple(int(k == j) for k in range(dim)): -1})
                   for i in range(dim) for j in range(i + 1, dim)), dim)
    rhs = LaurentPoly(dim)
    for s in permutations(range(dim)):
        inv = sum(1 for a in range(dim) for b in range(a + 1, dim) if s[a] > s[b])
        e = [0] * dim
        for i in range(dim):
            e[s[i]] = n - i
        rhs = rhs + LaurentPoly(dim, {tuple(e): -1 if inv & 1 else 1})
    return lhs, rhs


def check_vandermonde(n: int, with_betti: bool = False) -> CheckReport:
    """The alternating sum over orders equals ``prod_{i<j} (1 - e^{e_j - e_i})``; after
    multiplying by ``prod e^{(n-i) e_i}`` both sides are the Vandermonde determinant."""
    if n < 1:
        raise ValueError("n must be >= 1")
    dim = n + 1
    lhs = product((one_minus([int(k == j) - int(k == i) for k in range(dim)])
                   for i in range(dim) for j in range(i + 1, dim)), dim)
    rhs = LaurentPoly(dim)
    for order in cf.all_orders(n):
        rhs = rhs + LaurentPoly(dim, {order.weight(): order.sign})
    rep = _compare("vandermonde", lhs, rhs, n=n, orders=len(cf.all_orders(n)))
    if not rep:
        return rep
    vl, vr = vandermonde_sides(n)
    s = _shift(n)
    for name, a, b in (("shifted lhs", lhs * s, vl), ("shifted rhs", rhs * s, vr), ("determinant", vl, vr)):
        sub = _compare("vandermonde", a, b, n=n, stage=name)
        if not sub:
            return sub
    if with_betti:
        from_betti = euler_rhs(betti_per_weight(cf.anm_model(n)), dim)
        sub = _compare("vandermonde", rhs, from_betti, n=n, stage="orders vs cohomology")
        if not sub:
            return sub
    rep.witness["signed_terms"] = len(vr)
    return rep


# -- identity for a(n, m) -------------------------------------------------------------------------

def anm_lhs(n: int, m: int) -> LaurentPoly:
    dim = n + m + 1
    return product((one_minus([int(k == j) - int(k == i) for k in range(dim)])
                    for i in range(n + 1) for j in range(i + 1, m + n + 1)), dim)


def anm_rhs_from_basic(n: int, m: int) -> LaurentPoly:
    dim = n + m + 1
    terms: dict = {}
    for deg, elems in cf.basic_elements(n, m).items():
        for b in elems:
            w = b.weight()
            terms[w] = terms.get(w, 0) + (-1 if deg & 1 else 1)
    return LaurentPoly(dim, terms)


def anm_rhs_from_tableaux(n: int, m: int) -> LaurentPoly:
    """Signed sum over orders s and tableaux: a cell with entry l in row k contributes
    ``e_{n+l} - e_{s(n-k+1)}`` (rows counted from 1, s the ascending enumeration)."""
    dim = n + m + 1
    out = LaurentPoly(dim)
    tabs = [t for i in range((n + 1) * m + 1) for t in cf.enumerate_tableaux(m, n, i)[1]]
    for order in cf.all_orders(n):
        s = order.asc
        tab = LaurentPoly(dim)
        for t in tabs:
            e = [0] * dim
            for k, row in enumerate(t.rows, 1):
                for l in row:
                    e[n + l] += 1
                    e[s[n - k + 1]] -= 1
            tab = tab + LaurentPoly(dim, {tuple(e): -1 if t.size & 1 else 1})
        w = order.weight(dim)
        out = out + tab * LaurentPoly(dim, {w: order.sign})
    return out


def check_anm_identity(n: int, m: int) -> CheckReport:
    lhs = anm_lhs(n, m)
    model_lhs = euler_lhs(cf.anm_model(n, m))
    rep = _compare("anm", lhs, model_lhs, n=n, m=m, stage="product vs model")
    if not rep:
        return rep
    rep = _compare("anm", lhs, anm_rhs_from_basic(n, m), n=n, m=m, factors=(n + 1) * m + n * (n + 1) // 2)
    if not rep:
        return rep
    sub = _compare("anm", lhs, anm_rhs_from_tableaux(n, m), n=n, m=m, stage="tableau formula")
    return sub if not sub else rep


# -- Betti-number inequalities ------------------------------------------------------------------

def tip_witnesses(T: TreeDiagram) -> list[MonomialOperator]:
    """One element per tip: ``x_p^d d_i`` for its (smallest) parent p joined by an edge of weight d;
    ``d_i`` alone when the tip is also a root."""
    out = []
    for i in T.tips:
        par = T.parents[i]
        if not par:
            out.append(MonomialOperator.make({}, i))
            continue
        p = min(par)
        out.append(MonomialOperator.make({p: T.weight[(p, i)]}, i))
    return out


def check_total_rank(L: LieAlgebraModel) -> CheckReport:
    T = L.diagram
    total = betti(L).total
    tips = len(T.tips)
    A = tip_witnesses(T)
    bad = None
    for mask in range(1 << len(A)):
        v = from_operators(L, [A[i] for i in range(len(A)) if mask >> i & 1])
        if not v or not is_harmonic(L, v):
            bad = [str(A[i]) for i in range(len(A)) if mask >> i & 1]
            break
    w = {"total": total, "tips": tips, "bound": 2 ** tips, "witnesses": [str(a) for a in A]}
    if bad is not None:
        w["not_harmonic"] = bad
    return CheckReport("totalrank", total >= 2 ** tips and bad is None, w)


def check_b2(L: LieAlgebraModel) -> CheckReport:
    T = L.diagram
    if T.node_count < 2:
        raise ValueError("b2 check needs a diagram with more than one node")
    b = betti(L).betti
    b1, b2 = b[1], b[2]
    k = len(T.roots) + len(T.edges)
    ok = {"b1 = roots + edges": b1 == k, "4*b2 > b1^2": 4 * b2 > b1 * b1, "b2 >= C(roots+edges, 2)": b2 >= comb(k, 2)}
    w = {"b1": b1, "b2": b2, "roots": len(T.roots), "edges": len(T.edges), "pair_bound": comb(k, 2)}
    failed = [name for name, good in ok.items() if not good]
    if failed:
        w["violated"] = failed
    return CheckReport("b2", not failed, w)


def ad_cartan_weights(L: LieAlgebraModel) -> np.ndarray:
    """Eigenvalues of ``ad h_i`` on every basis element, read from the bracket table."""
    cart = [L.index[MonomialOperator.make({i: 1}, i)] for i in L.diagram.nodes]
    out = np.zeros((L.dim, len(cart)), dtype=np.int64)
    for c, h in enumerate(cart):
        for u in range(L.dim):
            r = L.bracket_indices(h, u)
            if r is None:
                continue
            alpha, k = r
            if k != u:
                raise ArithmeticError(f"{L.basis[u]} is not an eigenvector of ad {L.basis[h]}")
            out[u, c] = alpha
    return out


def check_solvable(T: TreeDiagram, max_dim: int = 24) -> CheckReport:
    L = lie_algebra(T, "L1")
    if L.dim > max_dim:
        raise ValueError(f"L1 has dimension {L.dim} > {max_dim}")
    N = T.node_count
    got = list(betti(L).betti)
    want = [comb(N, i) for i in range(L.dim + 1)]
    w = {"betti": got[:N + 1], "expected": want[:N + 1]}
    ok = got == want
    # weight-zero part of the complex under ad(h_1), ..., ad(h_N)
    E = ad_cartan_weights(L)
    size = 1 << L.dim
    sums = np.zeros((size, N), dtype=np.int32)
    for b in range(L.dim):
        sums[1 << b:2 << b] = sums[:1 << b] + E[b]
    zero = np.flatnonzero(~sums.any(axis=1))
    cart = 0
    for i in T.nodes:
        cart |= 1 << L.index[MonomialOperator.make({i: 1}, i)]
    only_cartan = bool(np.all((zero & ~cart) == 0)) and zero.size == 1 << N
    closed = all(not coboundary(L, ChainVector({int(m): 1})) and not boundary(L, ChainVector({int(m): 1}))
                 for m in zero.tolist())
    w["weight_zero_monomials"] = int(zero.size)
    if not only_cartan:
        w["weight_zero_not_cartan"] = True
    if not closed:
        w["nonzero_differential"] = True
    return CheckReport("solvable", ok and only_cartan and closed, w)


def check_closedform(n: int, m: int) -> CheckReport:
    """Basic elements are harmonic, independent per block, and their counts match the Laplacian."""
    L = cf.anm_model(n, m)
    bt = betti(L)
    elems = cf.basic_elements(n, m)
    counts = [len(elems.get(d, [])) for d in range(L.dim + 1)]
    w = {"n": n, "m": m, "counts": counts[:len(bt.betti)], "betti": list(bt.betti)}
    if counts != list(bt.betti):
        return CheckReport("closedform", False, w)
    from .exterior import monomial_weight
    from .linalg import exact_rank
    blocks: dict = {}
    for d, lst in elems.items():
        for b in lst:
            v = b.chain
            if not is_harmonic(L, v):
                w["not_harmonic"] = {"degree": d, "chain": v.render(L)}
                return CheckReport("closedform", False, w)
            blocks.setdefault((d, monomial_weight(L, next(iter(v.terms)))), []).append(v)
    for (d, wt), vs in sorted(blocks.items()):
        cols = sorted({mm for v in vs for mm in v.terms})
        idx = {mm: c for c, mm in enumerate(cols)}
        rows = [[0] * len(cols) for _ in vs]
        for r, v in enumerate(vs):
            for mm, c in v.terms.items():
                rows[r][idx[mm]] = c
        rk = exact_rank(rows)
        if rk != len(vs) or rk != bt.per_weight.get((d, wt), 0):
            w["dependent_block"] = {"degree": d, "weight": list(wt), "rank": rk, "size": len(vs),
                                    "kernel": bt.per_weight.get((d, wt), 0)}
            return CheckReport("closedform", False, w)
    return CheckReport("closedform", True, w)


CHECKS = ("euler", "vandermonde", "anm", "totalrank", "b2", "solvable", "closedform")
