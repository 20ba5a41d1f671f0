"""Monomial differential operators and the tree diagram Lie algebras L0 / L1.

Operators are ``x^m d_j`` with ``m`` a finitely supported exponent map over
the diagram nodes.  Brackets are evaluated in closed form on monomial pairs;
the ambient operator algebra is never built.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .diagram import TreeDiagram


class ClosureError(ArithmeticError):
    """A bracket of basis elements is not a multiple of a basis element."""


@dataclass(frozen=True, order=True)
class MonomialOperator:
    exps: tuple[tuple[int, int], ...]  # sorted (node, exponent) pairs, exponent > 0
    target: int

    @classmethod
    def make(cls, exps, target: int) -> "MonomialOperator":
        if isinstance(exps, dict):
            exps = exps.items()
        clean = tuple(sorted((int(k), int(v)) for k, v in exps if v))
        if any(v < 0 for _, v in clean):
            raise ValueError(f"negative exponent in {clean}")
        return cls(clean, int(target))

    @cached_property
    def exp_map(self) -> dict[int, int]:
        return dict(self.exps)

    @property
    def degree(self) -> int:
        return sum(v for _, v in self.exps)

    @property
    def is_cartan(self) -> bool:
        return self.exps == ((self.target, 1),)

    def __str__(self) -> str:
        parts = [f"x{k}" if v == 1 else f"x{k}^{v}" for k, v in self.exps]
        return "*".join(parts + [f"d{self.target}"])

    def to_json(self) -> dict:
        return {"exps": {str(k): v for k, v in self.exps}, "target": self.target}


def parse_operator(text: str) -> MonomialOperator:
    """Inverse of ``str(op)``: ``"x1^2*x3*d4"``."""
    exps: dict[int, int] = {}
    target = None
    for tok in text.strip().split("*"):
        if tok.startswith("d") and target is None:
            target = int(tok[1:])
        elif tok.startswith("x"):
            var, _, e = tok[1:].partition("^")
            exps[int(var)] = exps.get(int(var), 0) + (int(e) if e else 1)
        else:
            raise ValueError(f"cannot parse operator token {tok!r} in {text!r}")
    if target is None:
        raise ValueError(f"operator {text!r} has no derivative factor")
    return MonomialOperator.make(exps, target)


def bracket(u: MonomialOperator, v: MonomialOperator) -> list[tuple[int, MonomialOperator]]:
    """``[x^a d_j, x^b d_k] = b_j x^(a+b-e_j) d_k - a_k x^(a+b-e_k) d_j``, like terms merged."""
    a, b = u.exp_map, v.exp_map
    j, k = u.target, v.target
    terms: dict[MonomialOperator, int] = {}
    bj = b.get(j, 0)
    if bj:
        e = dict(b)
        for s, t in a.items():
            e[s] = e.get(s, 0) + t
        e[j] -= 1
        op = MonomialOperator.make(e, k)
        terms[op] = terms.get(op, 0) + bj
    ak = a.get(k, 0)
    if ak:
        e = dict(a)
        for s, t in b.items():
            e[s] = e.get(s, 0) + t
        e[k] -= 1
        op = MonomialOperator.make(e, j)
        terms[op] = terms.get(op, 0) - ak
    return [(c, op) for op, c in terms.items() if c]


def _basis_key(op: MonomialOperator, n: int):
    # target first, then exponent vector read from the highest node down;
    # on a(n, m) this lists d_j, x1 d_j, x2 d_j, ... in that order
    e = op.exp_map
    return (op.target, tuple(e.get(s, 0) for s in range(n, 0, -1)))


def natural_basis(T: TreeDiagram) -> list[MonomialOperator]:
    out = []
    for j in T.nodes:
        anc = T.ancestors(j)
        cap = T.kappa(j)
        costs = [T.kappa_rel(s, j) for s in anc]
        ranges = [range(cap // c + 1) for c in costs]
        for m in product(*ranges):
            if sum(x * c for x, c in zip(m, costs)) <= cap:
                out.append(MonomialOperator.make(zip(anc, m), j))
    out.sort(key=lambda op: _basis_key(op, T.node_count))
    return out


def weight_of(u: MonomialOperator, n: int) -> tuple[int, ...]:
    """Homogenised weight ``e_j - sum m_s e_s - (1 - sum m_s) e_0`` as a length ``n+1`` tuple."""
    w = [0] * (n + 1)
    w[u.target] += 1
    for s, m in u.exps:
        w[s] -= m
    w[0] -= 1 - u.degree
    return tuple(w)


def structure_table(basis) -> dict[tuple[int, int], tuple[int, int]]:
    """Nonzero brackets ``(i, j) -> (alpha, k)`` with ``[u_i, u_j] = alpha u_k``, for ``i < j``."""
    index = {op: i for i, op in enumerate(basis)}
    table = {}
    for i, u in enumerate(basis):
        for j in range(i + 1, len(basis)):
            terms = bracket(u, basis[j])
            if not terms:
                continue
            if len(terms) != 1 or terms[0][1] not in index:
                shown = " + ".join(f"{c}*{op}" for c, op in terms)
                raise ClosureError(f"[{u}, {basis[j]}] = {shown} is not a multiple of a basis element")
            c, op = terms[0]
            table[(i, j)] = (c, index[op])
    return table


@dataclass(frozen=True, eq=False)
class LieAlgebraModel:
    diagram: TreeDiagram
    flavor: str
    basis: tuple[MonomialOperator, ...]
    table: dict
    weights: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def index(self) -> dict[MonomialOperator, int]:
        return {op: i for i, op in enumerate(self.basis)}

    def bracket_indices(self, i: int, j: int):
        """``(alpha, k)`` with ``[u_i, u_j] = alpha u_k``, or ``None``."""
        if i < j:
            return self.table.get((i, j))
        if i > j:
            r = self.table.get((j, i))
            return None if r is None else (-r[0], r[1])
        return None

    @cached_property
    def bracket_list(self) -> np.ndarray:
        """Rows ``(i, j, k, alpha)`` for every nonzero ``[u_i, u_j] = alpha u_k`` with ``i < j``."""
        rows = [(i, j, k, c) for (i, j), (c, k) in sorted(self.table.items())]
        return np.array(rows, dtype=np.int64).reshape(-1, 4)

    @cached_property
    def weight_array(self) -> np.ndarray:
        return np.array(self.weights, dtype=np.int64).reshape(self.dim, self.diagram.node_count + 1)

    @cached_property
    def delta_terms(self) -> dict[int, list[tuple[int, int, int]]]:
        """For each ``k``: the ``(i, j, alpha)`` with ``i < j`` and ``[u_i, u_j] = alpha u_k``."""
        out: dict[int, list] = {k: [] for k in range(self.dim)}
        for (i, j), (c, k) in sorted(self.table.items()):
            out[k].append((i, j, c))
        return out

    def render_table(self) -> str:
        lines = []
        for (i, j), (c, k) in sorted(self.table.items()):
            coef = "" if c == 1 else ("-" if c == -1 else f"{c}*")
            lines.append(f"[{self.basis[i]}, {self.basis[j]}] = {coef}{self.basis[k]}")
        return "\n".join(lines)

    def to_json(self) -> str:
        doc = {
            "basis": [op.to_json() for op in self.basis],
            "brackets": [[i, j, c, k] for (i, j), (c, k) in sorted(self.table.items())],
        }
        return json.dumps(doc, sort_keys=True)


def lie_algebra(T: TreeDiagram, flavor: str = "L0") -> LieAlgebraModel:
    """The algebra ``L0`` of the diagram, or ``L1`` with the Cartan elements appended.

    Models are immutable and cached, so repeated requests share their
    (expensive) exterior complex.
    """
    flavor = flavor.upper()
    if flavor not in ("L0", "L1"):
        raise ValueError(f"flavor must be L0 or L1, got {flavor!r}")
    return _build(T, flavor)


@lru_cache(maxsize=64)
def _build(T: TreeDiagram, flavor: str) -> LieAlgebraModel:
    basis = natural_basis(T)
    if flavor == "L1":
        basis += [MonomialOperator.make({i: 1}, i) for i in T.nodes]
    table = structure_table(basis)
    weights = tuple(weight_of(u, T.node_count) for u in basis)
    return LieAlgebraModel(T, flavor, tuple(basis), table, weights)


def solvable_extension(T: TreeDiagram) -> LieAlgebraModel:
    return lie_algebra(T, "L1")


def center(L: LieAlgebraModel) -> set[int]:
    busy = {i for ij in L.table for i in ij}
    return set(range(L.dim)) - busy


def lower_central_series(L: LieAlgebraModel, max_steps: int | None = None) -> list[frozenset[int]]:
    """Basis-index supports of ``L, [L, L], [L, [L, L]], ...`` until it stabilises.

    Each bracket of basis elements is a multiple of a basis element, so every
    term is spanned by a subset of the basis.
    """
    series = [frozenset(range(L.dim))]
    steps = max_steps if max_steps is not None else L.dim + 1
    for _ in range(steps):
        cur = series[-1]
        nxt = frozenset(k for (i, j), (_, k) in L.table.items() if i in cur or j in cur)
        if nxt == cur:
            break
        series.append(nxt)
        if not nxt:
            break
    return series


def is_nilpotent(L: LieAlgebraModel) -> bool:
    return not lower_central_series(L)[-1]


def embed_operator(op: MonomialOperator, embedding: dict[int, int]) -> MonomialOperator:
    return MonomialOperator.make({embedding[k]: v for k, v in op.exps}, embedding[op.target])
