"""Oriented tree diagrams: parsing, validation and derived combinatorics.

A diagram is a tree on nodes ``1..n`` whose edges ``(i, j, d)`` point from
the smaller index to the larger one and carry a positive integer weight.

Text format::

    # comment
    nodes 6
    edge 1 3 1
    edge 2 3 1
    ...
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import prod
from typing import Iterable, Mapping, Sequence


class DiagramError(ValueError):
    pass


class DiagramSyntaxError(DiagramError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class DiagramValidationError(DiagramError):
    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


@dataclass(frozen=True)
class TreeDiagram:
    node_count: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        edges = tuple(sorted(tuple(int(x) for x in e) for e in self.edges))
        object.__setattr__(self, "edges", edges)
        _validate(self.node_count, edges)

    # -- basic structure -------------------------------------------------

    @property
    def nodes(self) -> range:
        return range(1, self.node_count + 1)

    @cached_property
    def weight(self) -> dict[tuple[int, int], int]:
        return {(i, j): d for i, j, d in self.edges}

    @cached_property
    def parents(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in self.nodes}
        for i, j, _ in self.edges:
            out[j].append(i)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def children(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {i: [] for i in self.nodes}
        for i, j, _ in self.edges:
            out[i].append(j)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def roots(self) -> tuple[int, ...]:
        """Nodes without incoming edges."""
        return tuple(i for i in self.nodes if not self.parents[i])

    @cached_property
    def tips(self) -> tuple[int, ...]:
        """Nodes without outgoing edges."""
        return tuple(i for i in self.nodes if not self.children[i])

    def check_node(self, i: int) -> int:
        if not (isinstance(i, int) and 1 <= i <= self.node_count):
            raise IndexError(f"node {i!r} out of range 1..{self.node_count}")
        return i

    # -- chains and closures ---------------------------------------------

    def chain(self, i: int, j: int) -> tuple[int, ...]:
        """Directed node sequence from ``i`` to ``j``; empty if there is none."""
        self.check_node(i)
        self.check_node(j)
        if i == j:
            return (i,)
        # walk back from j; the directed path is unique in a tree
        stack = [(j, (j,))]
        while stack:
            node, path = stack.pop()
            for p in self.parents[node]:
                if p == i:
                    return (i,) + path
                if p > i:
                    stack.append((p, (p,) + path))
        return ()

    def closure(self, i: int, direction: str = "up") -> frozenset[int]:
        self.check_node(i)
        if direction == "up":
            nbrs = self.parents
        elif direction == "down":
            nbrs = self.children
        else:
            raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
        seen = {i}
        todo = [i]
        while todo:
            for k in nbrs[todo.pop()]:
                if k not in seen:
                    seen.add(k)
                    todo.append(k)
        return frozenset(seen)

    def ancestors(self, j: int) -> tuple[int, ...]:
        """Strict ancestors of ``j`` in increasing order."""
        return tuple(sorted(self.closure(j, "up") - {j}))

    # -- weights ----------------------------------------------------------

    def kappa(self, i: int) -> int:
        up = self.closure(i, "up")
        return prod(d for a, b, d in self.edges if a in up and b in up)

    def chain_weight(self, i: int, j: int) -> int:
        c = self.chain(i, j)
        if not c:
            raise ValueError(f"no directed chain from {i} to {j}")
        return prod(self.weight[(a, b)] for a, b in zip(c, c[1:]))

    def kappa_rel(self, i: int, j: int) -> int:
        """``kappa(j)`` divided by the product of the weights on the chain ``i -> j``."""
        w = self.chain_weight(i, j)
        k = self.kappa(j)
        q, r = divmod(k, w)
        if r:
            raise ArithmeticError(f"kappa({j})={k} not divisible by chain weight {w}")
        return q

    # -- text -------------------------------------------------------------

    def render(self) -> str:
        lines = [f"nodes {self.node_count}"]
        lines += [f"edge {i} {j} {d}" for i, j, d in self.edges]
        return "\n".join(lines) + "\n"

    def relabel(self, nodes: Iterable[int]) -> tuple["TreeDiagram", dict[int, int]]:
        """Induced subdiagram on ``nodes``, relabelled ``1..k`` in increasing order.

        Returns the subdiagram and the embedding (sub node -> node of self).
        """
        keep = sorted(set(nodes))
        for i in keep:
            self.check_node(i)
        new = {old: k + 1 for k, old in enumerate(keep)}
        edges = [(new[i], new[j], d) for i, j, d in self.edges if i in new and j in new]
        sub = TreeDiagram(len(keep), tuple(edges))
        return sub, {v: k for k, v in new.items()}


def _validate(n, edges):
    if not isinstance(n, int) or n < 1:
        raise DiagramValidationError("node_count", f"need a positive node count, got {n!r}")
    for i, j, d in edges:
        if not (1 <= i <= n and 1 <= j <= n):
            raise DiagramValidationError("range", f"edge ({i},{j}) has a node outside 1..{n}")
        if i >= j:
            raise DiagramValidationError("orientation", f"edge ({i},{j}) must satisfy tail < head")
        if d < 1:
            raise DiagramValidationError("weight", f"edge ({i},{j}) has weight {d} < 1")
    if len(edges) != n - 1:
        raise DiagramValidationError(
            "edge_count", f"{n} nodes need exactly {n - 1} edges, got {len(edges)}")
    root = list(range(n + 1))

    def find(x):
        while root[x] != x:
            root[x] = root[root[x]]
            x = root[x]
        return x

    for i, j, _ in edges:
        a, b = find(i), find(j)
        if a == b:
            raise DiagramValidationError("cycle", f"edge ({i},{j}) closes a cycle")
        root[a] = b
    if len({find(i) for i in range(1, n + 1)}) != 1:
        raise DiagramValidationError("connected", "diagram is disconnected")


def parse_diagram(text: str) -> TreeDiagram:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col = raw.index(line[0]) + 1
        tok = line.split()
        if tok[0] == "nodes":
            if n is not None:
                raise DiagramSyntaxError("duplicate 'nodes' line", lineno, col)
            if len(tok) != 2:
                raise DiagramSyntaxError("expected 'nodes N'", lineno, col)
            n = _int(tok[1], raw, lineno)
        elif tok[0] == "edge":
            if n is None:
                raise DiagramSyntaxError("'edge' before 'nodes'", lineno, col)
            if len(tok) != 4:
                raise DiagramSyntaxError("expected 'edge I J D'", lineno, col)
            edges.append(tuple(_int(t, raw, lineno) for t in tok[1:]))
        else:
            raise DiagramSyntaxError(f"unknown keyword {tok[0]!r}", lineno, col)
    if n is None:
        raise DiagramSyntaxError("missing 'nodes' line", 1)
    return TreeDiagram(n, tuple(edges))


def _int(tok, raw, lineno):
    try:
        return int(tok)
    except ValueError:
        raise DiagramSyntaxError(f"expected an integer, got {tok!r}", lineno, raw.index(tok) + 1) from None


def load_diagram(path) -> TreeDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


# -- built-in families -------------------------------------------------------

FIGURE1 = TreeDiagram(6, ((1, 3, 1), (2, 3, 1), (3, 4, 2), (4, 5, 1), (4, 6, 1)))


def builtin_diagram(family: str, *params: int) -> TreeDiagram:
    """Named diagram families.

    ``in_star(n)``: nodes 1..n all feeding node n+1.
    ``out_star(m)``: node 1 feeding nodes 2..m+1.
    ``multi_edge(d)``: two nodes joined by one edge of weight d.
    ``path(n)``: 1 -> 2 -> ... -> n.
    ``a(n, m)``: path(n) with m extra leaves hung on node n.
    """
    family = family.lower().replace("-", "_")
    aliases = {"instar": "in_star", "outstar": "out_star", "multi": "multi_edge", "anm": "a"}
    family = aliases.get(family, family)
    arity = {"in_star": 1, "out_star": 1, "multi_edge": 1, "path": 1, "a": 2, "figure1": 0}
    if family not in arity:
        raise DiagramError(f"unknown diagram family {family!r}")
    if len(params) != arity[family]:
        raise DiagramError(f"{family} takes {arity[family]} parameter(s), got {len(params)}")
    if family == "a":
        n, m = params
        if n < 1 or m < 0:
            raise DiagramError(f"a(n, m) needs n >= 1 and m >= 0, got {params}")
    elif any(p < 1 for p in params):
        raise DiagramError(f"{family} parameters must be positive, got {params}")

    if family == "figure1":
        return FIGURE1
    if family == "in_star":
        (n,) = params
        return TreeDiagram(n + 1, tuple((i, n + 1, 1) for i in range(1, n + 1)))
    if family == "out_star":
        (m,) = params
        return TreeDiagram(m + 1, tuple((1, j, 1) for j in range(2, m + 2)))
    if family == "multi_edge":
        (d,) = params
        return TreeDiagram(2, ((1, 2, d),))
    if family == "path":
        (n,) = params
        return TreeDiagram(n, tuple((i, i + 1, 1) for i in range(1, n)))
    n, m = params
    edges = [(i, i + 1, 1) for i in range(1, n)] + [(n, n + k, 1) for k in range(1, m + 1)]
    return TreeDiagram(n + m, tuple(edges))


def parse_builtin(text: str) -> TreeDiagram:
    """``"path:3"``, ``"a:2,1"``, ``"multi:3"``, ``"instar:2"``, ``"outstar:2"``, ``"figure1"``."""
    name, _, args = text.partition(":")
    try:
        params = tuple(int(a) for a in args.split(",")) if args else ()
    except ValueError:
        raise DiagramError(f"bad builtin parameters in {text!r}") from None
    return builtin_diagram(name, *params)


def anm_parameters(T: TreeDiagram) -> tuple[int, int] | None:
    """``(n, m)`` if ``T`` is literally ``a(n, m)``, preferring the largest ``n``."""
    for n in range(T.node_count, 0, -1):
        if builtin_diagram("a", n, T.node_count - n) == T:
            return n, T.node_count - n
    return None


def is_homoclan(sub: TreeDiagram, T: TreeDiagram, embedding: Mapping[int, int] | Sequence[int]) -> bool:
    """Whether ``sub`` embeds in ``T`` as a subdiagram closed under ancestors.

    ``embedding`` maps each node of ``sub`` to a node of ``T`` (a mapping, or
    a sequence whose k-th entry is the image of node k+1).
    """
    if not isinstance(embedding, Mapping):
        embedding = {k + 1: v for k, v in enumerate(embedding)}
    if set(embedding) != set(sub.nodes):
        raise ValueError("embedding must be defined on every node of the subdiagram")
    image = set(embedding.values())
    if len(image) != len(embedding):
        raise ValueError("embedding is not injective")
    for v in image:
        T.check_node(v)
    for i, j, d in sub.edges:
        if T.weight.get((embedding[i], embedding[j])) != d:
            return False
    return all(T.closure(v, "up") <= image for v in image)
