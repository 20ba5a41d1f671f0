"""Closed-form harmonic representatives and Betti numbers for the family a(n, m).

Nodes 1..n of ``a(n, m)`` form a path (variables x_1..x_n) and nodes
n+1..n+m hang off node n (variables y_1..y_m).  Index 0 stands for the
constant x_0 = 1, so ``x_0 d_k`` is just ``d_k``.

For a(n, 0) every harmonic monomial is determined by a total order on
{0, ..., n}: for ``j < k``, ``k`` sits below ``j`` exactly when ``x_j d_k`` is a
factor.  For m > 0 the harmonics are spanned by "basic elements"
``a ^ phi(J_1) ^ ... ^ phi(J_t)``, indexed by an order and a tableau.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations

from .diagram import builtin_diagram
from .exterior import ChainVector
from .liealg import LieAlgebraModel, MonomialOperator, lie_algebra


@lru_cache(maxsize=None)
def anm_model(n: int, m: int = 0) -> LieAlgebraModel:
    return lie_algebra(builtin_diagram("a", n, m), "L0")


def _op(j: int, k: int) -> MonomialOperator:
    """``x_j d_k`` (``d_k`` when ``j == 0``)."""
    return MonomialOperator.make({j: 1} if j else {}, k)


# -- total orders ---------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class TotalOrder:
    """A total order on {0..n}, stored as its descending enumeration (largest first)."""

    desc: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.desc) != list(range(len(self.desc))):
            raise ValueError(f"{self.desc} is not a permutation of 0..{len(self.desc) - 1}")

    @property
    def n(self) -> int:
        return len(self.desc) - 1

    @property
    def asc(self) -> tuple[int, ...]:
        """``sigma``: rank -> element, smallest first."""
        return self.desc[::-1]

    @cached_property
    def rank(self) -> dict[int, int]:
        return {e: r for r, e in enumerate(self.asc)}

    def precedes(self, a: int, b: int) -> bool:
        return self.rank[a] < self.rank[b]

    @property
    def length(self) -> int:
        s = self.asc
        return sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])

    @property
    def sign(self) -> int:
        return -1 if self.length & 1 else 1

    def factors(self) -> list[tuple[int, int]]:
        """Pairs ``(j, k)``, ``j < k``, such that ``x_j d_k`` is a factor of the monomial."""
        return [(j, k) for k in range(1, self.n + 1) for j in range(k) if self.precedes(k, j)]

    def operators(self) -> list[MonomialOperator]:
        return [_op(j, k) for j, k in self.factors()]

    def weight(self, size: int | None = None) -> tuple[int, ...]:
        """``sum over inversions (s_i, s_j) of  e_{s_i} - e_{s_j}``, as a vector of length ``size``."""
        w = [0] * (size if size is not None else self.n + 1)
        s = self.asc
        for i in range(len(s)):
            for j in range(i + 1, len(s)):
                if s[i] > s[j]:
                    w[s[i]] += 1
                    w[s[j]] -= 1
        return tuple(w)

    def chain(self, L: LieAlgebraModel | None = None) -> ChainVector:
        L = L or anm_model(self.n)
        return ChainVector.monomial(sorted(L.index[op] for op in self.operators()))

    def __str__(self):
        return " < ".join(map(str, self.asc))


def order_from_monomial(mask: int, n: int, L: LieAlgebraModel | None = None) -> TotalOrder:
    """The order attached to an exterior monomial over a(n, 0) (or a(n, m)).

    Raises ``ValueError`` if the relation it defines is not a total order.
    """
    L = L or anm_model(n)
    pairs = set()
    i, x = 0, mask
    while x:
        if x & 1:
            op = L.basis[i]
            if op.target <= n and op.degree <= 1:
                j = op.exps[0][0] if op.exps else 0
                pairs.add((j, op.target))
        x >>= 1
        i += 1
    below = [0] * (n + 1)  # number of elements smaller than each element
    for j in range(n + 1):
        for k in range(j + 1, n + 1):
            if (j, k) in pairs:
                below[j] += 1
            else:
                below[k] += 1
    # a tournament is transitive iff its score sequence is 0, 1, ..., n
    if sorted(below) != list(range(n + 1)):
        raise ValueError("monomial does not define a total order (not one of the harmonic monomials)")
    asc = sorted(range(n + 1), key=lambda e: below[e])
    return TotalOrder(tuple(reversed(asc)))


def all_orders(n: int) -> list[TotalOrder]:
    """Every total order on {0..n}, built by inserting the top index under each prefix."""
    orders = [(0,)]
    for k in range(1, n + 1):
        nxt = []
        for d in orders:
            for pos in range(len(d) + 1):
                nxt.append(d[:pos] + (k,) + d[pos:])
        orders = nxt
    return sorted(TotalOrder(d) for d in orders)


def harmonic_monomials_an0(n: int) -> list[tuple[int, TotalOrder]]:
    """The (n+1)! harmonic monomials of a(n, 0) as ``(mask, order)`` pairs.

    Built recursively: each harmonic monomial of a(n-1, 0), with descending
    order (i_1, ..., i_n), is extended by ``x_{i_1} d_n ^ ... ^ x_{i_k} d_n`` for
    k = 0..n, which puts n directly below i_k.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    level = [((), (0,))]  # (factors, descending order)
    for top in range(1, n + 1):
        nxt = []
        for facs, desc in level:
            for k in range(len(desc) + 1):
                extra = tuple((i, top) for i in desc[:k])
                nxt.append((facs + extra, desc[:k] + (top,) + desc[k:]))
        level = nxt
    L = anm_model(n)
    out = []
    for facs, desc in level:
        mask = 0
        for j, k in facs:
            mask |= 1 << L.index[_op(j, k)]
        out.append((mask, TotalOrder(desc)))
    out.sort(key=lambda t: t[1])
    return out


# -- phi chains and basic elements --------------------------------------------------------

def phi(order: TotalOrder, J, m: int | None = None) -> ChainVector:
    """``sum over S_k of x_{i_1} d_{y_{J_s(1)}} ^ ... ^ x_{i_k} d_{y_{J_s(k)}}``.

    ``i_1, ..., i_k`` are the k largest elements of the order; ``J`` is weakly
    increasing with entries in 1..m.  Repeated entries give integer
    multiplicities, which are kept.
    """
    J = tuple(J)
    n = order.n
    k = len(J)
    if k > n + 1:
        raise ValueError(f"column of length {k} exceeds n + 1 = {n + 1}")
    if any(a > b for a, b in zip(J, J[1:])) or (J and J[0] < 1):
        raise ValueError(f"column {J} must be weakly increasing with entries >= 1")
    if k == 0:
        return ChainVector.one()
    m = max(J) if m is None else m
    if J[-1] > m:
        raise ValueError(f"column entry {J[-1]} exceeds m = {m}")
    L = anm_model(n, m)
    top = order.desc[:k]
    out = ChainVector()
    for perm in permutations(range(k)):
        out = out + ChainVector.monomial([L.index[_op(top[q], n + J[perm[q]])] for q in range(k)])
    return out


@dataclass(frozen=True)
class Tableau:
    """Rows strictly increasing, columns weakly increasing, entries in 1..m."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def columns(self) -> list[tuple[int, ...]]:
        if not self.rows:
            return []
        return [tuple(r[p] for r in self.rows if len(r) > p) for p in range(len(self.rows[0]))]

    def to_dict(self) -> dict:
        return {"shape": list(self.shape), "rows": [list(r) for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class BasicElement:
    order: TotalOrder
    columns: tuple[tuple[int, ...], ...]
    m: int

    @property
    def degree(self) -> int:
        return self.order.length + sum(len(c) for c in self.columns)

    @cached_property
    def chain(self) -> ChainVector:
        L = self.model
        v = self.order.chain(L)
        for J in self.columns:
            v = v.wedge(phi(self.order, J, self.m))
        return v

    @property
    def model(self) -> LieAlgebraModel:
        return anm_model(self.order.n, self.m)

    def weight(self) -> tuple[int, ...]:
        return self.chain.weight(self.model)

    def formula_weight(self) -> tuple[int, ...]:
        """The same weight, read off the order and the columns without building the chain."""
        n = self.order.n
        w = list(self.order.weight(n + self.m + 1))
        for J in self.columns:
            for q, j in enumerate(J):
                w[n + j] += 1
                w[self.order.desc[q]] -= 1
        return tuple(w)


def _partitions(total: int, max_parts: int, max_part: int):
    """Partitions of ``total`` (weakly decreasing tuples) with bounded length and parts."""
    def rec(left, parts, cap):
        if left == 0:
            yield ()
            return
        if parts == 0:
            return
        for first in range(min(left, cap), 0, -1):
            for rest in rec(left - first, parts - 1, first):
                yield (first,) + rest
    yield from rec(total, max_parts, max_part)


def _fill(shape, m):
    """Fillings of ``shape`` with strictly increasing rows and weakly increasing columns."""
    def rec(s, above):
        if s == len(shape):
            yield ()
            return
        for row in combinations(range(1, m + 1), shape[s]):
            if above is not None and any(row[p] < above[p] for p in range(len(row))):
                continue
            for rest in rec(s + 1, row):
                yield (row,) + rest
    yield from rec(0, None)


def enumerate_tableaux(m: int, n: int, i: int) -> tuple[int, list[Tableau]]:
    """All fillings of size ``i`` with at most n+1 rows (brute force)."""
    out = []
    for shape in _partitions(i, n + 1, m):
        out.extend(Tableau(rows) for rows in _fill(shape, m))
    return len(out), out


def hook_content(shape, m: int) -> int:
    """Number of fillings of ``shape`` with weakly increasing rows, strictly increasing columns, entries <= m."""
    shape = [x for x in shape if x]
    conj = [sum(1 for r in shape if r > c) for c in range(shape[0])] if shape else []
    num = den = 1
    for r, length in enumerate(shape):
        for c in range(length):
            num *= m + c - r
            den *= (length - c - 1) + (conj[c] - r - 1) + 1
    if num % den:
        raise ArithmeticError(f"hook-content quotient for {shape}, m={m} is not an integer")
    return num // den


def tableau_count_hook(m: int, n: int, i: int) -> int:
    """Tableau count via hook-content: a row-strict / column-weak filling is the
    transpose of a row-weak / column-strict one, so sum over shapes whose
    first row (the transposed column) is at most n + 1."""
    return sum(hook_content(lam, m) for lam in _partitions(i, i, n + 1))


def tableau_factor(m: int, n: int) -> tuple[list[int], list[int]]:
    """Per-degree tableau counts ``[|S^0|, |S^1|, ...]`` by enumeration and by hook-content."""
    top = (n + 1) * m
    enum = [enumerate_tableaux(m, n, i)[0] for i in range(top + 1)]
    hook = [tableau_count_hook(m, n, i) for i in range(top + 1)]
    return enum, hook


def basic_elements(n: int, m: int) -> dict[int, list[BasicElement]]:
    """All basic elements of a(n, m), grouped by degree.

    Order: by total order (descending enumeration, lexicographic), then by tableau.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    tabs = []
    for i in range((n + 1) * m + 1):
        tabs.extend(enumerate_tableaux(m, n, i)[1])
    out: dict[int, list[BasicElement]] = {}
    for order in all_orders(n):
        for t in tabs:
            b = BasicElement(order, tuple(t.columns()), m)
            out.setdefault(b.degree, []).append(b)
    return dict(sorted(out.items()))


# -- polynomials ------------------------------------------------------------------------------

def poly_mul(a, b) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b) -> tuple[list[int], list[int]]:
    """Exact division by a polynomial with unit leading coefficient."""
    a, b = list(a), _trim(list(b))
    if b[-1] not in (1, -1):
        raise ValueError("divisor must have leading coefficient +-1")
    q = [0] * max(len(a) - len(b) + 1, 1)
    for s in range(len(a) - len(b), -1, -1):
        c = a[s + len(b) - 1] * b[-1]
        q[s] = c
        for t, y in enumerate(b):
            a[s + t] -= c * y
    return _trim(q), _trim(a)


def _trim(p) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def render_poly(coeffs, var: str = "t") -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            term = str(mag)
        else:
            mon = var if k == 1 else f"{var}^{k}"
            term = mon if mag == 1 else f"{mag}*{mon}"
        parts.append(("- " if c < 0 else "+ ") + term)
    if not parts:
        return "0"
    s = " ".join(parts)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def poincare_poly_an0(n: int) -> list[int]:
    """``(1 + t)(1 + t + t^2)...(1 + ... + t^n)``, checked against ``prod (1 - t^(i+1)) / (1 - t)^n``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = [1]
    for i in range(1, n + 1):
        p = poly_mul(p, [1] * (i + 1))
    num = [1]
    for i in range(1, n + 1):
        num = poly_mul(num, [1] + [0] * i + [-1])
    for _ in range(n):
        num, r = poly_divmod(num, [1, -1])
        if any(r):
            raise ArithmeticError("product does not divide by (1 - t)^n")
    if num != p:
        raise ArithmeticError("the two forms of the generating function disagree")
    return p


def poincare_poly_anm(n: int, m: int) -> list[int]:
    """Betti generating function of a(n, m): tableau factor times that of a(n, 0)."""
    enum, hook = tableau_factor(m, n)
    if enum != hook:
        raise ArithmeticError(f"tableau counts disagree: enumeration {enum}, hook-content {hook}")
    return poly_mul(_trim(enum), poincare_poly_an0(n))
