"""Exterior monomials and chain vectors over a Lie algebra model.

A monomial is a Python int bitmask over basis indices; the factors are
understood in increasing index order.  A :class:`ChainVector` is a sparse
map monomial -> exact coefficient.  The maps here act on single vectors
and work for any dimension; the block matrices in :mod:`treecohom.complex`
are built by separate kernels and tested against these.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .liealg import LieAlgebraModel, MonomialOperator


def indices(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(idx: Iterable[int]) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def sort_sign(seq) -> tuple[int, int]:
    """``(sign, mask)`` of the wedge of the factors in ``seq``; sign 0 if a factor repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0, 0
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return (-1 if inv & 1 else 1), mask_of(seq)


def wedge_sign(a: int, b: int) -> int:
    """Sign of ``mono(a) ^ mono(b)`` relative to ``mono(a | b)``; 0 if they share a factor."""
    if a & b:
        return 0
    inv = 0
    x = b
    while x:
        low = x & -x
        inv += (a & ~((low << 1) - 1)).bit_count()
        x ^= low
    return -1 if inv & 1 else 1


def mono_key(mask: int) -> tuple[int, ...]:
    """Canonical monomial order: lexicographic on the increasing index tuple."""
    return indices(mask)


class ChainVector:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in dict(terms or {}).items() if c}

    @classmethod
    def one(cls) -> "ChainVector":
        return cls({0: 1})

    @classmethod
    def monomial(cls, factors: Iterable[int], coef=1) -> "ChainVector":
        s, m = sort_sign(factors)
        return cls({m: s * coef}) if s else cls()

    # arithmetic
    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ChainVector(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return ChainVector({m: -c for m, c in self.terms.items()})

    def __mul__(self, scalar):
        return ChainVector({m: scalar * c for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ChainVector):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"ChainVector({self.terms!r})"

    def wedge(self, other: "ChainVector") -> "ChainVector":
        out: dict[int, object] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                s = wedge_sign(a, b)
                if s:
                    m = a | b
                    out[m] = out.get(m, 0) + s * ca * cb
        return ChainVector(out)

    @property
    def degrees(self) -> set[int]:
        return {m.bit_count() for m in self.terms}

    @property
    def degree(self) -> int:
        d = self.degrees
        if len(d) != 1:
            raise ValueError(f"chain vector is not homogeneous (degrees {sorted(d)})")
        return d.pop()

    def weight(self, L: LieAlgebraModel) -> tuple[int, ...]:
        ws = {monomial_weight(L, m) for m in self.terms}
        if len(ws) != 1:
            raise ValueError("chain vector is not weight-homogeneous")
        return ws.pop()

    def leading(self) -> int:
        return min(self.terms, key=mono_key)

    def primitive(self) -> "ChainVector":
        """Scale to coprime integer coefficients with positive leading coefficient."""
        from math import gcd, lcm
        if not self.terms:
            return self
        den = 1
        for c in self.terms.values():
            den = lcm(den, Fraction(c).denominator)
        ints = {m: int(Fraction(c) * den) for m, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if ints[self.leading()] < 0:
            g = -g
        return ChainVector({m: v // g for m, v in ints.items()})

    def render(self, L: LieAlgebraModel) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=mono_key):
            c = self.terms[m]
            word = " ^ ".join(str(L.basis[i]) for i in indices(m)) or "1"
            parts.append(word if c == 1 else f"{c}*({word})")
        return " + ".join(parts)


def monomial_weight(L: LieAlgebraModel, mask: int) -> tuple[int, ...]:
    w = [0] * (L.diagram.node_count + 1)
    for i in indices(mask):
        for k, x in enumerate(L.weights[i]):
            w[k] += x
    return tuple(w)


def from_operators(L: LieAlgebraModel, ops: Iterable[MonomialOperator], coef=1) -> ChainVector:
    """Wedge of the given basis operators, in the given order."""
    return ChainVector.monomial([L.index[op] for op in ops], coef)


def delta_cap(L: LieAlgebraModel, i: int) -> ChainVector:
    """``sum alpha u_j ^ u_k`` over ``j < k`` with ``[u_j, u_k] = alpha u_i``."""
    return ChainVector({(1 << j) | (1 << k): c for j, k, c in L.delta_terms[i]})


def boundary(L: LieAlgebraModel, v: ChainVector) -> ChainVector:
    """``sum_{a<b} (-1)^(a+b) [r_a, r_b] ^ r_1 ... r_a^ ... r_b^ ... r_p`` (positions 1-based)."""
    out: dict[int, object] = {}
    for m, coef in v.terms.items():
        idx = indices(m)
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                br = L.bracket_indices(idx[a], idx[b])
                if br is None:
                    continue
                alpha, k = br
                rest = m & ~(1 << idx[a]) & ~(1 << idx[b])
                if rest >> k & 1:
                    continue
                s = wedge_sign(1 << k, rest)
                sign = -1 if (a + b) & 1 else 1  # (a+1)+(b+1) has the parity of a+b
                new = rest | (1 << k)
                out[new] = out.get(new, 0) + sign * s * alpha * coef
    return ChainVector(out)


def coboundary(L: LieAlgebraModel, v: ChainVector) -> ChainVector:
    """``sum_q (-1)^q r_1 ^ ... ^ Delta(r_q) ^ ... ^ r_p`` (positions 1-based).

    With this sign the matrix of the coboundary is exactly the transpose of
    the matrix of :func:`boundary` in the monomial basis.
    """
    out: dict[int, object] = {}
    for m, coef in v.terms.items():
        idx = indices(m)
        for q, k in enumerate(idx, 1):
            rest = m & ~(1 << k)
            below = rest & ((1 << k) - 1)
            above = rest & ~below
            for i, j, alpha in L.delta_terms[k]:
                if (rest >> i & 1) or (rest >> j & 1):
                    continue
                # sort  below, u_i, u_j, above  into increasing order
                inv = ((below >> (i + 1)).bit_count() + (above & ((1 << i) - 1)).bit_count()
                       + (below >> (j + 1)).bit_count() + (above & ((1 << j) - 1)).bit_count())
                sign = -1 if (q + inv) & 1 else 1
                new = rest | (1 << i) | (1 << j)
                out[new] = out.get(new, 0) + sign * alpha * coef
    return ChainVector(out)


def laplacian(L: LieAlgebraModel, v: ChainVector) -> ChainVector:
    return coboundary(L, boundary(L, v)) + boundary(L, coboundary(L, v))


def is_harmonic(L: LieAlgebraModel, v: ChainVector) -> bool:
    return not coboundary(L, v) and not boundary(L, v)
