"""Sparse multivariate Laurent polynomials with integer coefficients."""

from __future__ import annotations

from typing import Iterable


class LaurentPoly:
    """Map from exponent vectors (tuples of a fixed length) to nonzero integers."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms=None):
        self.dim = dim
        self.terms: dict[tuple[int, ...], int] = {}
        for e, c in dict(terms or {}).items():
            e = tuple(e)
            if len(e) != dim:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {dim}")
            if c:
                self.terms[e] = self.terms.get(e, 0) + c
        self.terms = {e: c for e, c in self.terms.items() if c}

    @classmethod
    def one(cls, dim: int) -> "LaurentPoly":
        return cls(dim, {(0,) * dim: 1})

    @classmethod
    def monomial(cls, exps: Iterable[int], coef: int = 1) -> "LaurentPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: coef})

    def _check(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch {self.dim} vs {other.dim}")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.dim, out)

    def __neg__(self):
        return LaurentPoly(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.dim, {e: other * c for e, c in self.terms.items()})
        if self._check(other) is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e, c in self.terms.items():
            for f, d in other.terms.items():
                g = tuple(x + y for x, y in zip(e, f))
                out[g] = out.get(g, 0) + c * d
        return LaurentPoly(self.dim, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __hash__(self):
        return hash((self.dim, frozenset(self.terms.items())))

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def first_difference(self, other: "LaurentPoly"):
        """``(exponent, self_coef, other_coef)`` at the lexicographically first mismatch, else None."""
        for e in sorted(set(self.terms) | set(other.terms)):
            a, b = self.terms.get(e, 0), other.terms.get(e, 0)
            if a != b:
                return e, a, b
        return None

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mon = "*".join(f"z{i}^{x}" if x != 1 else f"z{i}" for i, x in enumerate(e) if x)
            if not mon:
                parts.append(str(c))
            elif c == 1:
                parts.append(mon)
            elif c == -1:
                parts.append("-" + mon)
            else:
                parts.append(f"{c}*{mon}")
        return " + ".join(parts).replace("+ -", "- ")


def product(factors: Iterable[LaurentPoly], dim: int) -> LaurentPoly:
    out = LaurentPoly.one(dim)
    for f in factors:
        out = out * f
    return out


def one_minus(exps) -> LaurentPoly:
    """``1 - e^exps``."""
    exps = tuple(exps)
    return LaurentPoly.one(len(exps)) - LaurentPoly.monomial(exps)
