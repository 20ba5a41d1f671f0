"""Slow reference computations used only by the tests.

Nothing here touches the package's kernels, blocks or rank routines:
chains are tuples, signs come from sorting, ranks from plain Fraction
elimination.
"""

from fractions import Fraction
from itertools import combinations, product


def sort_with_sign(seq):
    seq = list(seq)
    if len(set(seq)) < len(seq):
        return 0, None
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    return sign, tuple(seq)


def rank(rows):
    rows = [[Fraction(x) for x in r] for r in rows if any(r)]
    if not rows:
        return 0
    ncol = len(rows[0])
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def chain_boundary(table, mono):
    """Boundary of the basis wedge ``mono`` (sorted tuple) from a bracket table {(i, j): (c, k)}."""
    out = {}
    p = len(mono)
    for a in range(p):
        for b in range(a + 1, p):
            i, j = mono[a], mono[b]
            hit = table.get((i, j))
            if hit is None:
                continue
            c, k = hit
            rest = [mono[t] for t in range(p) if t not in (a, b)]
            s, key = sort_with_sign([k] + rest)
            if s:
                out[key] = out.get(key, 0) + (-1) ** (a + b) * c * s
    return {k: v for k, v in out.items() if v}


def betti_numbers(dim, table):
    """Betti numbers from ranks of the full boundary maps (no weight splitting)."""
    monos = [list(combinations(range(dim), p)) for p in range(dim + 1)]
    ranks = [0] * (dim + 2)
    for p in range(1, dim + 1):
        idx = {m: i for i, m in enumerate(monos[p - 1])}
        rows = []
        for m in monos[p]:
            row = [0] * len(monos[p - 1])
            for k, v in chain_boundary(table, m).items():
                row[idx[k]] = v
            rows.append(row)
        ranks[p] = rank(rows)
    return tuple(len(monos[p]) - ranks[p] - ranks[p + 1] for p in range(dim + 1))


def count_basis(T):
    """Count natural-basis monomials by brute force over every exponent vector
    on every node, bounded by the largest kappa."""
    big = max(T.kappa(j) for j in T.nodes)
    count = {}
    for j in T.nodes:
        anc = [s for s in T.nodes if s != j and T.chain(s, j)]
        c = 0
        for m in product(range(big + 1), repeat=len(anc)):
            cost = sum(x * T.kappa(j) // _chain_product(T, s, j) for x, s in zip(m, anc))
            if cost <= T.kappa(j):
                c += 1
        count[j] = c
    return count


def _chain_product(T, i, j):
    ch = T.chain(i, j)
    out = 1
    for a, b in zip(ch, ch[1:]):
        out *= T.weight[(a, b)]
    return out
