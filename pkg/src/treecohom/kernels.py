"""Hot loops over bitmask exterior monomials, with numba and pure-numpy versions.

Every kernel exists twice: ``*_numba`` (``@njit``) and ``*_numpy``
(vectorised over monomials).  The public names dispatch on the environment
variable ``TREECOHOM_BACKEND`` (``numba`` by default, ``numpy`` to disable
JIT).  Both versions return identical arrays; the test-suite checks this.

Conventions shared by all kernels:

* a monomial is an int64 bitmask over basis indices, factors in increasing
  index order;
* ``brackets`` is an ``(B, 4)`` int64 array of rows ``(i, j, k, alpha)``,
  ``i < j``, meaning ``[u_i, u_j] = alpha * u_k``;
* ``pos[mask]`` is the row/column index of ``mask`` inside its graded block.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda fn: fn


def _backend_from_env() -> str:
    name = os.environ.get("TREECOHOM_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"TREECOHOM_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


BACKEND = _backend_from_env()


# -- numba ---------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _popcount(x):
    x = x - ((x >> 1) & 0x5555555555555555)
    x = (x & 0x3333333333333333) + ((x >> 2) & 0x3333333333333333)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0F
    return (x * 0x0101010101010101) >> 56 & 0xFF


@njit(cache=True, nogil=True)
def boundary_coo_numba(masks, brackets, pos):
    n = masks.shape[0]
    nb = brackets.shape[0]
    count = 0
    for c in range(n):
        m = masks[c]
        for b in range(nb):
            i = brackets[b, 0]
            j = brackets[b, 1]
            k = brackets[b, 2]
            if (m >> i) & 1 and (m >> j) & 1:
                rest = m ^ (np.int64(1) << i) ^ (np.int64(1) << j)
                if not (rest >> k) & 1:
                    count += 1
    rows = np.empty(count, np.int64)
    cols = np.empty(count, np.int64)
    vals = np.empty(count, np.int64)
    t = 0
    for c in range(n):
        m = masks[c]
        for b in range(nb):
            i = brackets[b, 0]
            j = brackets[b, 1]
            k = brackets[b, 2]
            if (m >> i) & 1 and (m >> j) & 1:
                rest = m ^ (np.int64(1) << i) ^ (np.int64(1) << j)
                if not (rest >> k) & 1:
                    e = (_popcount(m & ((np.int64(1) << i) - 1))
                         + _popcount(m & ((np.int64(1) << j) - 1))
                         + _popcount(rest & ((np.int64(1) << k) - 1)))
                    rows[t] = pos[rest | (np.int64(1) << k)]
                    cols[t] = c
                    vals[t] = -brackets[b, 3] if e & 1 else brackets[b, 3]
                    t += 1
    return rows, cols, vals


@njit(cache=True, nogil=True)
def coboundary_coo_numba(masks, brackets, pos):
    n = masks.shape[0]
    nb = brackets.shape[0]
    count = 0
    for c in range(n):
        m = masks[c]
        for b in range(nb):
            i = brackets[b, 0]
            j = brackets[b, 1]
            k = brackets[b, 2]
            if (m >> k) & 1:
                rest = m ^ (np.int64(1) << k)
                if not ((rest >> i) & 1 or (rest >> j) & 1):
                    count += 1
    rows = np.empty(count, np.int64)
    cols = np.empty(count, np.int64)
    vals = np.empty(count, np.int64)
    t = 0
    for c in range(n):
        m = masks[c]
        for b in range(nb):
            i = brackets[b, 0]
            j = brackets[b, 1]
            k = brackets[b, 2]
            if (m >> k) & 1:
                rest = m ^ (np.int64(1) << k)
                if not ((rest >> i) & 1 or (rest >> j) & 1):
                    below = rest & ((np.int64(1) << k) - 1)
                    above = rest ^ below
                    # position sign of u_k, then sorting u_i, u_j into place
                    e = (_popcount(m & ((np.int64(1) << k) - 1)) + 1
                         + _popcount(below >> (i + 1)) + _popcount(above & ((np.int64(1) << i) - 1))
                         + _popcount(below >> (j + 1)) + _popcount(above & ((np.int64(1) << j) - 1)))
                    rows[t] = pos[rest | (np.int64(1) << i) | (np.int64(1) << j)]
                    cols[t] = c
                    vals[t] = -brackets[b, 3] if e & 1 else brackets[b, 3]
                    t += 1
    return rows, cols, vals


@njit(cache=True, nogil=True)
def rank_mod_p_numba(a, p):
    a = a % p  # fresh array with entries in [0, p)
    nr, nc = a.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, nc):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        # modular inverse by Fermat
        inv = np.int64(1)
        base = a[r, c]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        # the pivot row is usually sparse: touch only its nonzero columns
        nzc = np.empty(nc - c, np.int64)
        nz = 0
        for j in range(c, nc):
            if a[r, j] != 0:
                a[r, j] = a[r, j] * inv % p
                nzc[nz] = j
                nz += 1
        for i in range(r + 1, nr):
            f = a[i, c]
            if f != 0:
                g = p - f
                for t in range(nz):
                    j = nzc[t]
                    a[i, j] = (a[i, j] + g * a[r, j]) % p
        r += 1
    return r


# -- numpy -----------------------------------------------------------------------

def _bitcount(x):
    return np.bitwise_count(x).astype(np.int64)


def boundary_coo_numpy(masks, brackets, pos):
    one = np.int64(1)
    cols_all = np.arange(masks.shape[0], dtype=np.int64)
    rows, cols, vals = [], [], []
    for i, j, k, alpha in brackets:
        bi, bj, bk = one << i, one << j, one << k
        rest = masks ^ bi ^ bj
        sel = ((masks & bi) != 0) & ((masks & bj) != 0) & ((rest & bk) == 0)
        if not sel.any():
            continue
        m, r = masks[sel], rest[sel]
        e = _bitcount(m & (bi - 1)) + _bitcount(m & (bj - 1)) + _bitcount(r & (bk - 1))
        rows.append(pos[r | bk])
        cols.append(cols_all[sel])
        vals.append(np.where(e & 1, -alpha, alpha))
    return _cat(rows, cols, vals)


def coboundary_coo_numpy(masks, brackets, pos):
    one = np.int64(1)
    cols_all = np.arange(masks.shape[0], dtype=np.int64)
    rows, cols, vals = [], [], []
    for i, j, k, alpha in brackets:
        bi, bj, bk = one << i, one << j, one << k
        rest = masks ^ bk
        sel = ((masks & bk) != 0) & ((rest & (bi | bj)) == 0)
        if not sel.any():
            continue
        m, r = masks[sel], rest[sel]
        below = r & (bk - 1)
        above = r ^ below
        e = (_bitcount(m & (bk - 1)) + 1
             + _bitcount(below >> (i + 1)) + _bitcount(above & (bi - 1))
             + _bitcount(below >> (j + 1)) + _bitcount(above & (bj - 1)))
        rows.append(pos[r | bi | bj])
        cols.append(cols_all[sel])
        vals.append(np.where(e & 1, -alpha, alpha))
    return _cat(rows, cols, vals)


def _cat(rows, cols, vals):
    if not rows:
        z = np.zeros(0, np.int64)
        return z, z.copy(), z.copy()
    r, c, v = (np.concatenate(x).astype(np.int64) for x in (rows, cols, vals))
    # numba emits entries column by column, bracket by bracket; match that order
    order = np.argsort(c, kind="stable")
    return r[order], c[order], v[order]


def rank_mod_p_numpy(a, p):
    p = int(p)
    a = np.array(a, dtype=np.int64) % p
    nr, nc = a.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, c:] = a[r, c:] * inv % p
        below = a[r + 1:, c]
        hit = np.flatnonzero(below)
        if hit.size:
            rows = r + 1 + hit
            a[rows, c:] = (a[rows, c:] - np.outer(a[rows, c], a[r, c:]) % p) % p
        r += 1
    return r


# -- dispatch ----------------------------------------------------------------------

def _pick(name):
    return globals()[f"{name}_{BACKEND}"]


def boundary_coo(masks, brackets, pos):
    """COO triplets of the boundary map on the monomials ``masks`` (one degree)."""
    return _pick("boundary_coo")(masks, brackets, pos)


def coboundary_coo(masks, brackets, pos):
    """COO triplets of the coboundary map on the monomials ``masks`` (one degree)."""
    return _pick("coboundary_coo")(masks, brackets, pos)


def rank_mod_p(a, p):
    """Rank of a dense integer matrix over the prime field of order ``p < 2**31``."""
    a = np.ascontiguousarray(a, dtype=np.int64)
    if a.size == 0:
        return 0
    if BACKEND == "numba":
        return int(rank_mod_p_numba(a, np.int64(p)))
    return rank_mod_p_numpy(a, p)
