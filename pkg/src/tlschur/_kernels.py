"""Elimination kernels over GF(2) and GF(p).

GF(2) matrices are stored as packed bit rows: one uint64 word holds 64
columns, bit j of word w being column 64*w + j.  Row operations are whole-word
XORs.  GF(p) matrices are int64 arrays of canonical residues.

Each kernel has two implementations: a numba @njit version and a pure-numpy
vectorized fallback.  The active backend is chosen at import time; setting
the environment variable TLSCHUR_PURE_NUMPY=1 (or a failed numba import)
selects the fallback.  Both implementations are importable by name so the
benchmark and the parity tests can compare them directly.
"""

from __future__ import annotations

import os

import numpy as np

_PURE_ENV = os.environ.get("TLSCHUR_PURE_NUMPY", "")
_WANT_NUMBA = _PURE_ENV in ("", "0")

try:  # pragma: no cover - exercised implicitly by backend selection
    if _WANT_NUMBA:
        from numba import njit

        HAS_NUMBA = True
    else:
        HAS_NUMBA = False
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

if not HAS_NUMBA:
    def njit(*args, **kwargs):  # type: ignore[no-redef]
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


# ---------------------------------------------------------------------------
# packing helpers (numpy only; not hot)

def pack_rows(dense: np.ndarray) -> np.ndarray:
    """Pack a 0/1 uint8 matrix into uint64 words, 64 columns per word."""
    dense = np.ascontiguousarray(dense, dtype=np.uint8)
    nrows, ncols = dense.shape
    nwords = max(1, (ncols + 63) // 64)
    pad = nwords * 64 - ncols
    if pad:
        dense = np.concatenate([dense, np.zeros((nrows, pad), np.uint8)], axis=1)
    v = dense.reshape(nrows, nwords, 64).astype(np.uint64)
    shifts = np.arange(64, dtype=np.uint64)
    return np.bitwise_or.reduce(v << shifts, axis=2)


def unpack_rows(packed: np.ndarray, ncols: int) -> np.ndarray:
    """Inverse of pack_rows; returns a uint8 matrix of shape (nrows, ncols)."""
    nrows, nwords = packed.shape
    shifts = np.arange(64, dtype=np.uint64)
    out = np.empty((nrows, nwords * 64), dtype=np.uint8)
    # one word-column at a time keeps the intermediate 64x smaller
    for w in range(nwords):
        out[:, w * 64 : (w + 1) * 64] = (packed[:, w : w + 1] >> shifts) & np.uint64(1)
    return out[:, :ncols]


# ---------------------------------------------------------------------------
# GF(2) reduced row echelon form

@njit(cache=True)
def gf2_rref_numba(rows, ncols):  # pragma: no cover - numba-compiled
    nrows, nwords = rows.shape
    cap = nrows if nrows < ncols else ncols
    pivots = np.empty(cap, dtype=np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        b = np.uint64(col & 63)
        one = np.uint64(1)
        piv = -1
        for r in range(rank, nrows):
            if (rows[r, w] >> b) & one:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(w, nwords):
                t = rows[rank, j]
                rows[rank, j] = rows[piv, j]
                rows[piv, j] = t
        for r in range(nrows):
            if r != rank and ((rows[r, w] >> b) & one):
                for j in range(w, nwords):
                    rows[r, j] ^= rows[rank, j]
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank]


def gf2_rref_numpy(rows, ncols):
    nrows, nwords = rows.shape
    pivots = []
    rank = 0
    one = np.uint64(1)
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        b = np.uint64(col & 63)
        cand = np.nonzero((rows[rank:, w] >> b) & one)[0]
        if cand.size == 0:
            continue
        piv = rank + int(cand[0])
        if piv != rank:
            rows[[rank, piv], w:] = rows[[piv, rank], w:]
        hits = ((rows[:, w] >> b) & one).astype(bool)
        hits[rank] = False
        if hits.any():
            rows[hits, w:] ^= rows[rank, w:]
        pivots.append(col)
        rank += 1
    return rank, np.asarray(pivots, dtype=np.int64)


# ---------------------------------------------------------------------------
# GF(2) matrix product: out[i] = XOR of rows of b selected by bits of a[i]

@njit(cache=True)
def gf2_matmul_numba(a, a_ncols, b, out):  # pragma: no cover - numba-compiled
    m = a.shape[0]
    wb = b.shape[1]
    one = np.uint64(1)
    for i in range(m):
        for k in range(a_ncols):
            if (a[i, k >> 6] >> np.uint64(k & 63)) & one:
                for j in range(wb):
                    out[i, j] ^= b[k, j]


def gf2_matmul_numpy(a, a_ncols, b, out):
    one = np.uint64(1)
    for k in range(a_ncols):
        w = k >> 6
        sh = np.uint64(k & 63)
        mask = ((a[:, w] >> sh) & one).astype(bool)
        if mask.any():
            out[mask] ^= b[k]


# ---------------------------------------------------------------------------
# GF(p) reduced row echelon form (int64 residues, inverse lookup table)

@njit(cache=True)
def gfp_rref_numba(m, p, inv):  # pragma: no cover - numba-compiled
    nrows, ncols = m.shape
    cap = nrows if nrows < ncols else ncols
    pivots = np.empty(cap, dtype=np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if m[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for j in range(col, ncols):
                t = m[rank, j]
                m[rank, j] = m[piv, j]
                m[piv, j] = t
        s = inv[m[rank, col]]
        if s != 1:
            for j in range(col, ncols):
                m[rank, j] = (m[rank, j] * s) % p
        for r in range(nrows):
            c = m[r, col]
            if r != rank and c != 0:
                for j in range(col, ncols):
                    m[r, j] = (m[r, j] - c * m[rank, j]) % p
        pivots[rank] = col
        rank += 1
    return rank, pivots[:rank]


def gfp_rref_numpy(m, p, inv):
    nrows, ncols = m.shape
    pivots = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        cand = np.nonzero(m[rank:, col])[0]
        if cand.size == 0:
            continue
        piv = rank + int(cand[0])
        if piv != rank:
            m[[rank, piv], col:] = m[[piv, rank], col:]
        s = inv[m[rank, col]]
        if s != 1:
            m[rank, col:] = (m[rank, col:] * s) % p
        factors = m[:, col].copy()
        factors[rank] = 0
        hits = np.nonzero(factors)[0]
        if hits.size:
            m[hits, col:] = (m[hits, col:] - factors[hits, None] * m[rank, col:]) % p
        pivots.append(col)
        rank += 1
    return rank, np.asarray(pivots, dtype=np.int64)


# ---------------------------------------------------------------------------
# characteristic polynomial mod p: Hessenberg similarity reduction, then the
# leading-principal-minor recurrence; returns coeffs[j] of t^j, length n + 1

@njit(cache=True)
def gfp_charpoly_numba(a, p, inv):  # pragma: no cover - numba-compiled
    n = a.shape[0]
    h = a.copy()
    for c in range(n - 2):
        piv = -1
        for r in range(c + 1, n):
            if h[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != c + 1:
            for j in range(n):
                t = h[piv, j]
                h[piv, j] = h[c + 1, j]
                h[c + 1, j] = t
            for i in range(n):
                t = h[i, piv]
                h[i, piv] = h[i, c + 1]
                h[i, c + 1] = t
        s = inv[h[c + 1, c]]
        for r in range(c + 2, n):
            f = (h[r, c] * s) % p
            if f != 0:
                for j in range(c, n):
                    h[r, j] = (h[r, j] - f * h[c + 1, j]) % p
                for i in range(n):
                    h[i, c + 1] = (h[i, c + 1] + f * h[i, r]) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        dk = h[k - 1, k - 1]
        for j in range(k):
            polys[k, j + 1] = polys[k - 1, j]
        for j in range(k):
            polys[k, j] = (polys[k, j] - dk * polys[k - 1, j]) % p
        prod_sub = 1
        for i in range(k - 1, 0, -1):
            prod_sub = (prod_sub * h[i, i - 1]) % p
            if prod_sub == 0:
                break
            coef = (h[i - 1, k - 1] * prod_sub) % p
            if coef != 0:
                for j in range(i):
                    polys[k, j] = (polys[k, j] - coef * polys[i - 1, j]) % p
    return polys[n].copy()


def gfp_charpoly_numpy(a, p, inv):
    n = a.shape[0]
    h = a.astype(np.int64).copy()
    for c in range(n - 2):
        nz = np.nonzero(h[c + 1 :, c])[0]
        if nz.size == 0:
            continue
        piv = c + 1 + int(nz[0])
        if piv != c + 1:
            h[[piv, c + 1], :] = h[[c + 1, piv], :]
            h[:, [piv, c + 1]] = h[:, [c + 1, piv]]
        s = int(inv[h[c + 1, c]])
        f = (h[c + 2 :, c] * s) % p
        h[c + 2 :, :] = (h[c + 2 :, :] - f[:, None] * h[c + 1, :]) % p
        h[:, c + 1] = (h[:, c + 1] + h[:, c + 2 :] @ f) % p
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        polys[k, 1 : k + 1] = polys[k - 1, :k]
        polys[k, :k] = (polys[k, :k] - h[k - 1, k - 1] * polys[k - 1, :k]) % p
        prod_sub = 1
        for i in range(k - 1, 0, -1):
            prod_sub = (prod_sub * int(h[i, i - 1])) % p
            if prod_sub == 0:
                break
            coef = (int(h[i - 1, k - 1]) * prod_sub) % p
            if coef:
                polys[k, :i] = (polys[k, :i] - coef * polys[i - 1, :i]) % p
    return polys[n] % p


# ---------------------------------------------------------------------------
# backend selection

if HAS_NUMBA:
    BACKEND = "numba"
    gf2_rref = gf2_rref_numba
    gf2_matmul = gf2_matmul_numba
    gfp_rref = gfp_rref_numba
    gfp_charpoly = gfp_charpoly_numba
else:
    BACKEND = "numpy"
    gf2_rref = gf2_rref_numpy
    gf2_matmul = gf2_matmul_numpy
    gfp_rref = gfp_rref_numpy
    gfp_charpoly = gfp_charpoly_numpy


def active_backend() -> str:
    return BACKEND
