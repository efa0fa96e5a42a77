"""Exact matrices over GF(p) and the rationals.

A Matrix is immutable: every operation returns a fresh instance.  Storage
depends on the field: packed uint64 bit rows for GF(2), int64 residue arrays
for GF(p) with p odd, and object arrays of Fractions for the rationals.
Row reduction uses the first nonzero entry in column order as pivot, so
echelon forms, kernel bases and solutions are deterministic.

Solving and kernels follow the column convention: kernel_basis(M) spans
{x : M x = 0} and solve(M, b) returns x with M x = b.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .fields import GF, QQ, RationalField

_MAX_GFP_MATMUL = 2**62


def _inv_table(p: int) -> np.ndarray:
    t = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        t[a] = pow(a, p - 2, p)
    return t


_INV_CACHE: dict[int, np.ndarray] = {}


def _inverses(p: int) -> np.ndarray:
    if p not in _INV_CACHE:
        _INV_CACHE[p] = _inv_table(p)
    return _INV_CACHE[p]


class Matrix:
    """Immutable exact matrix over a field from tlschur.fields."""

    __slots__ = ("field", "nrows", "ncols", "_d")

    def __init__(self, field, nrows: int, ncols: int, data):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._d = data

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_rows(field, rows: Iterable[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        if isinstance(field, RationalField):
            d = np.empty((nrows, ncols), dtype=object)
            for i, r in enumerate(rows):
                for j, x in enumerate(r):
                    d[i, j] = field.coerce(x)
            return Matrix(field, nrows, ncols, d)
        dense = np.array(
            [[field.coerce(x) for x in r] for r in rows] if nrows else [],
            dtype=np.int64,
        ).reshape(nrows, ncols)
        if field.p == 2:
            return Matrix(field, nrows, ncols, _kernels.pack_rows(dense.astype(np.uint8)))
        return Matrix(field, nrows, ncols, dense)

    @staticmethod
    def zeros(field, nrows: int, ncols: int) -> "Matrix":
        if isinstance(field, RationalField):
            d = np.empty((nrows, ncols), dtype=object)
            d[...] = Fraction(0)
            return Matrix(field, nrows, ncols, d)
        if field.p == 2:
            return Matrix(field, nrows, ncols, np.zeros((nrows, max(1, (ncols + 63) // 64)), np.uint64))
        return Matrix(field, nrows, ncols, np.zeros((nrows, ncols), np.int64))

    @staticmethod
    def identity(field, n: int) -> "Matrix":
        if isinstance(field, RationalField):
            d = np.empty((n, n), dtype=object)
            d[...] = Fraction(0)
            for i in range(n):
                d[i, i] = Fraction(1)
            return Matrix(field, n, n, d)
        eye = np.eye(n, dtype=np.int64)
        if field.p == 2:
            return Matrix(field, n, n, _kernels.pack_rows(eye.astype(np.uint8)))
        return Matrix(field, n, n, eye)

    @staticmethod
    def row_vector(field, entries: Sequence) -> "Matrix":
        return Matrix.from_rows(field, [entries])

    @staticmethod
    def random(field, nrows: int, ncols: int, rng) -> "Matrix":
        return Matrix.from_rows(
            field, [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)]
        )

    @staticmethod
    def from_dense(field, dense: np.ndarray) -> "Matrix":
        """Internal-friendly constructor from an integer array (already canonical)."""
        nrows, ncols = dense.shape
        if isinstance(field, RationalField):
            d = np.empty((nrows, ncols), dtype=object)
            for i in range(nrows):
                for j in range(ncols):
                    d[i, j] = Fraction(int(dense[i, j]))
            return Matrix(field, nrows, ncols, d)
        if field.p == 2:
            return Matrix(field, nrows, ncols, _kernels.pack_rows(dense.astype(np.uint8)))
        return Matrix(field, nrows, ncols, np.asarray(dense, dtype=np.int64) % field.p)

    # -- raw views -----------------------------------------------------------

    def dense(self) -> np.ndarray:
        """Entries as a numpy array: uint8 for GF(2), int64 for GF(p), object for QQ."""
        if self._is_q():
            return self._d
        if self.field.p == 2:
            return _kernels.unpack_rows(self._d, self.ncols)
        return self._d

    def _is_q(self) -> bool:
        return isinstance(self.field, RationalField)

    def entry(self, i: int, j: int):
        if self._is_q():
            return self._d[i, j]
        if self.field.p == 2:
            return int((self._d[i, j >> 6] >> np.uint64(j & 63)) & np.uint64(1))
        return int(self._d[i, j])

    def row(self, i: int) -> tuple:
        return tuple(self.entry(i, j) for j in range(self.ncols))

    def to_rows(self) -> list[tuple]:
        if self.field != QQ and self.field.p == 2:
            dense = self.dense()
            return [tuple(int(x) for x in dense[i]) for i in range(self.nrows)]
        return [self.row(i) for i in range(self.nrows)]

    # -- structure -----------------------------------------------------------

    def transpose(self) -> "Matrix":
        if self._is_q():
            return Matrix(self.field, self.ncols, self.nrows, self._d.T.copy())
        if self.field.p == 2:
            return Matrix.from_dense(self.field, self.dense().T)
        return Matrix(self.field, self.ncols, self.nrows, self._d.T.copy())

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(self.field, len(idx), self.ncols, self._d[idx].copy())

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        idx = list(idx)
        if self.field != QQ and self.field.p == 2:
            return Matrix.from_dense(self.field, self.dense()[:, idx])
        return Matrix(self.field, self.nrows, len(idx), self._d[:, idx].copy())

    @staticmethod
    def vstack(mats: Sequence["Matrix"]) -> "Matrix":
        assert mats, "vstack of nothing"
        f = mats[0].field
        ncols = mats[0].ncols
        for m in mats:
            assert m.field == f and m.ncols == ncols
        data = np.concatenate([m._d for m in mats], axis=0)
        return Matrix(f, sum(m.nrows for m in mats), ncols, data)

    @staticmethod
    def hstack(mats: Sequence["Matrix"]) -> "Matrix":
        assert mats, "hstack of nothing"
        f = mats[0].field
        nrows = mats[0].nrows
        for m in mats:
            assert m.field == f and m.nrows == nrows
        if f != QQ and f.p == 2:
            dense = np.concatenate([m.dense() for m in mats], axis=1)
            return Matrix.from_dense(f, dense)
        data = np.concatenate([m._d for m in mats], axis=1)
        return Matrix(f, nrows, sum(m.ncols for m in mats), data)

    @staticmethod
    def block_diag(mats: Sequence["Matrix"]) -> "Matrix":
        assert mats, "block_diag of nothing"
        f = mats[0].field
        nr = sum(m.nrows for m in mats)
        nc = sum(m.ncols for m in mats)
        if isinstance(f, RationalField):
            out = np.empty((nr, nc), dtype=object)
            out[...] = Fraction(0)
            r = c = 0
            for m in mats:
                out[r : r + m.nrows, c : c + m.ncols] = m._d
                r += m.nrows
                c += m.ncols
            return Matrix(f, nr, nc, out)
        out = np.zeros((nr, nc), dtype=np.int64)
        r = c = 0
        for m in mats:
            out[r : r + m.nrows, c : c + m.ncols] = m.dense()
            r += m.nrows
            c += m.ncols
        return Matrix.from_dense(f, out)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        assert self.field == other.field and self.nrows == other.nrows and self.ncols == other.ncols
        if self._is_q():
            return Matrix(self.field, self.nrows, self.ncols, self._d + other._d)
        if self.field.p == 2:
            return Matrix(self.field, self.nrows, self.ncols, self._d ^ other._d)
        return Matrix(self.field, self.nrows, self.ncols, (self._d + other._d) % self.field.p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.field != QQ and self.field.p == 2:
            return self + other
        if self._is_q():
            return Matrix(self.field, self.nrows, self.ncols, self._d - other._d)
        return Matrix(self.field, self.nrows, self.ncols, (self._d - other._d) % self.field.p)

    def scale(self, c) -> "Matrix":
        c = self.field.coerce(c)
        if self._is_q():
            return Matrix(self.field, self.nrows, self.ncols, self._d * c)
        if self.field.p == 2:
            return self if c == 1 else Matrix.zeros(self.field, self.nrows, self.ncols)
        return Matrix(self.field, self.nrows, self.ncols, (self._d * c) % self.field.p)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        assert self.field == other.field, "field mismatch"
        assert self.ncols == other.nrows, "shape mismatch"
        f = self.field
        if self._is_q():
            prod = np.dot(self._d, other._d) if self.nrows and other.ncols else np.empty((self.nrows, other.ncols), object)
            if not (self.nrows and other.ncols):
                prod[...] = Fraction(0)
            if self.ncols == 0:
                prod = np.empty((self.nrows, other.ncols), object)
                prod[...] = Fraction(0)
            return Matrix(f, self.nrows, other.ncols, prod)
        if f.p == 2:
            out = np.zeros((self.nrows, other._d.shape[1]), np.uint64)
            _kernels.gf2_matmul(self._d, self.ncols, other._d, out)
            return Matrix(f, self.nrows, other.ncols, out)
        assert self.ncols * (f.p - 1) ** 2 < _MAX_GFP_MATMUL, "modulus too large for int64 matmul"
        # float64 products are exact while k*(p-1)^2 < 2^53 and run on BLAS
        if self.ncols * (f.p - 1) ** 2 < 2**53:
            prod = self._d.astype(np.float64) @ other._d.astype(np.float64)
            return Matrix(f, self.nrows, other.ncols, np.rint(prod).astype(np.int64) % f.p)
        return Matrix(f, self.nrows, other.ncols, (self._d @ other._d) % f.p)

    def kron(self, other: "Matrix") -> "Matrix":
        assert self.field == other.field
        if self._is_q():
            return Matrix(
                self.field,
                self.nrows * other.nrows,
                self.ncols * other.ncols,
                np.kron(self._d, other._d),
            )
        dense = np.kron(self.dense().astype(np.int64), other.dense().astype(np.int64))
        return Matrix.from_dense(self.field, dense % max(self.field.p, 2))

    def neg(self) -> "Matrix":
        if self._is_q():
            return Matrix(self.field, self.nrows, self.ncols, -self._d)
        if self.field.p == 2:
            return self
        return Matrix(self.field, self.nrows, self.ncols, (-self._d) % self.field.p)

    def is_zero(self) -> bool:
        if self._is_q():
            return all(x == 0 for x in self._d.flat)
        return not self._d.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.field != other.field or self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        return bool(np.array_equal(self._d, other._d))

    def __repr__(self):
        return f"Matrix({self.field.name}, {self.nrows}x{self.ncols})"

    # -- elimination -----------------------------------------------------------

    def rref(self) -> tuple["Matrix", int, tuple[int, ...]]:
        """Reduced row echelon form; returns (R, rank, pivot columns)."""
        f = self.field
        if self._is_q():
            d = self._d.copy()
            rank, pivots = _rat_rref(d)
            return Matrix(f, self.nrows, self.ncols, d), rank, tuple(pivots)
        if f.p == 2:
            d = self._d.copy()
            rank, pivots = _kernels.gf2_rref(d, self.ncols)
            return Matrix(f, self.nrows, self.ncols, d), int(rank), tuple(int(c) for c in pivots)
        d = self._d.copy()
        rank, pivots = _kernels.gfp_rref(d, f.p, _inverses(f.p))
        return Matrix(f, self.nrows, self.ncols, d), int(rank), tuple(int(c) for c in pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis_matrix(self) -> "Matrix":
        """Basis of {x : self @ x = 0}, one basis vector per row."""
        R, rank, pivots = self.rref()
        pivset = set(pivots)
        free = [j for j in range(self.ncols) if j not in pivset]
        f = self.field
        if not free:
            return Matrix.zeros(f, 0, self.ncols)
        if self._is_q():
            out = np.empty((len(free), self.ncols), dtype=object)
            out[...] = Fraction(0)
            for b, j in enumerate(free):
                out[b, j] = Fraction(1)
                for r, p in enumerate(pivots):
                    out[b, p] = -R._d[r, j]
            return Matrix(f, len(free), self.ncols, out)
        # only the rank pivot rows carry data; avoid densifying the zero tail
        Rd = R.select_rows(range(rank)).dense().astype(np.int64)
        out = np.zeros((len(free), self.ncols), dtype=np.int64)
        out[np.arange(len(free)), free] = 1
        if rank:
            out[:, list(pivots)] = (-Rd[:, free].T) % f.p
        return Matrix.from_dense(f, out)

    def kernel_basis(self) -> list[tuple]:
        """Kernel basis as a list of column vectors (tuples of scalars)."""
        return self.kernel_basis_matrix().to_rows()

    def solve_many(self, rhs: "Matrix") -> "Matrix | None":
        """Solve self @ X = rhs for all columns at once; None if any is unsolvable.

        Free variables are set to zero, so the solution is deterministic.
        """
        assert rhs.nrows == self.nrows
        if not self._is_q() and rhs.ncols > 8192:
            # chunk wide right-hand sides to cap the augmented working set
            parts = []
            for lo in range(0, rhs.ncols, 8192):
                cols = range(lo, min(lo + 8192, rhs.ncols))
                part = self.solve_many(rhs.select_columns(cols))
                if part is None:
                    return None
                parts.append(part)
            return Matrix.hstack(parts)
        aug = Matrix.hstack([self, rhs])
        R, rank, pivots = aug.rref()
        if any(p >= self.ncols for p in pivots):
            return None
        f = self.field
        if self._is_q():
            out = np.empty((self.ncols, rhs.ncols), dtype=object)
            out[...] = Fraction(0)
            for r, p in enumerate(pivots):
                out[p, :] = R._d[r, self.ncols :]
            return Matrix(f, self.ncols, rhs.ncols, out)
        # only the rank pivot rows and the rhs columns carry data
        Rd = R.select_rows(range(rank)).dense()[:, self.ncols :]
        out = np.zeros((self.ncols, rhs.ncols), dtype=Rd.dtype)
        for r, p in enumerate(pivots):
            out[p, :] = Rd[r]
        return Matrix.from_dense(f, out)

    def solve(self, b: Sequence) -> tuple | None:
        """One solution x of self @ x = b, or None if inconsistent."""
        col = Matrix.from_rows(self.field, [[x] for x in b]) if self.nrows else Matrix.zeros(self.field, 0, 1)
        sol = self.solve_many(col)
        if sol is None:
            return None
        return tuple(sol.entry(i, 0) for i in range(self.ncols))

    def row_space_contains(self, vec: "Matrix") -> bool:
        """True when every row of vec lies in the row space of self."""
        base = self.rank()
        return Matrix.vstack([self, vec]).rank() == base


def _rat_rref(a: np.ndarray) -> tuple[int, list[int]]:
    nrows, ncols = a.shape
    rank = 0
    pivots: list[int] = []
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        lead = a[rank, col]
        if lead != 1:
            a[rank, col:] = [x / lead for x in a[rank, col:]]
        for r in range(nrows):
            c = a[r, col]
            if r != rank and c != 0:
                a[r, col:] = [x - c * y for x, y in zip(a[r, col:], a[rank, col:])]
        pivots.append(col)
        rank += 1
    return rank, pivots


class RowSpace:
    """Incremental row space: insert rows, keep an rref basis, test membership."""

    def __init__(self, field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.basis = Matrix.zeros(field, 0, ncols)
        self._pivots: tuple = ()

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def insert(self, rows: Matrix) -> bool:
        """Add rows; returns True if the dimension grew."""
        before = self.dim
        stacked = Matrix.vstack([self.basis, rows]) if self.dim else rows
        R, rank, pivots = stacked.rref()
        self.basis = R.select_rows(range(rank))
        self._pivots = pivots
        return self.dim > before

    def residual_rank(self, rows: Matrix) -> int:
        """Rank of rows modulo the current basis.

        The basis is in reduced echelon form, so each candidate's
        elimination coefficients are just its entries at the pivot columns;
        one product clears all of them at once.
        """
        if self.dim == 0:
            return rows.rank()
        coeffs = rows.select_columns(self._pivots)
        return (rows - coeffs @ self.basis).rank()

    def contains(self, rows: Matrix) -> bool:
        if self.dim == 0:
            return rows.is_zero()
        return self.residual_rank(rows) == 0
