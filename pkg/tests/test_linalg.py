import random

import numpy as np
import pytest

from tlschur.fields import GF, GF2, GF5, QQ
from tlschur.linalg import Matrix, RowSpace

FIELDS = [GF2, GF5, GF(3), QQ]
IDS = [f.name for f in FIELDS]


def rand_matrix(f, nrows, ncols, rng):
    return Matrix.from_rows(f, [[f.random(rng) for _ in range(ncols)] for _ in range(nrows)])


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
def test_round_trip_and_entry(f):
    rng = random.Random(1)
    m = rand_matrix(f, 5, 7, rng)
    again = Matrix.from_rows(f, m.to_rows())
    assert m == again
    assert m.entry(2, 3) == m.row(2)[3]
    assert m.transpose().transpose() == m


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
def test_matmul_identity_and_associativity(f):
    rng = random.Random(2)
    a = rand_matrix(f, 4, 6, rng)
    b = rand_matrix(f, 6, 3, rng)
    c = rand_matrix(f, 3, 5, rng)
    assert Matrix.identity(f, 4) @ a == a
    assert a @ Matrix.identity(f, 6) == a
    assert (a @ b) @ c == a @ (b @ c)
    assert (a @ b).transpose() == b.transpose() @ a.transpose()


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
def test_addition_laws(f):
    rng = random.Random(3)
    a = rand_matrix(f, 3, 4, rng)
    b = rand_matrix(f, 3, 4, rng)
    assert a + b == b + a
    assert a - a == Matrix.zeros(f, 3, 4)
    assert (a + b) - b == a
    two = f.add(f.one, f.one)
    assert a.scale(two) == a + a


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
@pytest.mark.parametrize("seed", range(5))
def test_rref_shape_and_rank(f, seed):
    rng = random.Random(seed)
    nr, nc = rng.randint(1, 9), rng.randint(1, 9)
    m = rand_matrix(f, nr, nc, rng)
    R, rank, pivots = m.rref()
    assert rank == len(pivots) <= min(nr, nc)
    assert list(pivots) == sorted(pivots)
    for r, c in enumerate(pivots):
        col = [R.entry(i, c) for i in range(nr)]
        assert col[r] == f.one and all(x == f.zero for i, x in enumerate(col) if i != r)
    for i in range(rank, nr):
        assert all(x == f.zero for x in R.row(i))
    assert m.rank() == m.transpose().rank()


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
@pytest.mark.parametrize("seed", range(5))
def test_kernel_rank_nullity(f, seed):
    rng = random.Random(100 + seed)
    nr, nc = rng.randint(1, 8), rng.randint(1, 8)
    m = rand_matrix(f, nr, nc, rng)
    k = m.kernel_basis_matrix()
    assert m.rank() + k.nrows == nc
    if k.nrows:
        assert (m @ k.transpose()).is_zero()
        assert k.rank() == k.nrows


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
@pytest.mark.parametrize("seed", range(4))
def test_solve_many_consistent_and_inconsistent(f, seed):
    rng = random.Random(200 + seed)
    nr, nc, k = rng.randint(2, 7), rng.randint(2, 7), rng.randint(1, 4)
    a = rand_matrix(f, nr, nc, rng)
    x = rand_matrix(f, nc, k, rng)
    rhs = a @ x
    sol = a.solve_many(rhs)
    assert sol is not None
    assert a @ sol == rhs
    # an rhs outside the column space must be rejected
    if a.rank() < nr:
        target = Matrix.identity(f, nr)
        full = a.solve_many(target)
        assert full is None


def test_solve_many_wide_rhs_chunking():
    # rhs wider than the chunking threshold takes the split path
    f = GF2
    rng = random.Random(7)
    a = rand_matrix(f, 6, 6, rng)
    while a.rank() < 6:
        a = rand_matrix(f, 6, 6, rng)
    x = rand_matrix(f, 6, 8200, rng)
    rhs = a @ x
    sol = a.solve_many(rhs)
    assert sol is not None and a @ sol == rhs


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
def test_stacking_and_blocks(f):
    rng = random.Random(5)
    a = rand_matrix(f, 2, 3, rng)
    b = rand_matrix(f, 4, 3, rng)
    v = Matrix.vstack([a, b])
    assert v.nrows == 6 and v.select_rows(range(2)) == a and v.select_rows(range(2, 6)) == b
    c = rand_matrix(f, 2, 5, rng)
    h = Matrix.hstack([a, c])
    assert h.ncols == 8 and h.select_columns(range(3)) == a and h.select_columns(range(3, 8)) == c
    d = Matrix.block_diag([a, c])
    assert d.nrows == 4 and d.ncols == 8
    assert d.select_rows(range(2)).select_columns(range(3)) == a
    assert d.select_rows(range(2, 4)).select_columns(range(3, 8)) == c
    assert d.select_rows(range(2)).select_columns(range(3, 8)).is_zero()


@pytest.mark.parametrize("f", [GF2, GF5, QQ], ids=["GF(2)", "GF(5)", "QQ"])
def test_kron_mixed_product(f):
    rng = random.Random(6)
    a = rand_matrix(f, 2, 3, rng)
    b = rand_matrix(f, 3, 2, rng)
    c = rand_matrix(f, 2, 2, rng)
    d = rand_matrix(f, 2, 3, rng)
    assert (a @ b).kron(c @ d) == (a.kron(c)) @ (b.kron(d))


@pytest.mark.parametrize("f", FIELDS, ids=IDS)
def test_row_space_and_residual_rank(f):
    rng = random.Random(8)
    sp = RowSpace(f, 6)
    a = rand_matrix(f, 3, 6, rng)
    b = rand_matrix(f, 4, 6, rng)
    sp.insert(a)
    assert sp.dim == a.rank()
    gain = sp.residual_rank(b)
    assert gain == Matrix.vstack([a, b]).rank() - a.rank()
    sp.insert(b)
    assert sp.dim == Matrix.vstack([a, b]).rank()
    assert sp.contains(a) and sp.contains(b)
    assert sp.contains(a.select_rows([0]) + b.select_rows([1]))


def test_gf2_packing_odd_widths():
    rng = random.Random(9)
    for nc in (1, 63, 64, 65, 129):
        m = rand_matrix(GF2, 5, nc, rng)
        assert np.array_equal(m.dense(), Matrix.from_dense(GF2, m.dense()).dense())
        assert m.transpose().transpose() == m


@pytest.mark.parametrize("f", [GF5, GF(3)], ids=["GF(5)", "GF(3)"])
def test_large_matmul_blas_path_exact(f):
    # wide product goes through the float64 BLAS path; compare against int64
    rng = random.Random(10)
    a = rand_matrix(f, 40, 900, rng)
    b = rand_matrix(f, 900, 30, rng)
    got = (a @ b).dense()
    want = (a.dense().astype(np.int64) @ b.dense().astype(np.int64)) % f.p
    assert np.array_equal(got, want)


def test_solve_vector_and_kernel_list():
    f = GF5
    a = Matrix.from_rows(f, [[1, 2], [2, 4]])
    assert a.rank() == 1
    sol = a.solve([3, 6])
    assert sol is not None
    assert a @ Matrix.from_rows(f, [[sol[0]], [sol[1]]]) == Matrix.from_rows(f, [[3], [6]])
    assert a.solve([1, 1]) is None
    kb = a.kernel_basis()
    assert len(kb) == 1
