import numpy as np
import pytest

from tlschur import _kernels as K

PRIMES = (2, 3, 5)


def inv_table(p):
    inv = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        inv[x] = pow(x, p - 2, p)
    return inv


def ref_rref_mod(a, p):
    """Slow reference elimination in plain Python."""
    a = [[int(x) % p for x in row] for row in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    rank, pivots = 0, []
    for col in range(nc):
        piv = next((r for r in range(rank, nr) if a[r][col] % p), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        s = pow(a[rank][col], p - 2, p)
        a[rank] = [(x * s) % p for x in a[rank]]
        for r in range(nr):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[rank])]
        pivots.append(col)
        rank += 1
    return a, rank, pivots


def ref_det_mod(a, p):
    a = [row[:] for row in a]
    n = len(a)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = (det * a[col][col]) % p
        s = pow(a[col][col], p - 2, p)
        for r in range(col + 1, n):
            f = (a[r][col] * s) % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return det % p


def poly_eval_matrix(coeffs, a, p):
    """coeffs[j] t^j evaluated at the matrix a, mod p."""
    n = a.shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    power = np.eye(n, dtype=np.int64)
    for c in coeffs:
        acc = (acc + int(c) * power) % p
        power = (power @ a) % p
    return acc


@pytest.mark.parametrize("ncols", [1, 3, 63, 64, 65, 130])
def test_pack_unpack_round_trip(ncols):
    rng = np.random.default_rng(ncols)
    dense = rng.integers(0, 2, size=(7, ncols)).astype(np.uint8)
    packed = K.pack_rows(dense)
    assert packed.shape == (7, (ncols + 63) // 64)
    assert np.array_equal(K.unpack_rows(packed, ncols), dense)


@pytest.mark.parametrize("shape", [(4, 5, 6), (16, 70, 3), (65, 65, 65), (1, 1, 1)])
def test_gf2_matmul_matches_numpy(shape):
    m, k, n = shape
    rng = np.random.default_rng(sum(shape))
    a = rng.integers(0, 2, size=(m, k)).astype(np.uint8)
    b = rng.integers(0, 2, size=(k, n)).astype(np.uint8)
    out = np.zeros((m, (n + 63) // 64), dtype=np.uint64)
    K.gf2_matmul(K.pack_rows(a), k, K.pack_rows(b), out)
    want = (a.astype(np.int64) @ b.astype(np.int64)) % 2
    assert np.array_equal(K.unpack_rows(out, n), want.astype(np.uint8))


@pytest.mark.parametrize("seed", range(6))
def test_gf2_rref_against_reference(seed):
    rng = np.random.default_rng(seed)
    nr, nc = rng.integers(1, 18, size=2)
    dense = rng.integers(0, 2, size=(nr, nc)).astype(np.uint8)
    ref, ref_rank, ref_pivots = ref_rref_mod(dense.tolist(), 2)
    packed = K.pack_rows(dense)
    rank, pivots = K.gf2_rref(packed, int(nc))
    assert rank == ref_rank
    assert list(pivots) == ref_pivots
    assert np.array_equal(K.unpack_rows(packed, int(nc)), np.array(ref, dtype=np.uint8).reshape(nr, nc))


@pytest.mark.parametrize("p", (3, 5))
@pytest.mark.parametrize("seed", range(4))
def test_gfp_rref_against_reference(p, seed):
    rng = np.random.default_rng(97 * p + seed)
    nr, nc = rng.integers(1, 15, size=2)
    a = rng.integers(0, p, size=(nr, nc)).astype(np.int64)
    ref, ref_rank, ref_pivots = ref_rref_mod(a.tolist(), p)
    work = a.copy()
    rank, pivots = K.gfp_rref(work, p, inv_table(p))
    assert rank == ref_rank
    assert list(pivots) == ref_pivots
    assert np.array_equal(work, np.array(ref, dtype=np.int64).reshape(nr, nc))


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("n", [0, 1, 2, 3, 5, 8, 12])
def test_charpoly_cayley_hamilton(p, n):
    rng = np.random.default_rng(1000 * p + n)
    a = rng.integers(0, p, size=(n, n)).astype(np.int64)
    coeffs = K.gfp_charpoly(a.copy(), p, inv_table(p))
    assert coeffs.shape == (n + 1,)
    assert coeffs[n] % p == 1  # monic
    if n >= 1:
        assert coeffs[n - 1] % p == (-int(a.trace())) % p
        assert coeffs[0] % p == (pow(-1, n, p) * ref_det_mod(a.tolist(), p)) % p
    assert not poly_eval_matrix(coeffs, a, p).any()


@pytest.mark.parametrize("p", (3, 5))
def test_charpoly_triangular_roots(p):
    rng = np.random.default_rng(p)
    n = 6
    a = np.triu(rng.integers(0, p, size=(n, n))).astype(np.int64)
    coeffs = K.gfp_charpoly(a.copy(), p, inv_table(p))
    # product of (t - d_i) expanded mod p
    want = np.zeros(n + 1, dtype=np.int64)
    want[0] = 1
    for d in np.diag(a):
        nxt = np.zeros(n + 1, dtype=np.int64)
        nxt[1:] += want[:-1]
        nxt -= int(d) * want
        want = nxt % p
    assert np.array_equal(coeffs % p, want)


@pytest.mark.parametrize("p", PRIMES)
def test_charpoly_companion(p):
    # companion matrix of t^4 + c3 t^3 + c2 t^2 + c1 t + c0
    rng = np.random.default_rng(31 + p)
    c = rng.integers(0, p, size=4).astype(np.int64)
    n = 4
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n - 1):
        a[i + 1, i] = 1
    a[:, n - 1] = (-c) % p
    coeffs = K.gfp_charpoly(a.copy(), p, inv_table(p))
    want = np.append(c, 1) % p
    assert np.array_equal(coeffs % p, want)


@pytest.mark.skipif(not K.HAS_NUMBA, reason="numba backend not active")
class TestBackendParity:
    @pytest.mark.parametrize("seed", range(4))
    def test_gf2_rref(self, seed):
        rng = np.random.default_rng(seed)
        nr, nc = rng.integers(1, 80, size=2)
        dense = rng.integers(0, 2, size=(nr, nc)).astype(np.uint8)
        a, b = K.pack_rows(dense), K.pack_rows(dense)
        ra, pa = K.gf2_rref_numba(a, int(nc))
        rb, pb = K.gf2_rref_numpy(b, int(nc))
        assert ra == rb and list(pa) == list(pb)
        assert np.array_equal(a, b)

    @pytest.mark.parametrize("p", (3, 5))
    def test_gfp_rref(self, p):
        rng = np.random.default_rng(p)
        a = rng.integers(0, p, size=(23, 31)).astype(np.int64)
        x, y = a.copy(), a.copy()
        ra, pa = K.gfp_rref_numba(x, p, inv_table(p))
        rb, pb = K.gfp_rref_numpy(y, p, inv_table(p))
        assert ra == rb and list(pa) == list(pb)
        assert np.array_equal(x, y)

    @pytest.mark.parametrize("p", PRIMES)
    @pytest.mark.parametrize("n", [1, 7, 20, 33])
    def test_gfp_charpoly(self, p, n):
        rng = np.random.default_rng(7 * p + n)
        a = rng.integers(0, p, size=(n, n)).astype(np.int64)
        ca = K.gfp_charpoly_numba(a.copy(), p, inv_table(p))
        cb = K.gfp_charpoly_numpy(a.copy(), p, inv_table(p))
        assert np.array_equal(ca % p, cb % p)

    def test_gf2_matmul(self):
        rng = np.random.default_rng(5)
        a = rng.integers(0, 2, size=(40, 90)).astype(np.uint8)
        b = rng.integers(0, 2, size=(90, 130)).astype(np.uint8)
        oa = np.zeros((40, 3), dtype=np.uint64)
        ob = np.zeros((40, 3), dtype=np.uint64)
        K.gf2_matmul_numba(K.pack_rows(a), 90, K.pack_rows(b), oa)
        K.gf2_matmul_numpy(K.pack_rows(a), 90, K.pack_rows(b), ob)
        assert np.array_equal(oa, ob)
