import importlib.resources as resources

import pytest
from hypothesis import given, settings, strategies as st

from tlschur.weights import (
    DecompTable,
    decomp_row,
    decomposition_matrix,
    projective_column,
    tilting_delta_mults,
    twisted_filtration,
)


def test_base_cases():
    assert decomp_row(0) == {0}
    assert decomp_row(1) == {1}
    assert decomp_row(2) == {0, 2}
    assert decomp_row(3) == {3}
    assert decomp_row(4) == {0, 2, 4}
    assert decomp_row(5) == {1, 5}
    assert tilting_delta_mults(0) == {0}
    assert tilting_delta_mults(1) == {1}
    assert tilting_delta_mults(2) == {0, 2}
    assert tilting_delta_mults(3) == {3}
    assert tilting_delta_mults(4) == {2, 4}
    assert tilting_delta_mults(5) == {1, 5}


@given(st.integers(0, 600))
@settings(max_examples=120)
def test_decomp_row_parity_and_bounds(m):
    row = decomp_row(m)
    assert m in row
    assert max(row) == m
    assert all(0 <= n <= m and n % 2 == m % 2 for n in row)


@given(st.integers(0, 600))
@settings(max_examples=120)
def test_decomp_row_recursion_consistency(m):
    # the defining recursion, checked one level down
    if m <= 1:
        return
    if m % 2 == 0:
        t = m // 2
        assert decomp_row(m) == {2 * s for s in decomp_row(t)} | {2 * s for s in decomp_row(t - 1)}
    else:
        t = (m - 1) // 2
        assert decomp_row(m) == {2 * s + 1 for s in decomp_row(t)}


def test_unitriangularity():
    table = decomposition_matrix(20)
    for i, m in enumerate(table.weights):
        assert table.entry(m, m) == 1
        for n in table.weights:
            if n > m:
                assert table.entry(m, n) == 0


def test_row_46_matches_known_support():
    assert decomp_row(46) == {0, 8, 12, 14, 16, 32, 40, 44, 46}


def test_golden_csv_for_degree_46():
    table = decomposition_matrix(46)
    golden = resources.files("tlschur").joinpath("data/decomp_s2_46.csv").read_text()
    assert table.to_csv() == golden
    assert len(table.weights) == 24


def test_csv_and_json_round_trip():
    table = decomposition_matrix(12)
    assert DecompTable.from_csv(table.to_csv()) == table
    assert DecompTable.from_json(table.to_json()) == table
    with pytest.raises(ValueError):
        DecompTable.from_csv("x,0\n0,1\n")


def test_pretty_rendering():
    text = decomposition_matrix(4).pretty()
    lines = text.strip().splitlines()
    assert len(lines) == 4  # header + three weight rows
    assert lines[1].split() == ["0", "1", ".", "."]


def test_odd_degree_refused():
    with pytest.raises(ValueError):
        decomposition_matrix(5)
    with pytest.raises(ValueError):
        projective_column(6, 3)
    with pytest.raises(ValueError):
        projective_column(6, 8)


@pytest.mark.parametrize("d", [4, 10, 28, 46])
def test_projective_column_transposes_rows(d):
    for m in range(0, d + 1, 2):
        col = projective_column(d, m)
        assert col == {w for w in range(0, d + 1, 2) if m in decomp_row(w)}
        assert m in col  # diagonal entry


@given(st.integers(0, 64))
def test_tilting_parity_and_bounds(m):
    mults = tilting_delta_mults(m)
    assert m in mults and max(mults) == m
    assert all(0 <= s <= m and s % 2 == m % 2 for s in mults)


@pytest.mark.parametrize("m", range(2, 66, 2))
def test_twisted_filtration_flattens_to_multiplicities(m):
    pairs = twisted_filtration(m)
    flat = [w for pair in pairs for w in pair]
    assert len(flat) == len(set(flat))  # multiplicity one everywhere
    assert set(flat) == tilting_delta_mults(m)
    for a, b in pairs:
        assert b == a + 2 and a % 2 == 0


def test_twisted_filtration_rejects_bad_weights():
    with pytest.raises(ValueError):
        twisted_filtration(3)
    with pytest.raises(ValueError):
        twisted_filtration(0)
