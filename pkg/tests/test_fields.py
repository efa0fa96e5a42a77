from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tlschur.fields import GF, GF2, GF5, QQ, field_by_name

FIELDS = [GF2, GF(3), GF5, GF(7), QQ]


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
@given(st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40))
def test_ring_laws(f, a, b, c):
    a, b, c = f.coerce(a), f.coerce(b), f.coerce(c)
    assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == f.zero
    assert f.mul(a, f.one) == a
    assert f.sub(a, b) == f.add(a, f.neg(b))


@pytest.mark.parametrize("f", FIELDS, ids=lambda f: f.name)
@given(st.integers(-40, 40))
def test_inverses(f, a):
    a = f.coerce(a)
    if a == f.zero:
        with pytest.raises(ZeroDivisionError):
            f.inv(a)
    else:
        assert f.mul(a, f.inv(a)) == f.one
        assert f.div(f.one, a) == f.inv(a)


def test_gf_canonical_residues():
    f = GF(5)
    assert f.coerce(7) == 2
    assert f.coerce(-1) == 4
    assert f.coerce(Fraction(1, 2)) == 3  # 2 * 3 = 1 mod 5
    with pytest.raises(ZeroDivisionError):
        f.coerce(Fraction(1, 5))


def test_gf_requires_prime():
    with pytest.raises(ValueError):
        GF(6)
    with pytest.raises(ValueError):
        GF(1)


def test_parse_fmt_round_trip():
    assert GF5.parse("7") == 2
    assert GF5.parse("1/2") == 3
    assert QQ.parse("-3/4") == Fraction(-3, 4)
    assert QQ.fmt(Fraction(-3, 4)) == "-3/4"
    assert GF5.fmt(3) == "3"


def test_field_by_name():
    assert field_by_name("QQ") == QQ
    assert field_by_name("q") == QQ
    assert field_by_name("gf2") == GF2
    assert field_by_name("GF(7)") == GF(7)
    with pytest.raises(ValueError):
        field_by_name("octonions")


def test_field_equality_and_hash():
    assert GF(5) == GF5 and hash(GF(5)) == hash(GF5)
    assert GF(3) != GF5 and GF2 != QQ
    assert GF2.characteristic == 2 and QQ.characteristic == 0
