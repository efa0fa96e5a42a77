import random

import pytest
from hypothesis import given, strategies as st

from tlschur.permutations import Permutation, symmetric_group


@st.composite
def perms(draw, max_degree=7):
    d = draw(st.integers(1, max_degree))
    images = list(range(1, d + 1))
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    rng.shuffle(images)
    return Permutation(images)


def test_validation():
    with pytest.raises(ValueError):
        Permutation([1, 1, 3])
    with pytest.raises(ValueError):
        Permutation([0, 1, 2])
    with pytest.raises(AttributeError):
        Permutation([1, 2]).images = (2, 1)


def test_identity_and_transpositions():
    e = Permutation.identity(4)
    s2 = Permutation.transposition(4, 2)
    assert s2.images == (1, 3, 2, 4)
    assert s2 * s2 == e
    assert e.length() == 0 and s2.length() == 1
    with pytest.raises(ValueError):
        Permutation.transposition(4, 4)


@given(perms(), perms())
def test_composition_left_to_right(v, w):
    if v.degree != w.degree:
        return
    prod = v * w
    for i in range(1, v.degree + 1):
        assert prod(i) == w(v(i))


@given(perms())
def test_inverse_and_length(w):
    e = Permutation.identity(w.degree)
    assert w * w.inverse() == e
    assert w.inverse() * w == e
    assert w.length() == w.inverse().length()


@given(perms())
def test_reduced_word_reconstructs(w):
    word = w.reduced_word()
    assert len(word) == w.length()
    acc = Permutation.identity(w.degree)
    for i in word:
        acc = acc * Permutation.transposition(w.degree, i)
    assert acc == w


@given(perms())
def test_descents_match_length_drop(w):
    desc = set(w.descents())
    for i in range(1, w.degree):
        s = Permutation.transposition(w.degree, i)
        assert ((w * s).length() < w.length()) == (i in desc)


def test_symmetric_group_enumeration():
    g4 = symmetric_group(4)
    assert len(g4) == 24 and len(set(g4)) == 24
    assert sum(1 for w in g4 if w.length() == 6) == 1  # the longest element
    with pytest.raises(ValueError):
        symmetric_group(9)
