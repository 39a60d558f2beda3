"""Symmetric group: composition, reduced words, vector action."""

import pytest
from hypothesis import given, strategies as st

from qnls.symgroup import (
    Permutation,
    all_permutations,
    compose,
    identity,
    longest_element,
    reduced_word,
    shift_embed,
    transposition,
)

perms = st.integers(2, 5).flatmap(
    lambda n: st.permutations(list(range(1, n + 1))).map(
        lambda images: Permutation(tuple(images))
    )
)


@given(perms)
def test_inverse_composes_to_identity(w):
    n = w.n
    assert compose(w, w.inverse()) == identity(n)
    assert compose(w.inverse(), w) == identity(n)


@given(perms)
def test_reduced_word_reconstructs(w):
    n = w.n
    rebuilt = identity(n)
    for j in reduced_word(w):
        rebuilt = compose(rebuilt, transposition(j, j + 1, n))
    assert rebuilt == w


@given(perms)
def test_reduced_word_length_is_inversion_count(w):
    n = w.n
    inversions = sum(
        1
        for a in range(1, n + 1)
        for b in range(a + 1, n + 1)
        if w(a) > w(b)
    )
    assert len(reduced_word(w)) == inversions


def test_longest_element_reverses():
    w0 = longest_element(4)
    assert [w0(j) for j in (1, 2, 3, 4)] == [4, 3, 2, 1]
    assert compose(w0, w0) == identity(4)


@given(perms, st.data())
def test_act_vector_relation(w, data):
    # (w x)_{w(j)} = x_j
    n = w.n
    x = tuple(
        data.draw(st.floats(-5, 5, allow_nan=False)) for _ in range(n)
    )
    wx = w.act_vector(x)
    for j in range(1, n + 1):
        assert wx[w(j) - 1] == x[j - 1]


def test_shift_embed_homomorphism():
    a = Permutation((2, 3, 1))
    b = Permutation((3, 1, 2))
    assert shift_embed(compose(a, b)) == compose(shift_embed(a), shift_embed(b))
    assert shift_embed(a)(1) == 1


def test_all_permutations_count_and_uniqueness():
    perms4 = all_permutations(4)
    assert len(perms4) == 24
    assert len(set(perms4)) == 24


def test_transposition_validation():
    with pytest.raises(ValueError):
        transposition(2, 2, 3)
