from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covknot.oracle import (
    MAX_CROSSINGS,
    jones_polynomial,
    kauffman_bracket,
    sl2_specialization,
    weyl_dim,
)
from covknot.scalars import LaurentPoly
from covknot.tangles import BraidWord, parse_braid

LOOP = {2: -1, -2: -1}


def test_unknot_and_unlink() -> None:
    # normalized so that one loop is 1; each extra loop contributes -A^2 - A^-2
    assert kauffman_bracket(parse_braid("1:")) == {0: 1}
    assert kauffman_bracket(BraidWord(2, ())) == LOOP
    assert kauffman_bracket(BraidWord(3, ())) == {4: 1, 0: 2, -4: 1}


def test_classical_jones_values() -> None:
    assert jones_polynomial(parse_braid("2: s1 s1 s1")) == {Fraction(1): 1, Fraction(3): 1, Fraction(4): -1}
    fig8 = {Fraction(2): 1, Fraction(1): -1, Fraction(0): 1, Fraction(-1): -1, Fraction(-2): 1}
    assert jones_polynomial(parse_braid("3: s1 s-2 s1 s-2")) == fig8


def test_sl2_specialization_of_unknot() -> None:
    assert sl2_specialization(parse_braid("1:")) == LaurentPoly({1: 1, -1: 1})


def test_crossing_limit() -> None:
    with pytest.raises(ValueError):
        kauffman_bracket(BraidWord(2, (1,) * (MAX_CROSSINGS + 1)))


def test_weyl_dimensions() -> None:
    for m in range(6):
        assert weyl_dim(1, (m,)) == m + 1
    assert weyl_dim(2, (0, 0)) == 1
    assert weyl_dim(2, (1, 0)) == 5
    assert weyl_dim(2, (0, 1)) == 4
    assert weyl_dim(2, (0, 2)) == 10
    assert weyl_dim(2, (2, 0)) == 14
    assert weyl_dim(2, (1, 1)) == 16
    assert weyl_dim(3, (1, 0, 0)) == 7
    assert weyl_dim(3, (0, 0, 1)) == 8


braid_words = st.integers(1, 4).flatmap(
    lambda k: st.lists(st.integers(1, max(k - 1, 1)).flatmap(lambda j: st.sampled_from([j, -j])),
                       max_size=7 if k > 1 else 0).map(lambda xs: BraidWord(k, tuple(xs)))
)


@given(braid_words)
def test_jones_at_one(word: BraidWord) -> None:
    comps = len(word.components())
    assert sum(jones_polynomial(word).values()) == (-2) ** (comps - 1)


@given(braid_words)
def test_mirror_inverts_variable(word: BraidWord) -> None:
    mirror = BraidWord(word.strands, tuple(-x for x in word.letters))
    assert jones_polynomial(mirror) == {-e: c for e, c in jones_polynomial(word).items()}
