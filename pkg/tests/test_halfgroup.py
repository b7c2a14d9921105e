from __future__ import annotations

import itertools

from hypothesis import given
from hypothesis import strategies as st

from covknot.halfgroup import FElement, half_quantum_group, sigma, words_of_grade
from covknot.scalars import ONE, ZERO, TauScalar

q = TauScalar.monomial(q_exp=1)
pi = TauScalar.monomial(pi_exp=1)


def test_derivation_on_small_words() -> None:
    H = half_quantum_group(1)
    assert H.ir(0, FElement.theta(0)) == FElement.word(())
    assert H.ir(0, FElement.word(())) == FElement()
    assert H.ir(0, FElement.word((0, 0))) == FElement.word((0,), ONE + pi * q * q)


def test_form_on_generators() -> None:
    for n in (1, 2):
        H = half_quantum_group(n)
        D = H.datum
        for i in D.nodes:
            expected = (ONE - TauScalar.monomial(q_exp=-2 * D.d[i], pi_exp=D.p[i])).try_invert()
            assert H.form(FElement.theta(i), FElement.theta(i)) == expected
        if n == 2:
            assert H.form(FElement.theta(0), FElement.theta(1)) == ZERO


def test_rank_one_form_of_square() -> None:
    H = half_quantum_group(1)
    sq = FElement.word((0, 0))
    qi = q.try_invert()
    assert H.form(sq, sq) == (ONE + pi * q * q) * ((ONE - pi * qi * qi) ** 2).try_invert()


def test_grade_bases() -> None:
    H = half_quantum_group(2)
    gb = H.grade_basis((0, 0))
    assert gb.words == ((),)
    assert gb.dual(0) == FElement.word(())
    for i in (0, 1):
        nu = tuple(1 if j == i else 0 for j in range(2))
        gb = H.grade_basis(nu)
        D = H.datum
        assert gb.words == ((i,),)
        assert gb.dual(0) == FElement.word((i,), ONE - TauScalar.monomial(q_exp=-2 * D.d[i], pi_exp=D.p[i]))
    assert len(half_quantum_group(1).grade_basis((2,)).words) == 1


def test_sigma() -> None:
    assert sigma(FElement.word((0, 1))) == FElement.word((1, 0))
    assert sigma(FElement.theta(1)) == FElement.theta(1)


def test_serre_relations_in_radical() -> None:
    H = half_quantum_group(2)
    assert H.serre_check(0, 1)
    assert H.serre_check(1, 0)
    H3 = half_quantum_group(3)
    for i, j in itertools.permutations(range(3), 2):
        assert H3.serre_check(i, j)


GRADES = [(1, 1), (2, 1), (1, 2), (0, 3), (2, 2)]


@given(st.sampled_from(GRADES), st.data())
def test_form_symmetric(nu: tuple[int, int], data) -> None:
    H = half_quantum_group(2)
    words = words_of_grade(nu)
    w1 = data.draw(st.sampled_from(words))
    w2 = data.draw(st.sampled_from(words))
    assert H.form_words(w1, w2) == H.form_words(w2, w1)


@given(st.sampled_from(GRADES))
def test_dual_basis(nu: tuple[int, int]) -> None:
    H = half_quantum_group(2)
    gb = H.grade_basis(nu)
    for b, b2 in itertools.product(range(len(gb.words)), repeat=2):
        val = H.form(gb.dual(b), FElement.word(gb.words[b2]))
        assert val == (ONE if b == b2 else ZERO)
