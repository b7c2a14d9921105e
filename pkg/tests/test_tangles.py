from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covknot.modules import Morphism
from covknot.oracle import sl2_specialization
from covknot.scalars import TauScalar
from covknot.tangles import (
    BraidWord,
    Coloring,
    DiagramError,
    RedCrossingError,
    as_diagram,
    evaluate_black,
    evaluate_red,
    framing_factor,
    invariant,
    parse,
    parse_braid,
    writhe,
)

q = TauScalar.monomial(q_exp=1)
tau = TauScalar.monomial(tau_exp=1)
pi = TauScalar.monomial(pi_exp=1)
UNKNOT = TauScalar.monomial(q_exp=1, tau_exp=3) + TauScalar.monomial(q_exp=-1, tau_exp=1)
C1 = Coloring(1, [(1,)])


def test_parse_trefoil() -> None:
    word = parse_braid("braid 2: s1 s1 s1")
    T = word.closure()
    assert len(T.crossings()) == 3
    assert writhe(T) == 3
    assert T.is_closed()


def test_writhes() -> None:
    assert writhe(as_diagram("braid 3: s1 s-2 s1 s-2")) == 0
    assert writhe(as_diagram("braid 1:")) == 0
    T = as_diagram("braid 2: s1 s-1")
    assert writhe(T) == 0


def test_s1_inverse_closure_is_a_two_component_unlink() -> None:
    word = parse_braid("2: s1 s-1")
    assert len(word.components()) == 2
    assert invariant(word, C1) == UNKNOT * UNKNOT


def test_orientation_mismatch_is_reported_with_location() -> None:
    with pytest.raises(DiagramError) as err:
        parse("cup+ @1\ncap+ @1")
    assert err.value.line == 2


@pytest.mark.parametrize("text", ["braid 2: s2", "2: s1 x3", "cup* @1", "bottom: u1 z2", "cap+ @0"])
def test_parse_errors(text: str) -> None:
    with pytest.raises(DiagramError):
        parse(text)


def test_zigzags_are_identities() -> None:
    for text in ("bottom: u1\ncup+ @2\ncap+ @1", "bottom: u1\ncup- @1\ncap- @2",
                 "bottom: d1\ncup- @2\ncap- @1", "bottom: d1\ncup+ @1\ncap+ @2"):
        T = parse(text)
        f = evaluate_black(T, C1)
        assert f.equals(Morphism.identity(f.dom)), text


@pytest.mark.parametrize("lam", [(1,), (2,), (3,)])
def test_right_curl_is_scalar(lam) -> None:
    col = Coloring(1, [lam])
    D = col.datum
    T = parse("bottom: u1\ncup- @2\nx+ @1\ncap+ @2")
    f = evaluate_black(T, col)
    expected = D.f_function(lam, lam) * TauScalar.monomial(q_exp=-D.rho_pair(lam))
    assert f.proportional_to(Morphism.identity(f.dom)) == expected


def test_closed_unknot_value() -> None:
    for m in range(1, 4):
        col = Coloring(1, [(m,)])
        cw = evaluate_black(parse("cup- @1\ncap+ @1"), col).scalar()
        ccw = evaluate_black(parse("cup+ @1\ncap- @1"), col).scalar()
        assert cw == TauScalar.monomial(pi_exp=m) * ccw


def test_red_crossing_matrices() -> None:
    V_pos = evaluate_red(parse("bottom: u1 u1\nx+ @1"), C1)
    V_neg = evaluate_red(parse("bottom: u1 u1\nx- @1"), C1)
    black_pos = evaluate_black(parse("bottom: u1 u1\nx+ @1"), C1)
    black_neg = evaluate_black(parse("bottom: u1 u1\nx- @1"), C1)
    assert V_pos.equals(black_pos.scaled(tau))
    assert V_neg.equals(black_neg.scaled(tau ** 3))


def test_red_sideways_crossing_is_rejected() -> None:
    with pytest.raises(RedCrossingError):
        evaluate_red(parse("bottom: u1 d1\nx+ @1"), C1)


def test_red_curl_equals_black_curl_for_even_parity() -> None:
    col = Coloring(1, [(2,)])
    T = parse("bottom: u1\ncup- @2\nx+ @1\ncap+ @2")
    assert evaluate_red(T, col).equals(evaluate_black(T, col))


@pytest.mark.parametrize("text", ["cup- @1\ncap+ @1", "cup+ @1\ncap- @1", "braid 1:", "braid 2: s1",
                                  "braid 2: s-1", "braid 3: s1 s2"])
def test_unknot(text: str) -> None:
    assert invariant(text, C1) == UNKNOT


def test_mirror_image_gives_bar() -> None:
    for word in ("2: s1 s1 s1", "3: s1 s-2 s1 s-2", "3: s1 s1 s2 s-1 s2"):
        b = parse_braid(word)
        m = BraidWord(b.strands, tuple(-x for x in b.letters))
        assert invariant(m, C1) == invariant(b, C1).bar()


def test_multicolor_hopf_link() -> None:
    col = Coloring(1, [(1,), (2,)])
    J = invariant(parse_braid("2: s1 s1").closure([0, 1]), col)
    J_swapped = invariant(parse_braid("2: s1 s1").closure([1, 0]), col)
    assert J == J_swapped


def test_framing_factor() -> None:
    assert framing_factor(C1, (1,)) == pi * q.try_invert()


braid_words = st.integers(2, 3).flatmap(
    lambda k: st.lists(st.integers(1, k - 1).flatmap(lambda j: st.sampled_from([j, -j])), max_size=6).map(
        lambda xs: BraidWord(k, tuple(xs))
    )
)


@given(braid_words)
def test_tau_one_matches_kauffman_bracket(word: BraidWord) -> None:
    if len(word.components()) != 1:
        return
    assert invariant(word, C1).specialize("1").to_laurent() == sl2_specialization(word)


@given(braid_words)
def test_markov_stabilization(word: BraidWord) -> None:
    k = word.strands
    for s in (k, -k):
        stab = BraidWord(k + 1, word.letters + (s,))
        n = len(word.components())
        assert invariant(stab, C1, [0] * n) == invariant(word, C1, [0] * n)


@given(braid_words)
def test_braid_closure_skein_relation(word: BraidWord) -> None:
    k = word.strands
    plus = BraidWord(k, word.letters + (1,))
    minus = BraidWord(k, word.letters + (-1,))
    zero = word
    def J(b):
        return invariant(b, C1, [0] * len(b.components()))
    lhs = (pi * q * q).try_invert() * J(plus) - pi * q * q * J(minus)
    rhs = (tau * q.try_invert() - tau ** 3 * q) * J(zero)
    assert lhs == rhs
