from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covknot.halfgroup import FElement, word_grade
from covknot.modules import Morphism, dual_simple, simple_module
from covknot.rootdatum import cartan_datum
from covknot.scalars import ONE, TauScalar
from covknot.tangles import Coloring
from covknot.twistor import (
    TwistorError,
    commutation_constant,
    cup_cap_constants,
    module_exponents,
    r_constant,
    r_expected,
    theorem_check,
    theta_fixed,
    twist_f,
    twistor,
    untwist_f,
)

t = TauScalar.monomial(t_exp=1)


def test_twistor_on_half_quantum_group() -> None:
    for n in (1, 2):
        D = cartan_datum(n)
        for i in D.nodes:
            assert twist_f(D, FElement.theta(i)) == FElement.theta(i)
    D1 = cartan_datum(1)
    assert twist_f(D1, FElement.word((0, 0))) == FElement.word((0, 0), t)


words2 = st.lists(st.integers(0, 1), max_size=4).map(tuple)


@given(words2, words2)
def test_twistor_is_twisted_multiplicative(w1, w2) -> None:
    D = cartan_datum(2)
    x, y = FElement.word(w1), FElement.word(w2)
    shift = D.phi_roots(word_grade(D, w1), word_grade(D, w2))
    assert twist_f(D, x * y) == twist_f(D, x) * twist_f(D, y) * TauScalar.monomial(t_exp=shift)
    assert untwist_f(D, twist_f(D, x * y)) == x * y


def test_module_twistor_on_highest_and_next() -> None:
    for n, lam in [(1, (1,)), (1, (3,)), (2, (1, 0)), (2, (0, 1))]:
        V = simple_module(n, lam)
        assert module_exponents(V)[V.index_of_highest()] == 0
    V = simple_module(1, (1,))
    D = V.datum
    low = V.weights.index((-1,))
    assert module_exponents(V)[low] == (-D.phi((1,), (1,))) % 4


@given(st.sampled_from([(1, (1,)), (1, (2,)), (2, (1, 0))]), st.data())
def test_twistor_operator_inverse(entry, data) -> None:
    n, lam = entry
    mods = [data.draw(st.sampled_from([simple_module(n, lam), dual_simple(n, lam)])) for _ in range(2)]
    X = twistor(mods)
    key = tuple(data.draw(st.integers(0, M.dim - 1)) for M in mods)
    vec = {key: TauScalar.monomial(q_exp=2, tau_exp=1) + ONE}
    assert X.inverse(X(vec)) == vec


@pytest.mark.parametrize("m", [1, 2, 3])
def test_cup_cap_constants(m: int) -> None:
    consts = cup_cap_constants(1, (m,))
    assert consts["ev∘coev"] == ((-m) % 4, (-m) % 4)
    for kind, (found, predicted) in consts.items():
        assert found == predicted, kind


def test_cup_cap_constants_rank_two() -> None:
    for lam in [(1, 0), (0, 1)]:
        for kind, (found, predicted) in cup_cap_constants(2, lam).items():
            assert found == predicted, (lam, kind)


@pytest.mark.parametrize("n,lam,mu", [(1, (1,), (1,)), (1, (1,), (2,)), (1, (3,), (2,)), (2, (1, 0), (0, 1))])
def test_r_constants(n, lam, mu) -> None:
    for A, B in itertools.product((simple_module(n, lam), dual_simple(n, lam)),
                                  (simple_module(n, mu), dual_simple(n, mu))):
        assert r_constant(A, B) == r_expected(A, B)


def test_theta_fixed() -> None:
    V = simple_module(1, (1,))
    assert theta_fixed(V, V)
    W = simple_module(2, (1, 0))
    assert theta_fixed(W, simple_module(2, (0, 1)))


def test_non_equivariant_map_raises() -> None:
    V = simple_module(1, (1,))
    # the twist of 1 + tau is 1 - t*tau, not a power of t times 1 + tau
    f = Morphism.identity((V,)).scaled(ONE + TauScalar.monomial(tau_exp=1))
    with pytest.raises(TwistorError):
        commutation_constant(f)


def test_theorem_trefoil_rank_one() -> None:
    res = theorem_check("braid 2: s1 s1 s1", Coloring(1, [(1,)]))
    assert res.c in range(4)


def test_theorem_figure_eight_rank_two() -> None:
    res = theorem_check("braid 3: s1 s-2 s1 s-2", Coloring(2, [(1, 0)]))
    assert res.c in range(4)
