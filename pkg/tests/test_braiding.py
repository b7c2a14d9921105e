from __future__ import annotations

import pytest

from covknot.braiding import (
    braid_relation_check,
    cached_r,
    coproduct_identity_check,
    theta,
    theta_bar,
    theta_intertwines,
    yang_baxter_check,
)
from covknot.modules import Morphism, dual_simple, intertwines, simple_module
from covknot.scalars import ONE, ZERO, TauScalar

q = TauScalar.monomial(q_exp=1)
pi = TauScalar.monomial(pi_exp=1)


def rank_one_matrix(f: Morphism) -> list[list[TauScalar]]:
    """Matrix in the ordered basis v1v1, v1v-1, v-1v1, v-1v-1 of V(1)⊗V(1)."""
    V = f.dom[0]
    idx = [V.weights.index((w,)) for w in (1, -1)]
    basis = [(idx[a], idx[b]) for a in range(2) for b in range(2)]
    return [[f.column(c).get(r, ZERO) for c in basis] for r in basis]


def test_rank_one_r_matrix() -> None:
    V = simple_module(1, (1,))
    # product of the displayed Theta, F and s; pi * pi = 1 in the corner
    expected = [
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ZERO, q, ZERO],
        [ZERO, pi * q, ONE - pi * q * q, ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ]
    assert rank_one_matrix(cached_r(V, V, False)) == expected


def test_rank_one_theta() -> None:
    V = simple_module(1, (1,))
    qi = q.try_invert()
    expected = [
        [ONE, ZERO, ZERO, ZERO],
        [ZERO, ONE, ZERO, ZERO],
        [ZERO, qi - pi * q, ONE, ZERO],
        [ZERO, ZERO, ZERO, ONE],
    ]
    assert rank_one_matrix(theta(V, V)) == expected


def test_theta_bar_inverts_theta() -> None:
    V = simple_module(1, (1,))
    assert (theta(V, V) @ theta_bar(V, V)).equals(Morphism.identity((V, V)))


@pytest.mark.parametrize("n,lam,mu", [(1, (1,), (2,)), (1, (2,), (1,)), (2, (1, 0), (0, 1))])
def test_r_inverse(n, lam, mu) -> None:
    V, W = simple_module(n, lam), simple_module(n, mu)
    R, Ri = cached_r(V, W, False), cached_r(V, W, True)
    assert (R @ Ri).equals(Morphism.identity((W, V)))
    assert (Ri @ R).equals(Morphism.identity((V, W)))


def test_r_on_highest_weights_is_scaled_swap() -> None:
    for n, lam, mu in [(1, (1,), (2,)), (2, (1, 0), (0, 1)), (2, (0, 1), (0, 1))]:
        V, W = simple_module(n, lam), simple_module(n, mu)
        col = cached_r(V, W, False).column((V.index_of_highest(), W.index_of_highest()))
        assert col == {(W.index_of_highest(), V.index_of_highest()): V.datum.f_function(mu, lam)}


@pytest.mark.parametrize("up", [(True, True), (True, False), (False, True), (False, False)])
def test_r_intertwines_all_orientations(up) -> None:
    mods = [simple_module(1, (1,)) if u else dual_simple(1, (1,)) for u in up]
    assert intertwines(cached_r(mods[0], mods[1], False))
    assert intertwines(cached_r(mods[0], mods[1], True))


def test_theta_intertwines_coproducts() -> None:
    assert theta_intertwines(simple_module(1, (1,)), simple_module(1, (2,)))
    assert theta_intertwines(simple_module(2, (1, 0)), simple_module(2, (0, 1)))


@pytest.mark.parametrize("form", range(4))
def test_coproduct_factorizations(form: int) -> None:
    V = simple_module(1, (1,))
    assert coproduct_identity_check(V, V, simple_module(1, (2,)), form)


TRIPLES = [(1, [(1,), (1,), (1,)]), (1, [(1,), (1,), (2,)]), (2, [(1, 0)] * 3)]


@pytest.mark.parametrize("n,ws", TRIPLES)
def test_yang_baxter_and_braid_relation(n, ws) -> None:
    mods = [simple_module(n, w) for w in ws]
    assert yang_baxter_check(*mods)
    assert braid_relation_check(*mods)


def test_braid_relation_with_duals() -> None:
    V, Vs = simple_module(1, (1,)), dual_simple(1, (1,))
    assert braid_relation_check(V, Vs, V)
    assert braid_relation_check(Vs, Vs, V)
