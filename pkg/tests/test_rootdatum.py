from __future__ import annotations

import itertools

from hypothesis import given
from hypothesis import strategies as st

from covknot.rootdatum import BigWeight, cartan_datum, format_weight, parse_weight
from covknot.scalars import TauScalar


def test_rank_one_pairing() -> None:
    D = cartan_datum(1)
    for k in range(-3, 4):
        assert D.pair(D.simple(0), (k,)) == k


def test_tilde_rho_on_simple_roots() -> None:
    for n in (1, 2, 3):
        D = cartan_datum(n)
        for i in D.nodes:
            assert D.rho_pair(D.root_to_weight(D.simple(i))) == D.dot(D.simple(i), D.simple(i))


def test_odd_pair_count() -> None:
    D = cartan_datum(2)
    assert D.bp((0, 2)) == 1


def test_weight_parity() -> None:
    D1 = cartan_datum(1)
    for k in range(6):
        assert D1.weight_parity((k,)) == k % 2
    D2 = cartan_datum(2)
    assert all(D2.weight_parity(w) == 0 for w in itertools.product(range(4), repeat=2))
    for n in (1, 2, 3):
        D = cartan_datum(n)
        for nu in itertools.product(range(3), repeat=n):
            assert D.weight_parity(D.root_to_weight(nu)) == 0


@given(st.integers(0, 1), st.integers(0, 1), st.integers(-3, 3), st.integers(-3, 3))
def test_rank_one_f_and_r(e1: int, e2: int, s: int, r: int) -> None:
    D = cartan_datum(1)
    z1, z2 = (e1 + 2 * s,), (e2 + 2 * r,)
    expected = TauScalar.monomial(q_exp=-r * e1 - s * e2 - 2 * s * r, pi_exp=s * e2)
    assert D.f_function(z1, z2) == expected
    assert D.r_function(z1, z2) == TauScalar.monomial(q_exp=e1 * e2)


def test_f_trivial_on_transversal() -> None:
    for n in (1, 2, 3):
        D = cartan_datum(n)
        reps = [D.zero(), D.fundamental(n - 1)]
        for a, b in itertools.product(reps, repeat=2):
            assert D.f_exponents(a, b) == (0, 0)


def test_enhancer() -> None:
    for n in (1, 2, 3):
        D = cartan_datum(n)
        an = D.simple(n - 1)
        assert D.phi_roots(an, an) == 1
        for r in D.nodes:
            assert D.phi(D.simple(r), D.fundamental(n - 1)) == 0
        for mu, nu in itertools.product(itertools.product(range(-1, 3), repeat=n), repeat=2):
            assert (D.phi_roots(mu, nu) + D.phi_roots(nu, mu) - D.dot(mu, nu)) % 4 == 0


def test_kappa_vanishes_on_zero() -> None:
    for n in (1, 2):
        D = cartan_datum(n)
        zero = BigWeight(D.zero(), 0)
        for w in itertools.product(range(-2, 3), repeat=n):
            for p in (0, 1):
                for c in itertools.product((1, -1), repeat=2):
                    assert D.kappa2(c, zero, BigWeight(w, p)) == 0
                    assert D.kappa2(c, BigWeight(w, p), zero) == 0


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=4))
def test_weight_text_round_trip(w: list[int]) -> None:
    assert parse_weight(format_weight(tuple(w))) == tuple(w)
