from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covknot.modules import (
    CompositionError,
    check_relations,
    coev,
    coqtr,
    dual_simple,
    ev,
    intertwines,
    qtr,
    simple_module,
    tensor_module,
)
from covknot.oracle import weyl_dim
from covknot.rootdatum import cartan_datum
from covknot.scalars import TauScalar, q_int

WEIGHTS = [(1, (m,)) for m in range(4)] + [(2, w) for w in [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (2, 0)]]


def test_trivial_module() -> None:
    V = simple_module(1, (0,))
    assert V.dim == 1
    assert V.weights == [(0,)]


def test_rank_one_weights() -> None:
    for m in range(5):
        V = simple_module(1, (m,))
        assert sorted(w[0] for w in V.weights) == list(range(-m, m + 1, 2))


@pytest.mark.parametrize("n,lam", WEIGHTS)
def test_dimension_matches_weyl(n: int, lam: tuple[int, ...]) -> None:
    assert simple_module(n, lam).dim == weyl_dim(n, lam)


@pytest.mark.parametrize("n,lam", WEIGHTS)
def test_relations_on_module_and_dual(n: int, lam: tuple[int, ...]) -> None:
    assert check_relations(simple_module(n, lam)) == []
    assert check_relations(dual_simple(n, lam)) == []


@pytest.mark.parametrize("n,lam", [(1, (1,)), (1, (2,)), (2, (1, 0)), (2, (0, 1))])
def test_cups_and_caps_intertwine(n: int, lam: tuple[int, ...]) -> None:
    V, Vs = simple_module(n, lam), dual_simple(n, lam)
    for f in (ev(V, Vs), qtr(V, Vs), coev(V, Vs), coqtr(V, Vs)):
        assert intertwines(f)


@pytest.mark.parametrize("m", range(5))
def test_rank_one_loop_values(m: int) -> None:
    V, Vs = simple_module(1, (m,)), dual_simple(1, (m,))
    pi_m = TauScalar.monomial(pi_exp=m)
    loop = (ev(V, Vs) @ coev(V, Vs)).scalar()
    assert loop == pi_m * q_int(m + 1)
    other = (qtr(V, Vs) @ coqtr(V, Vs)).scalar()
    parity = cartan_datum(1).weight_parity((m,))
    assert other == TauScalar.monomial(pi_exp=parity) * loop


def test_mismatched_composition() -> None:
    V, Vs = simple_module(1, (1,)), dual_simple(1, (1,))
    with pytest.raises(CompositionError):
        ev(V, Vs) @ coqtr(V, Vs)


@given(st.sampled_from(WEIGHTS))
def test_tensor_with_trivial(entry) -> None:
    n, lam = entry
    V = simple_module(n, lam)
    T = tensor_module([V, simple_module(n, (0,) * n)])
    assert T.dim == V.dim
    assert T.character() == V.character()
    assert check_relations(T) == []
