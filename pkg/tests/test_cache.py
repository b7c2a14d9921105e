from __future__ import annotations

from pathlib import Path

import pytest

from covknot.braiding import cached_r
from covknot.cache import Cache, module_from_text, module_to_text, morphism_from_text, morphism_to_text
from covknot.modules import check_relations, dual_simple, simple_module
from covknot.scalars import TauScalar


@pytest.mark.parametrize("n,lam", [(1, (2,)), (2, (1, 0)), (2, (0, 1))])
def test_module_round_trip(n, lam) -> None:
    V = simple_module(n, lam)
    text = module_to_text(V)
    W = module_from_text(text)
    assert module_to_text(W) == text
    assert W.words == V.words
    assert check_relations(W) == []


def test_r_matrix_round_trip() -> None:
    V, Vs = simple_module(1, (1,)), dual_simple(1, (2,))
    f = cached_r(V, Vs, False)
    g = morphism_from_text(morphism_to_text(f), f.dom, f.cod, "copy")
    assert g.equals(f)


def test_store_rejects_corruption(tmp_path: Path) -> None:
    c = Cache(tmp_path)
    c.store_invariant("k", TauScalar.monomial(q_exp=1, tau_exp=3))
    assert c.invariant("k") == TauScalar.monomial(q_exp=1, tau_exp=3)
    (entry,) = [p for p in tmp_path.iterdir() if p.suffix == ".txt"]
    entry.write_text(entry.read_text().replace("q", "q^2"))
    assert c.invariant("k") is None


def test_disabled_without_directory(monkeypatch) -> None:
    monkeypatch.delenv("COVKNOT_CACHE_DIR", raising=False)
    c = Cache()
    assert not c.enabled
    c.put("x", "y")
    assert c.get("x") is None


def test_typed_helpers_hit_disk(tmp_path: Path) -> None:
    c = Cache(tmp_path)
    V = c.simple(1, (3,))
    assert c.get("module n=1 lam=3") == module_to_text(V)
    R = c.r_matrix(1, (1,), (3,), (True, False), False)
    again = Cache(tmp_path).r_matrix(1, (1,), (3,), (True, False), False)
    assert again.equals(R)
