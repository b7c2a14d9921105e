from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from covknot.moves import BLACK_ONLY_MOVES, RED_MOVES, close_level, random_pair, swap_tiles
from covknot.tangles import Coloring, SliceDiagram, Strand, black_scalar, evaluate_black, evaluate_red, invariant

ALL_MOVES = {**RED_MOVES, **BLACK_ONLY_MOVES}
COLORINGS = [Coloring(1, [(1,), (2,)]), Coloring(1, [(3,)])]


@pytest.mark.parametrize("name", sorted(ALL_MOVES))
@pytest.mark.parametrize("col", COLORINGS, ids=["m12", "m3"])
def test_local_identity(name: str, col: Coloring) -> None:
    rng = random.Random(name)
    for _ in range(6):
        move = ALL_MOVES[name](rng, col)
        lhs, rhs = move.diagrams()
        assert lhs.top == rhs.top
        L, R = evaluate_black(lhs, col), evaluate_black(rhs, col)
        assert L.equals(R.scaled(move.black)), move.detail
        if move.red is not None:
            assert evaluate_red(lhs, col).equals(evaluate_red(rhs, col).scaled(move.red)), move.detail


def test_local_identity_rank_two() -> None:
    col = Coloring(2, [(1, 0), (0, 1)])
    rng = random.Random(5)
    for name, gen in ALL_MOVES.items():
        move = gen(rng, col)
        lhs, rhs = move.diagrams()
        assert evaluate_black(lhs, col).equals(evaluate_black(rhs, col).scaled(move.black)), name


@pytest.mark.parametrize("name", sorted(RED_MOVES))
def test_context_pairs_agree(name: str) -> None:
    col = COLORINGS[0]
    rng = random.Random(11)
    for _ in range(4):
        move = RED_MOVES[name](rng, col)
        pair = random_pair(move, rng, col)
        assert pair.left.is_closed() and pair.right.is_closed()
        assert black_scalar(pair.left, col) == move.black * black_scalar(pair.right, col)
        assert invariant(pair.left, col) == invariant(pair.right, col)


levels = st.lists(st.tuples(st.booleans(), st.integers(0, 1)), min_size=1, max_size=3).map(
    lambda xs: tuple(Strand(u, c) for u, c in xs) + tuple(Strand(not u, c) for u, c in reversed(xs))
)


@given(levels, st.integers(0, 1000))
def test_close_level_avoids_sideways_crossings(level, seed) -> None:
    rng = random.Random(seed)
    perm = list(level)
    rng.shuffle(perm)
    level = tuple(perm)
    tiles = close_level(level, rng)
    T = SliceDiagram(level, tiles)
    assert T.top == ()
    for _, _, a, b in T.crossings():
        assert a.up == b.up


def test_swap_tiles_exchange_strands() -> None:
    for a_up in (True, False):
        level = (Strand(a_up, 0), Strand(not a_up, 1))
        for sign in (1, -1):
            T = SliceDiagram(level, swap_tiles(level, 0, sign))
            assert T.top == (level[1], level[0])
