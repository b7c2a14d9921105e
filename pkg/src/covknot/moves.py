"""Local diagram identities (Turaev moves) and random closed contexts.

Each move is a pair of slice diagrams with the same boundary together with
the scalar relating their un-renormalized evaluations, and the scalar
relating their renormalized evaluations (1 except for kinks, which change the
framing).  ``random_pair`` embeds both sides in one random closed context.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .scalars import ONE, TauScalar
from .tangles import Coloring, SliceDiagram, Strand, Tile, framing_factor


@dataclass
class Move:
    name: str
    bottom: tuple[Strand, ...]
    lhs: list[Tile]
    rhs: list[Tile]
    black: TauScalar  # black(lhs) = black * black(rhs)
    red: TauScalar | None  # red(lhs) = red * red(rhs); None if lhs is not red-evaluable
    detail: str = ""

    def diagrams(self) -> tuple[SliceDiagram, SliceDiagram]:
        return SliceDiagram(self.bottom, self.lhs), SliceDiagram(self.bottom, self.rhs)


def _x(sign: int, pos: int) -> Tile:
    return Tile("x", sign, pos)


def _cup(sign: int, pos: int, color: int) -> Tile:
    return Tile("cup", sign, pos, color)


def _cap(sign: int, pos: int) -> Tile:
    return Tile("cap", sign, pos)


def _pi(e: int) -> TauScalar:
    return TauScalar.monomial(pi_exp=e % 2)


def _cap_for(s: Strand) -> int:
    """Cap sign closing s with a strand of opposite orientation on its right."""
    return 1 if s.up else -1


def _cup_for(s: Strand) -> int:
    """Cup sign producing s on the left and its return strand on the right."""
    return -1 if s.up else 1


# ---------------------------------------------------------------------------
# move families; each takes (rng, coloring) and returns a Move
# ---------------------------------------------------------------------------


def straighten(rng: random.Random, col: Coloring) -> Move:
    c = rng.randrange(len(col.weights))
    up = rng.random() < 0.5
    s = Strand(up, c)
    if rng.random() < 0.5:
        lhs = [_cup(1 if up else -1, 1, c), _cap(1 if up else -1, 0)]
    else:
        lhs = [_cup(-1 if up else 1, 0, c), _cap(-1 if up else 1, 1)]
    return Move("straighten", (s,), lhs, [], ONE, ONE, f"{s}")


def curl_constant(col: Coloring, c: int, sign: int, through_left: bool) -> TauScalar:
    """Black value of a kink: f(l,l)^{+-1} q^{-+<rho~,l>}, times pi^P on one side."""
    D = col.datum
    lam = col.weights[c]
    qe, pe = D.f_exponents(lam, lam)
    base = TauScalar.monomial(q_exp=sign * (qe - D.rho_pair(lam)), pi_exp=pe)
    extra = (sign > 0) != through_left
    return base * _pi(col.parity(c)) if extra else base


def curl(rng: random.Random, col: Coloring) -> Move:
    c = rng.randrange(len(col.weights))
    up = rng.random() < 0.5
    sign = rng.choice((1, -1))
    through_left = rng.random() < 0.5
    s = Strand(up, c)
    if through_left:
        # s, then a cup on its right; cross s with the near cup strand; cap the far pair
        lhs = [_cup(-1 if up else 1, 1, c), _x(sign, 0), _cap(1 if up else -1, 1)]
    else:
        lhs = [_cup(1 if up else -1, 0, c), _x(sign, 1), _cap(-1 if up else 1, 0)]
    black = curl_constant(col, c, sign, through_left)
    red = framing_factor(col, col.weights[c]) ** sign
    side = "right" if through_left else "left"
    return Move("curl", (s,), lhs, [], black, red, f"{s} x{'+' if sign > 0 else '-'} kink on the {side}")


def _two_strands(rng: random.Random, col: Coloring, same: bool | None) -> tuple[Strand, Strand]:
    a_up = rng.random() < 0.5
    b_up = a_up if same else (not a_up if same is False else rng.random() < 0.5)
    return Strand(a_up, rng.randrange(len(col.weights))), Strand(b_up, rng.randrange(len(col.weights)))


def inverse_pair(rng: random.Random, col: Coloring, red: bool = True) -> Move:
    a, b = _two_strands(rng, col, True if red else None)
    sign = rng.choice((1, -1))
    return Move("inverse crossings", (a, b), [_x(sign, 0), _x(-sign, 0)], [], ONE,
                ONE if a.up == b.up else None, f"{a} {b}")


def braid_relation(rng: random.Random, col: Coloring, red: bool = True) -> Move:
    up = rng.random() < 0.5
    strands = tuple(Strand(up if red else rng.random() < 0.5, rng.randrange(len(col.weights))) for _ in range(3))
    a, c = rng.choice((1, -1)), rng.choice((1, -1))
    b = rng.choice((a, c))
    lhs = [_x(a, 0), _x(b, 1), _x(c, 0)]
    rhs = [_x(c, 1), _x(b, 0), _x(a, 1)]
    ok = len({s.up for s in strands}) == 1
    return Move("braid relation", strands, lhs, rhs, ONE, ONE if ok else None,
                " ".join(map(str, strands)) + f" signs {a:+d}{b:+d}{c:+d}")


def far_commute(rng: random.Random, col: Coloring) -> Move:
    """Two tiles on disjoint strands, in either order."""
    a, b = _two_strands(rng, col, True)
    c, d = _two_strands(rng, col, True)
    first = _x(rng.choice((1, -1)), 0)
    kind = rng.choice(("x", "cap", "cup"))
    if kind == "x":
        second = _x(rng.choice((1, -1)), 2)
    elif kind == "cap":
        d = Strand(not c.up, c.color)
        second = _cap(_cap_for(c), 2)
    else:
        second = _cup(rng.choice((1, -1)), 2, rng.randrange(len(col.weights)))
    bottom = (a, b, c, d)
    return Move("far commutativity", bottom, [first, second], [second, first], ONE, ONE, f"x with {kind}")


def rotating_crossings(rng: random.Random, col: Coloring) -> Move:
    """The two rotated forms of a sideways crossing; they differ by pi^{P P}."""
    lam, mu = rng.randrange(len(col.weights)), rng.randrange(len(col.weights))
    pp = col.parity(lam) * col.parity(mu)
    if rng.random() < 0.5:
        bottom = (Strand(True, lam), Strand(False, mu))
        phi = [_cup(1, 2, lam), _x(-1, 1), _cap(1, 0)]
        psi = [_cup(1, 0, mu), _x(-1, 1), _cap(1, 2)]
        return Move("rotating crossings", bottom, phi, psi, _pi(pp), ONE, "up/down, inverse crossings")
    bottom = (Strand(False, mu), Strand(True, lam))
    phi = [_cup(-1, 2, mu), _x(1, 1), _cap(-1, 0)]
    psi = [_cup(-1, 0, lam), _x(1, 1), _cap(-1, 2)]
    return Move("rotating crossings", bottom, psi, phi, _pi(pp), ONE, "down/up, crossings")


def sideways_crossing(rng: random.Random, col: Coloring) -> Move:
    """A sideways crossing is r(mu, lambda)^{+-1} times a rotated upright crossing (black only)."""
    D = col.datum
    lam, mu = rng.randrange(len(col.weights)), rng.randrange(len(col.weights))
    r = D.r_function(col.weights[mu], col.weights[lam])
    if rng.random() < 0.5:
        bottom = (Strand(True, lam), Strand(False, mu))
        phi = [_cup(1, 2, lam), _x(-1, 1), _cap(1, 0)]
        return Move("sideways crossing", bottom, [_x(1, 0)], phi, r, None, "up/down")
    bottom = (Strand(False, mu), Strand(True, lam))
    phi = [_cup(-1, 2, mu), _x(1, 1), _cap(-1, 0)]
    pp = col.parity(lam) * col.parity(mu)
    return Move("sideways crossing", bottom, [_x(-1, 0)], phi, _pi(pp) * r.try_invert(), None, "down/up, inverse")


def cross_through_turn(rng: random.Random, col: Coloring, red: bool = True) -> Move:
    lam, mu = rng.randrange(len(col.weights)), rng.randrange(len(col.weights))
    s = rng.random() < 0.5
    t = s if red else rng.random() < 0.5
    w, x = Strand(s, lam), Strand(t, mu)
    y, z = Strand(not s, lam), Strand(not t, mu)
    sign = rng.choice((1, -1))
    left = [_x(sign, 0), _cap(_cap_for(w), 1), _cap(_cap_for(x), 0)]
    right = [_x(sign, 2), _cap(_cap_for(x), 1), _cap(_cap_for(w), 0)]
    pp = col.parity(lam) * col.parity(mu)
    return Move("cross through turn", (w, x, y, z), left, right, _pi(pp),
                ONE if s == t else None, f"{w} {x} {y} {z}")


def half_turn(rng: random.Random, col: Coloring) -> Move:
    """A crossing of upward strands against its 180-degree rotation."""
    lam, mu = rng.randrange(len(col.weights)), rng.randrange(len(col.weights))
    sign = rng.choice((1, -1))
    bottom = (Strand(True, lam), Strand(True, mu))
    pp = col.parity(lam) * col.parity(mu)
    if rng.random() < 0.5:
        rot = [_cup(1, 2, lam), _cup(1, 3, mu), _x(sign, 2), _cap(1, 1), _cap(1, 0)]
        side = "right"
    else:
        rot = [_cup(-1, 0, mu), _cup(-1, 1, lam), _x(sign, 2), _cap(-1, 3), _cap(-1, 2)]
        side = "left"
    return Move("half turn", bottom, [_x(sign, 0)], rot, _pi(pp), ONE, f"turned on the {side}")


RED_MOVES: dict[str, Callable[[random.Random, Coloring], Move]] = {
    "straighten": straighten,
    "curl": curl,
    "inverse crossings": inverse_pair,
    "braid relation": braid_relation,
    "far commutativity": far_commute,
    "rotating crossings": rotating_crossings,
    "cross through turn": cross_through_turn,
    "half turn": half_turn,
}

BLACK_ONLY_MOVES: dict[str, Callable[[random.Random, Coloring], Move]] = {
    "sideways crossing": sideways_crossing,
    "inverse crossings (any orientation)": lambda rng, col: inverse_pair(rng, col, red=False),
    "braid relation (any orientation)": lambda rng, col: braid_relation(rng, col, red=False),
    "cross through turn (any orientation)": lambda rng, col: cross_through_turn(rng, col, red=False),
}


# ---------------------------------------------------------------------------
# random closed contexts
# ---------------------------------------------------------------------------


def swap_tiles(level: tuple[Strand, ...], k: int, sign: int) -> list[Tile]:
    """Tiles exchanging strands k, k+1 without a sideways crossing."""
    a, b = level[k], level[k + 1]
    if a.up == b.up:
        return [_x(sign, k)]
    if a.up:
        # (u_a, d_b) -> (d_b, u_a): bend a around a crossing of down strands
        return [_cup(1, k + 2, a.color), _x(sign, k + 1), _cap(1, k)]
    # (d_b, u_a) -> (u_a, d_b)
    return [_cup(-1, k, b.color), _x(sign, k + 1), _cap(-1, k + 2)]


def _swap_cost(level: tuple[Strand, ...], i: int, j: int) -> int:
    """Cost of bringing strand j next to strand i; sideways swaps widen the level."""
    return sum(1 if level[k].up == level[j].up else 3 for k in range(i + 1, j))


def close_level(level: tuple[Strand, ...], rng: random.Random) -> list[Tile]:
    """Tiles closing a balanced level using caps and upright crossings only.

    Adjacent closable pairs are capped first; otherwise the cheapest pair is
    brought together by swaps.
    """
    tiles: list[Tile] = []
    top = level
    while top:
        caps = [k for k in range(len(top) - 1) if top[k].color == top[k + 1].color and top[k].up != top[k + 1].up]
        if caps:
            k = rng.choice(caps)
            step = [_cap(_cap_for(top[k]), k)]
        else:
            pairs = [(i, j) for i in range(len(top)) for j in range(i + 1, len(top))
                     if top[i].color == top[j].color and top[i].up != top[j].up]
            if not pairs:
                raise ValueError(f"level {' '.join(map(str, top))} is not balanced")
            i, j = min(pairs, key=lambda ij: (_swap_cost(top, *ij), ij))
            step = swap_tiles(top, j - 1, rng.choice((1, -1)))
        tiles += step
        top = SliceDiagram(top, step).top
    return tiles


def open_context(bottom: tuple[Strand, ...], rng: random.Random, col: Coloring,
                 noise: int = 1) -> tuple[list[Tile], int]:
    """Tiles from the empty level to one containing ``bottom`` at an offset, plus the offset."""
    tiles: list[Tile] = []
    level: tuple[Strand, ...] = ()
    for _ in range(rng.randint(0, noise)):
        t = _cup(rng.choice((1, -1)), 0, rng.randrange(len(col.weights)))
        tiles.append(t)
    offset = 2 * len(tiles)
    for i, s in enumerate(bottom):
        tiles.append(_cup(_cup_for(s), offset + i, s.color))
    level = SliceDiagram((), tiles).top
    # scramble the return strands with upright crossings
    k = len(bottom)
    for _ in range(rng.randint(0, 2)):
        if k < 2:
            break
        p = offset + k + rng.randrange(k - 1)
        if level[p].up == level[p + 1].up:
            tiles.append(_x(rng.choice((1, -1)), p))
            level = SliceDiagram((), tiles).top
    # scramble the noise strands on the left
    if offset >= 2 and rng.random() < 0.5:
        p = rng.randrange(offset - 1)
        if level[p].up == level[p + 1].up:
            tiles.append(_x(rng.choice((1, -1)), p))
    return tiles, offset


def _shift(tiles: list[Tile], offset: int) -> list[Tile]:
    return [Tile(t.kind, t.sign, t.pos + offset, t.color) for t in tiles]


@dataclass
class ContextPair:
    move: Move
    left: SliceDiagram
    right: SliceDiagram


def random_pair(move: Move, rng: random.Random, col: Coloring) -> ContextPair:
    below, offset = open_context(move.bottom, rng, col)
    lhs = SliceDiagram((), below + _shift(move.lhs, offset))
    rhs = SliceDiagram((), below + _shift(move.rhs, offset))
    if lhs.top != rhs.top:
        raise ValueError(f"move {move.name} sides have different tops")
    above = close_level(lhs.top, rng)
    return ContextPair(move, SliceDiagram((), lhs.tiles + above), SliceDiagram((), rhs.tiles + above))
