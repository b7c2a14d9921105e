"""Oriented colored tangles as slice diagrams, and their evaluation.

A diagram is read bottom to top, one elementary tile per line::

    bottom: u1 d1      # optional open boundary: u/d orientation + color index
    cup+ @1 c2         # tile, 1-based position of its left strand, color index
    x- @2
    cap+ @1

A "+" cup or cap is traversed left to right: ``cup+`` is the coevaluation
(left strand down, right strand up), ``cup-`` the co-quantum-trace,
``cap+`` the quantum trace (left up, right down) and ``cap-`` the
evaluation.  ``x+ @k`` applies R to strands k, k+1 and ``x- @k`` applies the
inverse braiding in the same direction.

Braid closures are written ``braid 3: s1 s-2 s1 s-2``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Sequence

from .braiding import cached_r
from .modules import Morphism, Vec, WeightModule, coev, coqtr, colored_module, ev, qtr
from .rootdatum import Weight, cartan_datum, format_weight
from .scalars import ONE, TauScalar


class DiagramError(ValueError):
    """Invalid diagram text or an ill-formed composition."""

    def __init__(self, message: str, line: int | None = None, position: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if position is not None:
                loc += f", position {position}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.position = position


class RedCrossingError(DiagramError):
    """Raised when the renormalized calculus meets a sideways crossing."""


@dataclass(frozen=True)
class Strand:
    up: bool
    color: int  # index into the coloring

    def __str__(self) -> str:
        return ("u" if self.up else "d") + str(self.color + 1)


@dataclass(frozen=True)
class Tile:
    kind: str  # "cup", "cap", "x", "id"
    sign: int = 1
    pos: int = 0  # 0-based index of the left strand
    color: int = 0  # only for cups
    line: int | None = None

    def __str__(self) -> str:
        if self.kind == "id":
            return "id"
        s = f"{self.kind}{'+' if self.sign > 0 else '-'} @{self.pos + 1}"
        if self.kind == "cup" and self.color:
            s += f" c{self.color + 1}"
        return s


@dataclass
class SliceDiagram:
    bottom: tuple[Strand, ...]
    tiles: list[Tile]
    levels: list[tuple[Strand, ...]] = field(default_factory=list)

    def __post_init__(self):
        self.bottom = tuple(self.bottom)
        self.levels = [self.bottom]
        for t in self.tiles:
            self.levels.append(_step(self.levels[-1], t))

    @property
    def top(self) -> tuple[Strand, ...]:
        return self.levels[-1]

    def is_closed(self) -> bool:
        return not self.bottom and not self.top

    def crossings(self) -> list[tuple[int, Tile, Strand, Strand]]:
        out = []
        for k, t in enumerate(self.tiles):
            if t.kind == "x":
                lv = self.levels[k]
                out.append((k, t, lv[t.pos], lv[t.pos + 1]))
        return out

    def then(self, other: SliceDiagram) -> SliceDiagram:
        """Stack ``other`` on top of this diagram."""
        if other.bottom != self.top:
            raise DiagramError(
                f"boundary mismatch: top {' '.join(map(str, self.top))} vs bottom {' '.join(map(str, other.bottom))}"
            )
        return SliceDiagram(self.bottom, self.tiles + other.tiles)

    def text(self) -> str:
        lines = []
        if self.bottom:
            lines.append("bottom: " + " ".join(map(str, self.bottom)))
        lines += [str(t) for t in self.tiles]
        return "\n".join(lines)


def _step(level: tuple[Strand, ...], t: Tile) -> tuple[Strand, ...]:
    k = t.pos
    if t.kind == "id":
        return level
    if t.kind == "cup":
        if not 0 <= k <= len(level):
            raise DiagramError(f"cup position {k + 1} outside 1..{len(level) + 1}", t.line)
        pair = (Strand(False, t.color), Strand(True, t.color)) if t.sign > 0 else (Strand(True, t.color), Strand(False, t.color))
        return level[:k] + pair + level[k:]
    if not 0 <= k < len(level) - 1:
        raise DiagramError(f"{t.kind} position {k + 1} needs strands {k + 1},{k + 2} but only {len(level)} present", t.line)
    a, b = level[k], level[k + 1]
    if t.kind == "cap":
        want = (True, False) if t.sign > 0 else (False, True)
        if (a.up, b.up) != want:
            raise DiagramError(
                f"cap{'+' if t.sign > 0 else '-'} needs strands oriented "
                f"{'up,down' if t.sign > 0 else 'down,up'} but found {a},{b}", t.line)
        if a.color != b.color:
            raise DiagramError(f"cap joins strands of different colors {a.color + 1} and {b.color + 1}", t.line)
        return level[:k] + level[k + 2:]
    if t.kind == "x":
        return level[:k] + (b, a) + level[k + 2:]
    raise DiagramError(f"unknown tile {t.kind}", t.line)


# ---------------------------------------------------------------------------
# braid words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]  # +j / -j for s_j^{±1}, 1 <= j < strands

    def __post_init__(self):
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise DiagramError(f"generator s{x} out of range for {self.strands} strands")

    def permutation(self) -> list[int]:
        """perm[i] = top position of the strand starting at bottom position i."""
        pos = list(range(self.strands))  # pos[strand] = current position
        where = list(range(self.strands))  # where[position] = strand
        for x in self.letters:
            j = abs(x) - 1
            a, b = where[j], where[j + 1]
            where[j], where[j + 1] = b, a
            pos[a], pos[b] = j + 1, j
        return pos

    def components(self) -> list[list[int]]:
        perm = self.permutation()
        seen, comps = set(), []
        for i in range(self.strands):
            if i in seen:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = perm[j]
            comps.append(sorted(cyc))
        return comps

    def closure(self, colors: Sequence[int] | None = None) -> SliceDiagram:
        """Trace closure: nested co-quantum-trace cups below, quantum-trace caps above.

        ``colors`` gives a color index per component (ordered by least strand);
        default colors every component with index 0.
        """
        comps = self.components()
        colors = list(colors) if colors is not None else [0] * len(comps)
        if len(colors) != len(comps):
            raise DiagramError(f"closure has {len(comps)} components but {len(colors)} colors were given")
        strand_color = {}
        for c, comp in zip(colors, comps):
            for i in comp:
                strand_color[i] = c
        tiles = [Tile("cup", -1, i, strand_color[i]) for i in range(self.strands)]
        tiles += [Tile("x", 1 if x > 0 else -1, abs(x) - 1) for x in self.letters]
        tiles += [Tile("cap", 1, i) for i in reversed(range(self.strands))]
        return SliceDiagram((), tiles)

    def __str__(self) -> str:
        return f"braid {self.strands}: " + " ".join(f"s{x}" for x in self.letters)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TILE_RE = re.compile(r"^(cup|cap|x)([+-])\s*@\s*(\d+)(?:\s+c(\d+))?$")
_BRAID_RE = re.compile(r"^(?:braid\s+)?(\d+)\s*:(.*)$")
_GEN_RE = re.compile(r"^s(-?)(\d+)$")


def parse_braid(text: str) -> BraidWord:
    m = _BRAID_RE.match(text.strip())
    if not m:
        raise DiagramError(f"expected 'braid <strands>: s1 s-2 ...', got {text.strip()!r}", 1)
    k = int(m.group(1))
    letters = []
    for pos, tok in enumerate(m.group(2).split(), start=1):
        g = _GEN_RE.match(tok)
        if not g:
            raise DiagramError(f"unknown braid generator {tok!r}", 1, pos)
        j = int(g.group(2))
        if j < 1 or j >= k:
            raise DiagramError(f"generator {tok} out of range for {k} strands", 1, pos)
        letters.append(-j if g.group(1) else j)
    return BraidWord(k, tuple(letters))


def parse(text: str) -> SliceDiagram | BraidWord:
    """Parse diagram DSL text or a braid word."""
    lines = [(i, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln]
    if not lines:
        return SliceDiagram((), [])
    if len(lines) == 1 and _BRAID_RE.match(lines[0][1]):
        try:
            return parse_braid(lines[0][1])
        except DiagramError as exc:
            raise DiagramError(str(exc).split(": ", 1)[-1], lines[0][0], exc.position) from None
    bottom: tuple[Strand, ...] = ()
    tiles: list[Tile] = []
    for idx, (lineno, ln) in enumerate(lines):
        if ln.startswith("bottom:"):
            if idx != 0:
                raise DiagramError("'bottom:' must be the first line", lineno)
            strands = []
            for pos, tok in enumerate(ln[len("bottom:"):].split(), start=1):
                m = re.match(r"^([ud])(\d*)$", tok)
                if not m:
                    raise DiagramError(f"bad boundary strand {tok!r} (expected u1, d2, ...)", lineno, pos)
                strands.append(Strand(m.group(1) == "u", int(m.group(2) or 1) - 1))
            bottom = tuple(strands)
            continue
        if ln == "id":
            tiles.append(Tile("id", line=lineno))
            continue
        m = _TILE_RE.match(ln)
        if not m:
            raise DiagramError(f"unknown tile {ln!r}", lineno)
        kind, sgn, pos, col = m.groups()
        if col is not None and kind != "cup":
            raise DiagramError("only cups carry a color", lineno)
        pos = int(pos)
        if pos < 1:
            raise DiagramError("positions are 1-based", lineno)
        tiles.append(Tile(kind, 1 if sgn == "+" else -1, pos - 1, int(col) - 1 if col else 0, lineno))
    return SliceDiagram(bottom, tiles)


def as_diagram(obj: SliceDiagram | BraidWord | str, colors: Sequence[int] | None = None) -> SliceDiagram:
    if isinstance(obj, str):
        obj = parse(obj)
    if isinstance(obj, BraidWord):
        return obj.closure(colors)
    return obj


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


class Coloring:
    """Rank and the list of dominant weights indexed by color."""

    def __init__(self, n: int, weights: Sequence[Weight]):
        self.n = n
        self.weights = [tuple(w) for w in weights]
        D = cartan_datum(n)
        for w in self.weights:
            if not D.is_dominant(w):
                raise DiagramError(f"color {format_weight(w)} is not a dominant weight of rank {n}")
        self.datum = D

    def module(self, s: Strand) -> WeightModule:
        if s.color >= len(self.weights):
            raise DiagramError(f"color index {s.color + 1} has no weight assigned")
        return colored_module(self.n, self.weights[s.color], s.up)

    def parity(self, color: int) -> int:
        return self.datum.weight_parity(self.weights[color])


def _local_map(t: Tile, level: tuple[Strand, ...], col: Coloring) -> Morphism:
    if t.kind == "cup":
        V = col.module(Strand(True, t.color))
        Vs = col.module(Strand(False, t.color))
        return coev(V, Vs) if t.sign > 0 else coqtr(V, Vs)
    a, b = level[t.pos], level[t.pos + 1]
    if t.kind == "cap":
        up = a if a.up else b
        V, Vs = col.module(up), col.module(Strand(False, up.color))
        return qtr(V, Vs) if t.sign > 0 else ev(V, Vs)
    A, B = col.module(a), col.module(b)
    return cached_r(A, B, False) if t.sign > 0 else cached_r(B, A, True)


def _apply_local(state: Vec, f: Morphism, pos: int, width: int) -> Vec:
    out: Vec = {}
    for key, c in state.items():
        col = f.column(key[pos:pos + width])
        if not col:
            continue
        head, tail = key[:pos], key[pos + width:]
        for k2, x in col.items():
            nk = head + k2 + tail
            y = c * x
            old = out.get(nk)
            if old is not None:
                y = old + y
                if y.is_zero():
                    del out[nk]
                    continue
            elif y.is_zero():
                continue
            out[nk] = y
    return out


def _width(t: Tile) -> int:
    return {"cup": 0, "cap": 2, "x": 2, "id": 0}[t.kind]


def propagate(T: SliceDiagram, col: Coloring, state: Vec) -> Vec:
    for k, t in enumerate(T.tiles):
        if t.kind == "id":
            continue
        f = _local_map(t, T.levels[k], col)
        state = _apply_local(state, f, t.pos, _width(t))
    return state


def evaluate_black(T: SliceDiagram, col: Coloring) -> Morphism:
    """The un-renormalized map of the diagram, bottom boundary to top boundary."""
    dom = tuple(col.module(s) for s in T.bottom)
    cod = tuple(col.module(s) for s in T.top)
    return Morphism(dom, cod, lambda key: propagate(T, col, {key: ONE}), "black")


def red_factor_exponent(T: SliceDiagram, col: Coloring) -> int:
    """Exponent e with red = tau^e * black."""
    e = 0
    for k, t in enumerate(T.tiles):
        if t.kind == "cup" and t.sign > 0:
            e += 3 * col.parity(t.color)
        elif t.kind == "cap" and t.sign > 0:
            e += col.parity(T.levels[k][t.pos].color)
        elif t.kind == "x":
            a, b = T.levels[k][t.pos], T.levels[k][t.pos + 1]
            if a.up != b.up:
                raise RedCrossingError("sideways crossings are not defined in the renormalized calculus", t.line)
            pp = col.parity(a.color) * col.parity(b.color)
            positive_like = (t.sign > 0) == a.up
            e += pp if positive_like else 3 * pp
    return e % 4


def evaluate_red(T: SliceDiagram, col: Coloring) -> Morphism:
    e = red_factor_exponent(T, col)
    return evaluate_black(T, col).scaled(TauScalar.monomial(tau_exp=e))


def crossing_sign(t: Tile, a: Strand, b: Strand) -> int:
    """Oriented sign of a crossing: the tile sign, flipped when exactly one strand points down."""
    return t.sign if a.up == b.up else -t.sign


def writhe(T: SliceDiagram, col: Coloring | None = None, color_weight: Weight | None = None) -> int:
    """Signed crossing count; with ``color_weight`` only crossings whose strands both carry it."""
    total = 0
    for _, t, a, b in T.crossings():
        if color_weight is not None:
            if col.weights[a.color] != tuple(color_weight) or col.weights[b.color] != tuple(color_weight):
                continue
        total += crossing_sign(t, a, b)
    return total


def framing_factor(col: Coloring, lam: Weight) -> TauScalar:
    """pi^{P(lambda)} f(lambda, lambda) q^{-<rho~, lambda>}: the value of a positive kink."""
    D = col.datum
    qe, pe = D.f_exponents(lam, lam)
    return TauScalar.monomial(q_exp=qe - D.rho_pair(lam), pi_exp=pe + D.weight_parity(lam))


def invariant(T: SliceDiagram | BraidWord | str, col: Coloring, colors: Sequence[int] | None = None) -> TauScalar:
    """The framing-corrected renormalized invariant J of a closed diagram."""
    T = as_diagram(T, colors)
    if not T.is_closed():
        raise DiagramError("the invariant needs a closed diagram (no open boundary)")
    red = evaluate_red(T, col).scalar()
    out = red
    for lam in sorted(set(col.weights)):
        w = writhe(T, col, lam)
        if w:
            out = out * framing_factor(col, lam) ** (-w)
    return out


def black_scalar(T: SliceDiagram, col: Coloring) -> TauScalar:
    return evaluate_black(T, col).scalar()
