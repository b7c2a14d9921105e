"""Verification suites shared by the command line and the test-suite.

Each suite yields ``Check`` records; a suite passes when every record does.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .braiding import braid_relation_check, cached_r, theta_intertwines, yang_baxter_check
from .modules import Morphism, check_relations, dual_simple, intertwines, simple_module
from .moves import BLACK_ONLY_MOVES, RED_MOVES, random_pair
from .oracle import weyl_dim
from .rootdatum import Weight, format_weight
from .scalars import TauScalar
from .tangles import Coloring, black_scalar, invariant, red_factor_exponent
from .twistor import TwistorError, cup_cap_constants, r_constant, r_expected, theorem_check, theta_fixed


@dataclass
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.suite}: {self.name}{tail}"


def dominant_weights(n: int, max_sum: int) -> list[Weight]:
    """Nonzero dominant weights with coordinate sum at most max_sum."""
    out = [w for w in itertools.product(range(max_sum + 1), repeat=n) if 0 < sum(w) <= max_sum]
    return sorted(out, key=lambda w: (sum(w), w))


# ---------------------------------------------------------------------------


def axioms_suite(n: int, max_color: int) -> Iterator[Check]:
    for lam in dominant_weights(n, max_color):
        V = simple_module(n, lam)
        expected = weyl_dim(n, lam)
        yield Check("axioms", f"dim V({format_weight(lam)})", V.dim == expected, f"{V.dim} vs Weyl {expected}")
        for M in (V, dual_simple(n, lam)):
            bad = check_relations(M)
            yield Check("axioms", f"relations on {M.name}", not bad, "; ".join(bad[:3]))


def _triples(n: int, max_color: int) -> list[tuple[Weight, Weight, Weight]]:
    ws = dominant_weights(n, max_color)
    base = ws[0]
    out = [(base, base, base)]
    for w in ws[1:]:
        out.append((base, base, w))
    return out


def yangbaxter_suite(n: int, max_color: int) -> Iterator[Check]:
    for lam in dominant_weights(n, max_color):
        V = simple_module(n, lam)
        R, Ri = cached_r(V, V, False), cached_r(V, V, True)
        yield Check("yangbaxter", f"R inverse on V({format_weight(lam)})^2",
                    (Ri @ R).equals(Morphism.identity((V, V))))
        yield Check("yangbaxter", f"R intertwines on V({format_weight(lam)})^2", intertwines(R))
        yield Check("yangbaxter", f"Theta intertwines coproducts on V({format_weight(lam)})^2", theta_intertwines(V, V))
    for trip in _triples(n, max_color):
        mods = tuple(simple_module(n, w) for w in trip)
        label = "⊗".join(M.name for M in mods)
        yield Check("yangbaxter", f"Yang-Baxter on {label}", yang_baxter_check(*mods))
        yield Check("yangbaxter", f"braid relation on {label}", braid_relation_check(*mods))


# ---------------------------------------------------------------------------


def default_turaev_colors(n: int) -> list[Weight]:
    return [(1,), (2,)] if n == 1 else [tuple(1 if i == 0 else 0 for i in range(n))]


def turaev_suite(n: int, seed: int, pairs: int = 50, colors: Sequence[Weight] | None = None) -> Iterator[Check]:
    """Random closed contexts around each local move.

    Renormalized values must agree exactly (kinks change them by the framing
    factor and leave the invariant fixed); un-renormalized values must differ
    by the move's stated pi-power or constant.
    """
    col = Coloring(n, list(colors) if colors else default_turaev_colors(n))
    rng = random.Random(seed)
    for name, gen in list(RED_MOVES.items()) + list(BLACK_ONLY_MOVES.items()):
        failures: list[str] = []
        for k in range(pairs):
            move = gen(rng, col)
            pr = random_pair(move, rng, col)
            bl, br = black_scalar(pr.left, col), black_scalar(pr.right, col)
            if bl != move.black * br:
                failures.append(f"pair {k} black ({move.detail})")
            if move.red is not None:
                rl = bl * TauScalar.monomial(tau_exp=red_factor_exponent(pr.left, col))
                rr = br * TauScalar.monomial(tau_exp=red_factor_exponent(pr.right, col))
                if rl != move.red * rr or invariant(pr.left, col) != invariant(pr.right, col):
                    failures.append(f"pair {k} red ({move.detail})")
        yield Check("turaev", f"{name} x{pairs}", not failures, "; ".join(failures[:3]))


# ---------------------------------------------------------------------------

KNOTS = {
    "unknot": "braid 1:",
    "trefoil": "braid 2: s1 s1 s1",
    "figure-eight": "braid 3: s1 s-2 s1 s-2",
}


def twistor_suite(n: int, max_color: int) -> Iterator[Check]:
    for lam in dominant_weights(n, max_color):
        try:
            consts = cup_cap_constants(n, lam)
        except TwistorError as exc:
            yield Check("twistor", f"cup/cap constants V({format_weight(lam)})", False, str(exc))
            continue
        for kind, (found, predicted) in consts.items():
            yield Check("twistor", f"{kind} on V({format_weight(lam)})", found == predicted,
                        f"t-exponent {found}, predicted {predicted}")
    ws = dominant_weights(n, max_color)[:2]
    for a, b in itertools.product(ws, repeat=2):
        for A in (simple_module(n, a), dual_simple(n, a)):
            for B in (simple_module(n, b), dual_simple(n, b)):
                try:
                    found, pred = r_constant(A, B), r_expected(A, B)
                except TwistorError as exc:
                    yield Check("twistor", f"R on {A.name}⊗{B.name}", False, str(exc))
                    continue
                yield Check("twistor", f"R on {A.name}⊗{B.name}", found == pred,
                            f"t-exponent {found}, predicted {pred}")
    V = simple_module(n, ws[0])
    yield Check("twistor", f"Theta fixed on {V.name}⊗{V.name}", theta_fixed(V, V))
    for lam in dominant_weights(n, max_color):
        col = Coloring(n, [lam])
        for knot, text in KNOTS.items():
            try:
                res = theorem_check(text, col)
                yield Check("twistor", f"theorem for {knot} V({format_weight(lam)})", True,
                            f"twist(J) = t^{res.c} J, star = {res.star}")
            except TwistorError as exc:
                yield Check("twistor", f"theorem for {knot} V({format_weight(lam)})", False, str(exc))


SUITES = {
    "axioms": lambda n, max_color, seed: axioms_suite(n, max_color),
    "yangbaxter": lambda n, max_color, seed: yangbaxter_suite(n, max_color),
    "turaev": lambda n, max_color, seed: turaev_suite(n, seed),
    "twistor": lambda n, max_color, seed: twistor_suite(n, max_color),
}
