"""Independent reference computations.

Nothing here touches the quantum group code: the Kauffman bracket is a plain
state sum over smoothings of a closed braid, and module dimensions come from
the Weyl dimension formula for so(2n+1) in epsilon coordinates.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product
from typing import Sequence

from .scalars import LaurentPoly
from .tangles import BraidWord

MAX_CROSSINGS = 12

APoly = dict  # exponent of A -> int


def _mul(a: APoly, b: APoly) -> APoly:
    out: Counter = Counter()
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            out[e1 + e2] += c1 * c2
    return {e: c for e, c in out.items() if c}


def _loops(word: BraidWord, state: Sequence[bool]) -> int:
    """Number of loops after smoothing; state[c] True means the vertical smoothing."""
    k, L = word.strands, len(word.letters)
    parent = list(range(k * (L + 1)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    seg = lambda t, p: t * k + p  # noqa: E731
    for t, x in enumerate(word.letters):
        j = abs(x) - 1
        for p in range(k):
            if p not in (j, j + 1):
                join(seg(t, p), seg(t + 1, p))
        if state[t]:
            join(seg(t, j), seg(t + 1, j))
            join(seg(t, j + 1), seg(t + 1, j + 1))
        else:
            join(seg(t, j), seg(t, j + 1))
            join(seg(t + 1, j), seg(t + 1, j + 1))
    for p in range(k):
        join(seg(L, p), seg(0, p))
    return len({find(x) for x in range(len(parent))})


def kauffman_bracket(word: BraidWord) -> APoly:
    """<L> with <unknot> = 1, as {exponent of A: coefficient}."""
    c = len(word.letters)
    if c > MAX_CROSSINGS:
        raise ValueError(f"state sum limited to {MAX_CROSSINGS} crossings, got {c}")
    d = {2: -1, -2: -1}
    out: Counter = Counter()
    for state in product((True, False), repeat=c):
        a_exp = 0
        for x, vertical in zip(word.letters, state):
            # the A-smoothing of a positive generator is the vertical one
            a_exp += 1 if vertical == (x > 0) else -1
        term = {a_exp: 1}
        for _ in range(_loops(word, state) - 1):
            term = _mul(term, d)
        for e, v in term.items():
            out[e] += v
    return {e: v for e, v in out.items() if v}


def writhe(word: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in word.letters)


def normalized_bracket(word: BraidWord) -> APoly:
    """f(L) = (-A^3)^{-w} <L>, an invariant of oriented links."""
    w = writhe(word)
    sign = -1 if w % 2 else 1
    return {e - 3 * w: sign * c for e, c in kauffman_bracket(word).items()}


def jones_polynomial(word: BraidWord) -> dict[Fraction, int]:
    """V(t) = f(L) at A = t^{-1/4}, as {exponent of t: coefficient}."""
    return {Fraction(-e, 4): c for e, c in normalized_bracket(word).items()}


def sl2_specialization(word: BraidWord) -> LaurentPoly:
    """(q + q^-1) f(L) at A^2 = -q^-1: the unnormalized quantum sl2 invariant."""
    out: Counter = Counter()
    for e, c in normalized_bracket(word).items():
        if e % 2:
            raise ValueError("odd power of A in a normalized bracket")
        half = e // 2  # A^e = (-1)^half q^-half
        s = -c if half % 2 else c
        out[-half + 1] += s
        out[-half - 1] += s
    return LaurentPoly({e: c for e, c in out.items() if c})


def weyl_dim(n: int, lam: Sequence[int]) -> int:
    """Dimension of the so(2n+1) module with Dynkin labels lam (last node short)."""
    if len(lam) != n or any(x < 0 for x in lam):
        raise ValueError(f"{tuple(lam)} is not a dominant weight of rank {n}")
    # epsilon coordinates: omega_i = e_1+...+e_i (i<n), omega_n = (e_1+...+e_n)/2
    eps = [Fraction(0)] * n
    for i, a in enumerate(lam):
        share = Fraction(a, 2) if i == n - 1 else Fraction(a)
        for j in range(i + 1):
            eps[j] += share
    rho = [Fraction(2 * (n - j) - 1, 2) for j in range(n)]
    lr = [x + r for x, r in zip(eps, rho)]
    num = den = Fraction(1)
    for i in range(n):
        num *= lr[i]
        den *= rho[i]
        for j in range(i + 1, n):
            num *= (lr[i] - lr[j]) * (lr[i] + lr[j])
            den *= (rho[i] - rho[j]) * (rho[i] + rho[j])
    val = num / den
    assert val.denominator == 1
    return int(val)
