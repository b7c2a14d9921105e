"""The half quantum group f: words in the generators theta_i, the bilinear form,
per-grade bases with their dual bases, and the anti-involution sigma."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping

from .linalg import invert, select_independent
from .rootdatum import CartanDatum, RootVector
from .scalars import ONE, ZERO, TauScalar, q_binom

Word = tuple[int, ...]


def word_grade(datum: CartanDatum, w: Word) -> RootVector:
    g = [0] * datum.n
    for i in w:
        g[i] += 1
    return tuple(g)


def words_of_grade(nu: RootVector) -> list[Word]:
    """All distinct words of grade nu in lexicographic order."""
    letters = [i for i, k in enumerate(nu) for _ in range(k)]
    return sorted(set(permutations(letters)))


class FElement:
    """Finite linear combination of words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, TauScalar] | None = None):
        self.terms: dict[Word, TauScalar] = {}
        for w, c in (terms or {}).items():
            if not c.is_zero():
                self.terms[tuple(w)] = c

    @classmethod
    def word(cls, w: Iterable[int], coeff: TauScalar = ONE) -> FElement:
        return cls({tuple(w): coeff})

    @classmethod
    def theta(cls, i: int) -> FElement:
        return cls.word((i,))

    def __add__(self, other: FElement) -> FElement:
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return FElement(out)

    def __neg__(self) -> FElement:
        return FElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: FElement) -> FElement:
        return self + (-other)

    def __mul__(self, other) -> FElement:
        if isinstance(other, FElement):
            out: dict[Word, TauScalar] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    out[w] = out[w] + c1 * c2 if w in out else c1 * c2
            return FElement(out)
        return FElement({w: c * other for w, c in self.terms.items()})

    def __rmul__(self, other) -> FElement:
        return FElement({w: other * c for w, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FElement):
            return NotImplemented
        return (self - other).terms == {}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*θ{''.join(str(i + 1) for i in w) or '∅'}" for w, c in sorted(self.terms.items()))


def sigma(x: FElement) -> FElement:
    """Word reversal."""
    return FElement({w[::-1]: c for w, c in x.terms.items()})


@dataclass(frozen=True)
class GradeBasis:
    nu: RootVector
    words: tuple[Word, ...]
    gram: tuple[tuple[TauScalar, ...], ...]
    # dual[b] = sum_k dual_coeffs[k][b] * words[k], so (dual[b], words[b']) = delta
    dual_coeffs: tuple[tuple[TauScalar, ...], ...]

    def dual(self, b: int) -> FElement:
        return FElement({self.words[k]: self.dual_coeffs[k][b] for k in range(len(self.words))})


class HalfQuantumGroup:
    def __init__(self, datum: CartanDatum):
        self.datum = datum
        self._lock = threading.Lock()
        self._bases: dict[tuple[RootVector, bool], GradeBasis] = {}
        self._form_cache: dict[tuple[Word, Word], TauScalar] = {}

    def theta_norm(self, i: int) -> TauScalar:
        """(theta_i, theta_i) = 1/(1 - pi_i q_i^-2)."""
        D = self.datum
        return (ONE - TauScalar.monomial(q_exp=-2 * D.d[i], pi_exp=D.p[i])).try_invert()

    def ir_word(self, i: int, w: Word) -> dict[Word, TauScalar]:
        """Derivation i_r applied to a single word."""
        D = self.datum
        out: dict[Word, TauScalar] = {}
        q_exp = pi_exp = 0
        for s, j in enumerate(w):
            if j == i:
                key = w[:s] + w[s + 1:]
                c = TauScalar.monomial(q_exp=q_exp, pi_exp=pi_exp)
                out[key] = out[key] + c if key in out else c
            q_exp += D.dot_matrix[i][j]
            pi_exp += D.p[i] * D.p[j]
        return {k: v for k, v in out.items() if not v.is_zero()}

    def ir(self, i: int, x: FElement) -> FElement:
        out: dict[Word, TauScalar] = {}
        for w, c in x.terms.items():
            for w2, c2 in self.ir_word(i, w).items():
                out[w2] = out[w2] + c * c2 if w2 in out else c * c2
        return FElement(out)

    def form_words(self, w1: Word, w2: Word) -> TauScalar:
        if len(w1) != len(w2):
            return ZERO
        if not w1:
            return ONE
        key = (w1, w2)
        hit = self._form_cache.get(key)
        if hit is not None:
            return hit
        if sorted(w1) != sorted(w2):
            val = ZERO
        else:
            i, rest = w1[0], w1[1:]
            val = ZERO
            for w3, c in self.ir_word(i, w2).items():
                val = val + c * self.form_words(rest, w3)
            val = self.theta_norm(i) * val
        self._form_cache[key] = val
        return val

    def form(self, x: FElement, y: FElement) -> TauScalar:
        acc = ZERO
        for w1, c1 in x.terms.items():
            for w2, c2 in y.terms.items():
                f = self.form_words(w1, w2)
                if not f.is_zero():
                    acc = acc + c1 * c2 * f
        return acc

    def grade_basis(self, nu: RootVector, reverse: bool = False) -> GradeBasis:
        """Pivot-word basis of f_nu (lex order, or reverse lex) with its dual basis."""
        nu = tuple(nu)
        key = (nu, reverse)
        with self._lock:
            hit = self._bases.get(key)
        if hit is not None:
            return hit
        words = words_of_grade(nu)
        if reverse:
            words = words[::-1]
        rows = [{k: self.form_words(w, w2) for k, w2 in enumerate(words)} for w in words]
        rows = [{k: v for k, v in r.items() if not v.is_zero()} for r in rows]
        chosen, _ = select_independent(rows)
        bw = tuple(words[k] for k in chosen)
        gram = tuple(tuple(self.form_words(a, b) for b in bw) for a in bw)
        inv = invert(gram) if gram else []
        gb = GradeBasis(nu, bw, gram, tuple(tuple(row) for row in inv))
        with self._lock:
            self._bases[key] = gb
        return gb

    def serre_element(self, i: int, j: int) -> FElement:
        D = self.datum
        b = 1 - D.cartan[i][j]
        pi, pj = D.p[i], D.p[j]
        out = FElement()
        for k in range(b + 1):
            sign = -1 if k % 2 else 1
            c = TauScalar.monomial(pi_exp=(k * (k - 1) // 2) * pi + k * pi * pj, coeff=sign) * q_binom(b, k, D.d[i])
            out = out + FElement.word((i,) * (b - k) + (j,) + (i,) * k, c)
        return out

    def serre_check(self, i: int, j: int) -> bool:
        """True iff the Serre element for (i, j) lies in the radical of the form."""
        if i == j:
            raise ValueError("Serre relations need distinct nodes")
        s = self.serre_element(i, j)
        grade = word_grade(self.datum, next(iter(s.terms)))
        return all(self.form(s, FElement.word(w)).is_zero() for w in words_of_grade(grade))

    def divided_power(self, i: int, k: int) -> FElement:
        from .scalars import q_fact

        return FElement.word((i,) * k, q_fact(k, self.datum.d[i]).try_invert())


@lru_cache(maxsize=None)
def half_quantum_group(n: int) -> HalfQuantumGroup:
    from .rootdatum import cartan_datum

    return HalfQuantumGroup(cartan_datum(n))
