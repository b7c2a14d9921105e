"""Weight modules: simple modules, duals, parity shifts, tensor actions, and
the four cup/cap maps."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .halfgroup import Word
from .linalg import select_independent, vec_add_into, vec_equal
from .rootdatum import CartanDatum, RootVector, Weight, cartan_datum, format_weight
from .scalars import ONE, ZERO, TauScalar, q_binom, q_int

Vec = dict  # basis index (or tuple of indices) -> TauScalar
Action = list[list[dict[int, TauScalar]]]  # action[i][b] = {target: coeff}


class ModuleError(ValueError):
    pass


@dataclass(eq=False)
class WeightModule:
    datum: CartanDatum
    name: str
    weights: list[Weight]
    parities: list[int]
    E: Action
    F: Action
    # bookkeeping for simple modules and their duals
    highest: Weight | None = None
    sign: int = 1  # +1 for V(lambda), -1 for V(lambda)*
    words: list[Word] | None = None
    grades: list[RootVector] | None = None
    dual_of: "WeightModule | None" = None
    _word_cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    def __repr__(self) -> str:
        return f"<{self.name} dim={self.dim}>"

    def weight_spaces(self) -> dict[tuple[Weight, int], list[int]]:
        out: dict[tuple[Weight, int], list[int]] = {}
        for b, (w, p) in enumerate(zip(self.weights, self.parities)):
            out.setdefault((w, p), []).append(b)
        return out

    def character(self) -> dict[Weight, int]:
        out: dict[Weight, int] = {}
        for w in self.weights:
            out[w] = out.get(w, 0) + 1
        return out

    def act(self, gen: str, i: int, vec: Vec) -> Vec:
        mat = self.E[i] if gen == "E" else self.F[i]
        out: Vec = {}
        for b, c in vec.items():
            vec_add_into(out, mat[b], c)
        return out

    def apply_word(self, gen: str, word: Word, b: int) -> Vec:
        """Apply gen_{w1} ... gen_{wk} to basis vector b (rightmost letter first)."""
        key = (gen, word, b)
        hit = self._word_cache.get(key)
        if hit is not None:
            return hit
        if not word:
            out = {b: ONE}
        else:
            inner = self.apply_word(gen, word[1:], b)
            out = self.act(gen, word[0], inner)
        self._word_cache[key] = out
        return out

    def index_of_highest(self) -> int:
        if self.highest is None:
            raise ModuleError(f"{self.name} has no recorded highest weight")
        hw = self.highest if self.sign > 0 else self.highest
        for b, w in enumerate(self.weights):
            if w == hw:
                return b
        raise ModuleError("highest weight vector missing")


# ---------------------------------------------------------------------------
# simple modules
# ---------------------------------------------------------------------------


def _qint_i(D: CartanDatum, n: int, i: int) -> TauScalar:
    return q_int(n, D.d[i])


def construct_simple(D: CartanDatum, lam: Weight) -> WeightModule:
    """The simple module V(lambda) with even highest weight vector.

    Each weight space is spanned by F_i applied to the space above it; a
    candidate is kept exactly when its image under all E_j is independent of
    the images of the vectors already kept, which quotients out the maximal
    submodule layer by layer from the top.
    """
    lam = tuple(lam)
    if not D.is_dominant(lam):
        raise ModuleError(f"weight {format_weight(lam)} is not dominant")
    n = D.n
    weights: list[Weight] = [lam]
    parities = [0]
    words: list[Word] = [()]
    grades: list[RootVector] = [(0,) * n]
    E: Action = [[{}] for _ in range(n)]
    F: Action = [[{}] for _ in range(n)]
    layers: dict[RootVector, list[int]] = {(0,) * n: [0]}
    frontier = [(0,) * n]

    while frontier:
        next_grades = sorted({tuple(g[k] + (k == i) for k in range(n)) for g in frontier for i in range(n)})
        frontier = []
        for nu in next_grades:
            mu = tuple(a - b for a, b in zip(lam, D.root_to_weight(nu)))
            cands: list[tuple[Word, int, int]] = []  # (word, i, source b)
            for i in range(n):
                src = tuple(nu[k] - (k == i) for k in range(n))
                for b in layers.get(src, []):
                    cands.append(((i,) + words[b], i, b))
            if not cands:
                continue
            cands.sort()
            images: list[Vec] = []
            for _, i, b in cands:
                img: Vec = {}
                for j in range(n):
                    # E_j F_i b = pi^{p(i)p(j)} F_i E_j b + delta_ij [<i, wt b>]_i b
                    part: Vec = {}
                    ejb = E[j][b]
                    for c, x in ejb.items():
                        vec_add_into(part, F[i][c], x * TauScalar.monomial(pi_exp=D.p[i] * D.p[j]))
                    if i == j:
                        vec_add_into(part, {b: _qint_i(D, weights[b][i], i)})
                    for c, x in part.items():
                        img[(j, c)] = x
                images.append(img)
            chosen, expr = select_independent(images)
            if not chosen:
                continue
            new_index = {}
            for k in chosen:
                word, i, b = cands[k]
                idx = len(weights)
                new_index[k] = idx
                weights.append(mu)
                parities.append((parities[b] + D.p[i]) % 2)
                words.append(word)
                grades.append(nu)
                for j in range(n):
                    E[j].append({c: x for (jj, c), x in images[k].items() if jj == j})
                    F[j].append({})
            for k, (word, i, b) in enumerate(cands):
                F[i][b] = {new_index[c]: x for c, x in expr[k].items()}
            layers[nu] = [new_index[k] for k in chosen]
            frontier.append(nu)

    M = WeightModule(D, f"V({format_weight(lam)})", weights, parities, E, F,
                     highest=lam, sign=1, words=words, grades=grades)
    low = [b for b, w in enumerate(weights) if w == tuple(-x for x in lam)]
    if len(low) != 1 or parities[low[0]] != D.weight_parity(lam):
        raise ModuleError(f"lowest weight check failed for {M.name}")
    return M


_SIMPLE: dict[tuple[int, Weight], WeightModule] = {}


def simple_module(n: int, lam: Weight) -> WeightModule:
    key = (n, tuple(lam))
    hit = _SIMPLE.get(key)
    if hit is None:
        hit = _SIMPLE[key] = construct_simple(cartan_datum(n), key[1])
    return hit


def seed_simple(n: int, lam: Weight, M: WeightModule) -> None:
    """Install a prebuilt V(lambda) (e.g. loaded from disk) before first use."""
    _SIMPLE.setdefault((n, tuple(lam)), M)


# ---------------------------------------------------------------------------
# duals and parity shift
# ---------------------------------------------------------------------------


def dual_module(V: WeightModule) -> WeightModule:
    """V* with (x f)(v) = pi^{p(f)p(x)} f(S(x) v) in the dual basis."""
    D = V.datum
    n = D.n
    E: Action = [[{} for _ in range(V.dim)] for _ in range(n)]
    F: Action = [[{} for _ in range(V.dim)] for _ in range(n)]
    for i in range(n):
        di, pi_ = D.d[i], D.p[i]
        for v in range(V.dim):
            for b, x in V.E[i][v].items():
                # S(E_i) = -J~_i^-1 K~_i^-1 E_i, acting after E_i lands in weight |b|
                e = di * V.weights[b][i]
                c = TauScalar.monomial(q_exp=-e, pi_exp=V.parities[b] * pi_ + e, coeff=-1) * x
                E[i][b][v] = c
            for b, x in V.F[i][v].items():
                # S(F_i) = -F_i K~_i
                e = di * V.weights[v][i]
                c = TauScalar.monomial(q_exp=e, pi_exp=V.parities[b] * pi_, coeff=-1) * x
                F[i][b][v] = c
    name = V.name + "*"
    return WeightModule(
        D, name, [tuple(-x for x in w) for w in V.weights], list(V.parities), E, F,
        highest=V.highest, sign=-V.sign, words=V.words, grades=V.grades, dual_of=V,
    )


@lru_cache(maxsize=None)
def dual_simple(n: int, lam: Weight) -> WeightModule:
    return dual_module(simple_module(n, tuple(lam)))


def parity_shift(V: WeightModule, k: int = 1) -> WeightModule:
    if k % 2 == 0:
        return V
    return WeightModule(V.datum, "Π" + V.name, list(V.weights), [1 - p for p in V.parities], V.E, V.F,
                        highest=V.highest, sign=V.sign, words=V.words, grades=V.grades, dual_of=V.dual_of)


def colored_module(n: int, lam: Weight, up: bool) -> WeightModule:
    """V(lambda) for an upward strand, V(lambda)* for a downward one."""
    return simple_module(n, tuple(lam)) if up else dual_simple(n, tuple(lam))


# ---------------------------------------------------------------------------
# tensor products
# ---------------------------------------------------------------------------


def basis_tuples(mods: Sequence[WeightModule]) -> Iterable[tuple[int, ...]]:
    return itertools.product(*(range(M.dim) for M in mods))


def tensor_act(mods: Sequence[WeightModule], gen: str, i: int, vec: Vec) -> Vec:
    """Action of E_i or F_i on a tensor product through the iterated coproduct."""
    D = mods[0].datum
    di, pi_ = D.d[i], D.p[i]
    out: Vec = {}
    for key, c in vec.items():
        par = 0
        for s, M in enumerate(mods):
            if gen == "E":
                # prefix factors J~_i K~_i on factors before s
                e = sum(mods[r].weights[key[r]][i] for r in range(s)) * di
                coef = TauScalar.monomial(q_exp=e, pi_exp=e + pi_ * par)
                col = M.E[i][key[s]]
            else:
                # suffix factors K~_i^-1 on factors after s
                e = -sum(mods[r].weights[key[r]][i] for r in range(s + 1, len(mods))) * di
                coef = TauScalar.monomial(q_exp=e, pi_exp=pi_ * par)
                col = M.F[i][key[s]]
            for b, x in col.items():
                k2 = key[:s] + (b,) + key[s + 1:]
                vec_add_into(out, {k2: x}, coef * c)
            par += M.parities[key[s]]
    return out


def tensor_module(mods: Sequence[WeightModule]) -> WeightModule:
    """Materialize a tensor product as a single weight module (basis in lex order)."""
    D = mods[0].datum
    keys = list(basis_tuples(mods))
    index = {k: a for a, k in enumerate(keys)}
    weights = [tuple(sum(M.weights[b][r] for M, b in zip(mods, k)) for r in range(D.n)) for k in keys]
    parities = [sum(M.parities[b] for M, b in zip(mods, k)) % 2 for k in keys]
    E: Action = [[] for _ in range(D.n)]
    F: Action = [[] for _ in range(D.n)]
    for i in range(D.n):
        for k in keys:
            E[i].append({index[k2]: x for k2, x in tensor_act(mods, "E", i, {k: ONE}).items()})
            F[i].append({index[k2]: x for k2, x in tensor_act(mods, "F", i, {k: ONE}).items()})
    return WeightModule(D, "⊗".join(M.name for M in mods), weights, parities, E, F)


# ---------------------------------------------------------------------------
# morphisms between tensor products
# ---------------------------------------------------------------------------


class CompositionError(ValueError):
    pass


class Morphism:
    """Linear map between tensor products, given column by column.

    Columns are computed on demand from ``fn`` and memoized, so large
    identity-extended maps stay cheap until used.
    """

    def __init__(self, dom: Sequence[WeightModule], cod: Sequence[WeightModule],
                 fn: Callable[[tuple[int, ...]], Vec], label: str = ""):
        self.dom = tuple(dom)
        self.cod = tuple(cod)
        self._fn = fn
        self._cols: dict[tuple[int, ...], Vec] = {}
        self.label = label

    def column(self, key: tuple[int, ...]) -> Vec:
        hit = self._cols.get(key)
        if hit is None:
            hit = self._fn(key)
            self._cols[key] = hit
        return hit

    def __call__(self, vec: Vec) -> Vec:
        out: Vec = {}
        for k, c in vec.items():
            vec_add_into(out, self.column(k), c)
        return out

    def __repr__(self) -> str:
        return f"Morphism({self.label or '?'}: {_sig(self.dom)} -> {_sig(self.cod)})"

    def compose(self, other: Morphism) -> Morphism:
        """self ∘ other."""
        if not _same_mods(other.cod, self.dom):
            raise CompositionError(f"cannot compose {self} after {other}: boundary {_sig(other.cod)} != {_sig(self.dom)}")
        return Morphism(other.dom, self.cod, lambda k: self(other.column(k)), f"{self.label}∘{other.label}")

    __matmul__ = compose

    def scaled(self, c: TauScalar) -> Morphism:
        return Morphism(self.dom, self.cod, lambda k: {a: c * x for a, x in self.column(k).items()}, self.label)

    def tensor_id(self, left: Sequence[WeightModule] = (), right: Sequence[WeightModule] = ()) -> Morphism:
        """1_left ⊗ self ⊗ 1_right; self must be even."""
        left, right = tuple(left), tuple(right)
        a, b = len(left), len(self.dom)

        def fn(key):
            out: Vec = {}
            for k2, x in self.column(key[a:a + b]).items():
                out[key[:a] + k2 + key[a + b:]] = x
            return out

        return Morphism(left + self.dom + right, left + self.cod + right, fn, self.label)

    def matrix(self) -> dict[tuple[int, ...], Vec]:
        return {k: self.column(k) for k in basis_tuples(self.dom)}

    def equals(self, other: Morphism) -> bool:
        if not (_same_mods(self.dom, other.dom) and _same_mods(self.cod, other.cod)):
            return False
        return all(vec_equal(self.column(k), other.column(k)) for k in basis_tuples(self.dom))

    def proportional_to(self, other: Morphism) -> TauScalar | None:
        """The scalar c with self = c * other, or None."""
        c = None
        for k in basis_tuples(self.dom):
            a, b = self.column(k), other.column(k)
            for key in set(a) | set(b):
                x, y = a.get(key, ZERO), b.get(key, ZERO)
                if c is None:
                    if y.is_zero():
                        if not x.is_zero():
                            return None
                        continue
                    c = x / y
                elif x != c * y:
                    return None
        return c if c is not None else ZERO

    def scalar(self) -> TauScalar:
        """Value of an endomorphism of the trivial module."""
        if self.dom or self.cod:
            raise CompositionError(f"{self} is not a scalar")
        return self.column(()).get((), ZERO)

    @staticmethod
    def identity(mods: Sequence[WeightModule]) -> Morphism:
        return Morphism(mods, mods, lambda k: {k: ONE}, "id")


def _same_mods(a: Sequence[WeightModule], b: Sequence[WeightModule]) -> bool:
    return len(a) == len(b) and all(x is y for x, y in zip(a, b))


def _sig(mods: Sequence[WeightModule]) -> str:
    return "⊗".join(M.name for M in mods) or "1"


def intertwines(f: Morphism) -> bool:
    """f ∘ x = x ∘ f for x = E_i, F_i (K, J are automatic for weight-preserving maps)."""
    D = (f.dom or f.cod)[0].datum
    for k in basis_tuples(f.dom):
        src_w = _tensor_weight(D, f.dom, k)
        for key in f.column(k):
            if _tensor_weight(D, f.cod, key) != src_w or _tensor_parity(f.cod, key) != _tensor_parity(f.dom, k):
                return False
        for i in range(D.n):
            for gen in ("E", "F"):
                lhs = f(_act(f.dom, gen, i, {k: ONE}))
                rhs = _act(f.cod, gen, i, f.column(k))
                if not vec_equal(lhs, rhs):
                    return False
    return True


def _act(mods, gen, i, vec):
    if not mods:
        return {}
    return tensor_act(mods, gen, i, vec)


def _tensor_weight(D, mods, key):
    n = D.n
    return tuple(sum(M.weights[b][r] for M, b in zip(mods, key)) for r in range(n))


def _tensor_parity(mods, key):
    return sum(M.parities[b] for M, b in zip(mods, key)) % 2


# ---------------------------------------------------------------------------
# cups and caps
# ---------------------------------------------------------------------------


def _check_dual_pair(V: WeightModule, Vs: WeightModule) -> None:
    if Vs.dual_of is not V:
        raise CompositionError(f"{Vs.name} is not the dual of {V.name}")


def ev(V: WeightModule, Vs: WeightModule) -> Morphism:
    """V* ⊗ V -> 1, v* ⊗ w -> v*(w)."""
    _check_dual_pair(V, Vs)
    return Morphism((Vs, V), (), lambda k: {(): ONE} if k[0] == k[1] else {}, f"ev[{V.name}]")


def qtr(V: WeightModule, Vs: WeightModule) -> Morphism:
    """V ⊗ V* -> 1, v ⊗ w* -> pi^{p(v)p(w)} q^{-<rho~,|v|>} w*(v)."""
    _check_dual_pair(V, Vs)
    D = V.datum

    def fn(k):
        if k[0] != k[1]:
            return {}
        b = k[0]
        return {(): TauScalar.monomial(q_exp=-D.rho_pair(V.weights[b]), pi_exp=V.parities[b])}

    return Morphism((V, Vs), (), fn, f"qtr[{V.name}]")


def coev(V: WeightModule, Vs: WeightModule) -> Morphism:
    """1 -> V* ⊗ V, 1 -> sum_b pi^{p(b)} q^{<rho~,|b|>} b* ⊗ b."""
    _check_dual_pair(V, Vs)
    D = V.datum
    col = {(b, b): TauScalar.monomial(q_exp=D.rho_pair(V.weights[b]), pi_exp=V.parities[b]) for b in range(V.dim)}
    return Morphism((), (Vs, V), lambda k: col, f"coev[{V.name}]")


def coqtr(V: WeightModule, Vs: WeightModule) -> Morphism:
    """1 -> V ⊗ V*, 1 -> sum_b b ⊗ b*."""
    _check_dual_pair(V, Vs)
    col = {(b, b): ONE for b in range(V.dim)}
    return Morphism((), (V, Vs), lambda k: col, f"coqtr[{V.name}]")


def cups_caps(V: WeightModule, Vs: WeightModule | None = None) -> dict[str, Morphism]:
    Vs = Vs if Vs is not None else dual_module(V)
    return {"ev": ev(V, Vs), "qtr": qtr(V, Vs), "coev": coev(V, Vs), "coqtr": coqtr(V, Vs)}


# ---------------------------------------------------------------------------
# relation checks
# ---------------------------------------------------------------------------


def _mat_apply_seq(M: WeightModule, seq: Sequence[tuple[str, int]], vec: Vec) -> Vec:
    for gen, i in reversed(seq):
        vec = M.act(gen, i, vec)
    return vec


def check_relations(M: WeightModule) -> list[str]:
    """Return the list of violated defining relations (empty when all hold)."""
    D = M.datum
    n = D.n
    bad: list[str] = []
    for b in range(M.dim):
        for i in range(n):
            for gen, sgn in (("E", 1), ("F", -1)):
                for c in (M.E if gen == "E" else M.F)[i][b]:
                    expect = tuple(M.weights[b][r] + sgn * D.cartan[r][i] for r in range(n))
                    if M.weights[c] != expect:
                        bad.append(f"{gen}{i + 1} weight shift on {b}")
                    if M.parities[c] != (M.parities[b] + D.p[i]) % 2:
                        bad.append(f"{gen}{i + 1} parity on {b}")
    # commutator relations
    for b in range(M.dim):
        unit = {b: ONE}
        for i in range(n):
            for j in range(n):
                lhs = _mat_apply_seq(M, [("E", i), ("F", j)], unit)
                rhs = _mat_apply_seq(M, [("F", j), ("E", i)], unit)
                diff = dict(lhs)
                vec_add_into(diff, rhs, TauScalar.monomial(pi_exp=D.p[i] * D.p[j], coeff=-1))
                expect = {b: _qint_i(D, M.weights[b][i], i)} if i == j else {}
                if not vec_equal(diff, expect):
                    bad.append(f"[E{i + 1},F{j + 1}] on basis vector {b}")
    # Serre relations
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            bij = 1 - D.cartan[i][j]
            for gen in ("E", "F"):
                for b in range(M.dim):
                    acc: Vec = {}
                    for k in range(bij + 1):
                        coeff = TauScalar.monomial(
                            pi_exp=(k * (k - 1) // 2) * D.p[i] + k * D.p[i] * D.p[j], coeff=-1 if k % 2 else 1
                        ) * q_binom(bij, k, D.d[i])
                        seq = [(gen, i)] * (bij - k) + [(gen, j)] + [(gen, i)] * k
                        vec_add_into(acc, _mat_apply_seq(M, seq, {b: ONE}), coeff)
                    if acc:
                        bad.append(f"{gen}-Serre ({i + 1},{j + 1}) on basis vector {b}")
    return bad


def hw_morphism(M: WeightModule, N: WeightModule, target: int) -> Morphism:
    """The map M -> N sending v_lambda to N's basis vector ``target`` and
    F_w v_lambda to F_w applied to it (M must carry its F-words)."""
    if M.words is None or M.sign != 1:
        raise ModuleError("source must be a simple module with recorded F-words")
    return Morphism((M,), (N,), lambda k: {(c,): x for c, x in N.apply_word("F", M.words[k[0]], target).items()},
                    f"hw[{M.name}->{N.name}]")
