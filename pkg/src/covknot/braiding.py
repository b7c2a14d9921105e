"""The quasi-R-matrix, its inverse, and the braiding R = Theta ∘ F ∘ s."""

from __future__ import annotations

from typing import Sequence

from .halfgroup import half_quantum_group
from .linalg import vec_add_into, vec_equal
from .modules import Morphism, Vec, WeightModule, basis_tuples, tensor_act
from .rootdatum import CartanDatum, RootVector
from .scalars import ONE, TauScalar


def _grades_between(D: CartanDatum, M: WeightModule, x: int, Mp: WeightModule, y: int) -> list[RootVector]:
    """Grades nu in N[I] with wt(x) - nu a weight of M and wt(y) + nu a weight of M'."""
    out = set()
    wy = Mp.weights[y]
    targets = set(Mp.weights)
    for w in set(M.weights):
        diff = tuple(a - b for a, b in zip(M.weights[x], w))
        if not D.in_root_lattice(diff):
            continue
        _, nu = D.decompose(diff)
        if any(k < 0 for k in nu):
            continue
        if tuple(a + b for a, b in zip(wy, D.root_to_weight(nu))) in targets:
            out.add(nu)
    return sorted(out, key=lambda v: (sum(v), v))


def theta_coeff(D: CartanDatum, nu: RootVector) -> TauScalar:
    """(-1)^{ht nu} pi^{bp(nu)} pi_nu q_nu."""
    return TauScalar.monomial(q_exp=D.d_of(nu), pi_exp=D.bp(nu) + D.parity(nu), coeff=-1 if sum(nu) % 2 else 1)


def theta_bar_coeff(D: CartanDatum, nu: RootVector) -> TauScalar:
    """pi_nu q^{nu.nu/2}."""
    return TauScalar.monomial(q_exp=D.dot(nu, nu) // 2, pi_exp=D.parity(nu))


def _theta_pair(M: WeightModule, Mp: WeightModule, x: int, y: int, bar: bool, only: RootVector | None = None) -> Vec:
    D = M.datum
    H = half_quantum_group(D.n)
    out: Vec = {}
    for nu in _grades_between(D, M, x, Mp, y):
        if only is not None and nu != tuple(only):
            continue
        gb = H.grade_basis(nu)
        coeff = theta_bar_coeff(D, nu) if bar else theta_coeff(D, nu)
        coeff = coeff * TauScalar.monomial(pi_exp=D.parity(nu) * M.parities[x])
        for b, wb in enumerate(gb.words):
            fx = M.apply_word("F", wb, x)
            if not fx:
                continue
            ey: Vec = {}
            for k, wk in enumerate(gb.words):
                g = gb.dual_coeffs[k][b]
                if g.is_zero():
                    continue
                vec_add_into(ey, Mp.apply_word("E", wk[::-1] if bar else wk, y), g)
            if not ey:
                continue
            for a, s in fx.items():
                for c, t in ey.items():
                    vec_add_into(out, {(a, c): s * t}, coeff)
    return out


def theta(M: WeightModule, Mp: WeightModule, grade: RootVector | None = None) -> Morphism:
    """Theta (or the single summand Theta_nu) on M ⊗ M'."""
    return Morphism((M, Mp), (M, Mp), lambda k: _theta_pair(M, Mp, k[0], k[1], False, grade), "Θ")


def theta_bar(M: WeightModule, Mp: WeightModule, grade: RootVector | None = None) -> Morphism:
    return Morphism((M, Mp), (M, Mp), lambda k: _theta_pair(M, Mp, k[0], k[1], True, grade), "Θbar")


def f_diag(M: WeightModule, Mp: WeightModule, inverse: bool = False) -> Morphism:
    """m ⊗ m' -> f(|m|, |m'|)^{±1} m ⊗ m'."""
    D = M.datum

    def fn(k):
        qe, pe = D.f_exponents(M.weights[k[0]], Mp.weights[k[1]])
        s = -1 if inverse else 1
        return {k: TauScalar.monomial(q_exp=s * qe, pi_exp=pe)}

    return Morphism((M, Mp), (M, Mp), fn, "𝔉⁻¹" if inverse else "𝔉")


def swap(M: WeightModule, Mp: WeightModule) -> Morphism:
    """m ⊗ m' -> pi^{p(m)p(m')} m' ⊗ m."""
    return Morphism((M, Mp), (Mp, M),
                    lambda k: {(k[1], k[0]): TauScalar.monomial(pi_exp=M.parities[k[0]] * Mp.parities[k[1]])}, "𝔰")


def r_matrix(M: WeightModule, Mp: WeightModule) -> Morphism:
    """R = Theta ∘ F ∘ s : M ⊗ M' -> M' ⊗ M."""
    D = M.datum
    th = theta(Mp, M)

    def fn(k):
        x, y = k
        qe, pe = D.f_exponents(Mp.weights[y], M.weights[x])
        c = TauScalar.monomial(q_exp=qe, pi_exp=pe + M.parities[x] * Mp.parities[y])
        return {a: c * v for a, v in th.column((y, x)).items()}

    return Morphism((M, Mp), (Mp, M), fn, f"R[{M.name},{Mp.name}]")


def r_inverse(M: WeightModule, Mp: WeightModule) -> Morphism:
    """R^{-1} = s^{-1} ∘ F^{-1} ∘ Theta-bar : M' ⊗ M -> M ⊗ M'."""
    D = M.datum
    tb = theta_bar(Mp, M)

    def fn(k):
        out: Vec = {}
        for (y, x), v in tb.column(k).items():
            qe, pe = D.f_exponents(Mp.weights[y], M.weights[x])
            c = TauScalar.monomial(q_exp=-qe, pi_exp=pe + M.parities[x] * Mp.parities[y])
            vec_add_into(out, {(x, y): v}, c)
        return out

    return Morphism((Mp, M), (M, Mp), fn, f"R⁻¹[{M.name},{Mp.name}]")


_R: dict[tuple[int, int, bool], tuple[WeightModule, WeightModule, Morphism]] = {}


def cached_r(M: WeightModule, Mp: WeightModule, inverse: bool) -> Morphism:
    key = (id(M), id(Mp), inverse)
    hit = _R.get(key)
    if hit is None:
        hit = _R[key] = (M, Mp, r_inverse(M, Mp) if inverse else r_matrix(M, Mp))
    return hit[2]


def seed_r(M: WeightModule, Mp: WeightModule, inverse: bool, f: Morphism) -> None:
    """Install a precomputed R (or R^-1) for the pair (M, M')."""
    _R.setdefault((id(M), id(Mp), inverse), (M, Mp, f))


# ---------------------------------------------------------------------------
# three-factor operators
# ---------------------------------------------------------------------------


def f_theta_st(mods: Sequence[WeightModule], s: int, t: int) -> Morphism:
    """ᶠΘ^{st} = Θ^{st} 𝔉^{st} acting on factors s < t of a triple."""
    D = mods[0].datum
    Ms, Mt = mods[s], mods[t]
    th = theta(Ms, Mt)

    def fn(k):
        qe, pe = D.f_exponents(Ms.weights[k[s]], Mt.weights[k[t]])
        f = TauScalar.monomial(q_exp=qe, pi_exp=pe)
        mid_par = sum(mods[r].parities[k[r]] for r in range(s + 1, t))
        out: Vec = {}
        for (x, y), v in th.column((k[s], k[t])).items():
            key = list(k)
            key[s], key[t] = x, y
            nu_par = (Ms.parities[k[s]] + Ms.parities[x]) % 2
            vec_add_into(out, {tuple(key): v}, f * TauScalar.monomial(pi_exp=nu_par * mid_par))
        return out

    return Morphism(mods, mods, fn, f"ᶠΘ{s + 1}{t + 1}")


def yang_baxter_check(M1: WeightModule, M2: WeightModule, M3: WeightModule) -> bool:
    mods = (M1, M2, M3)
    t12, t13, t23 = f_theta_st(mods, 0, 1), f_theta_st(mods, 0, 2), f_theta_st(mods, 1, 2)
    return (t12 @ t13 @ t23).equals(t23 @ t13 @ t12)


def braid_relation_check(M1: WeightModule, M2: WeightModule, M3: WeightModule) -> bool:
    """R12 R23 R12 = R23 R12 R23 as maps M1⊗M2⊗M3 -> M3⊗M2⊗M1."""
    a = cached_r(M1, M2, False).tensor_id(right=(M3,))           # -> M2 M1 M3
    b = cached_r(M1, M3, False).tensor_id(left=(M2,))            # -> M2 M3 M1
    c = cached_r(M2, M3, False).tensor_id(right=(M1,))           # -> M3 M2 M1
    lhs = c @ b @ a
    d = cached_r(M2, M3, False).tensor_id(left=(M1,))            # -> M1 M3 M2
    e = cached_r(M1, M3, False).tensor_id(right=(M2,))           # -> M3 M1 M2
    f = cached_r(M1, M2, False).tensor_id(left=(M3,))            # -> M3 M2 M1
    rhs = f @ e @ d
    return lhs.equals(rhs)


def delta_bar_act(mods: Sequence[WeightModule], gen: str, i: int, vec: Vec) -> Vec:
    """Action through the barred coproduct: E -> E⊗1 + K~^-1⊗E, F -> F⊗J~K~ + 1⊗F."""
    D = mods[0].datum
    di, pi_ = D.d[i], D.p[i]
    out: Vec = {}
    for key, c in vec.items():
        par = 0
        for s, M in enumerate(mods):
            if gen == "E":
                e = sum(mods[r].weights[key[r]][i] for r in range(s)) * di
                coef = TauScalar.monomial(q_exp=-e, pi_exp=pi_ * par)
                col = M.E[i][key[s]]
            else:
                e = sum(mods[r].weights[key[r]][i] for r in range(s + 1, len(mods))) * di
                coef = TauScalar.monomial(q_exp=e, pi_exp=e + pi_ * par)
                col = M.F[i][key[s]]
            for b, x in col.items():
                vec_add_into(out, {key[:s] + (b,) + key[s + 1:]: x}, coef * c)
            par += M.parities[key[s]]
    return out


def theta_intertwines(M: WeightModule, Mp: WeightModule) -> bool:
    """Delta(u) Θ = Θ Delta-bar(u) for u = E_i, F_i."""
    th = theta(M, Mp)
    mods = (M, Mp)
    for k in basis_tuples(mods):
        for i in range(M.datum.n):
            for gen in ("E", "F"):
                lhs = tensor_act(mods, gen, i, th.column(k))
                rhs = th(delta_bar_act(mods, gen, i, {k: ONE}))
                if not vec_equal(lhs, rhs):
                    return False
    return True


def coproduct_identity_check(M1: WeightModule, M2: WeightModule, M3: WeightModule, form: int) -> bool:
    """The four factorizations of Theta_nu on a triple, for every nu.

    form 0: (Δ⊗1)Θ_ν = Σ Θ23_ν' (1⊗K~_{-ν''}⊗1) Θ13_ν''
    form 1: (Δbar⊗1)Θ_ν = Σ Θ13_ν' (1⊗J~_ν' K~_ν'⊗1) Θ23_ν''
    form 2: (1⊗Δ)Θ_ν = Σ Θ12_ν' (1⊗J~_ν'' K~_ν''⊗1) Θ13_ν''
    form 3: (1⊗Δbar)Θ_ν = Σ Θ13_ν' (1⊗K~_{-ν'}⊗1) Θ12_ν''
    """
    D = M1.datum
    H = half_quantum_group(D.n)
    mods = (M1, M2, M3)
    keys = list(basis_tuples(mods))
    # all grades that can act
    grades = set()
    for k in keys:
        grades.update(_grades_between(D, M1, k[0], M3, k[2]))
        grades.update(_grades_between(D, M1, k[0], M2, k[1]))
        grades.update(_grades_between(D, M2, k[1], M3, k[2]))
    grades = sorted(grades, key=lambda v: (sum(v), v))

    def theta_st(s, t, nu):
        """Θ^{st}_nu on the triple including the Koszul sign across the middle factor."""
        Ms, Mt = mods[s], mods[t]

        def fn(k):
            out: Vec = {}
            mid = sum(mods[r].parities[k[r]] for r in range(s + 1, t))
            for (x, y), v in _theta_pair(Ms, Mt, k[s], k[t], False, nu).items():
                key = list(k)
                key[s], key[t] = x, y
                vec_add_into(out, {tuple(key): v}, TauScalar.monomial(pi_exp=D.parity(nu) * mid))
            return out

        return Morphism(mods, mods, fn)

    def k_mid(nu, jk: bool, sgn: int):
        def fn(k):
            w = M2.weights[k[1]]
            e = sgn * D.tilde_pair(nu, w)
            return {k: TauScalar.monomial(q_exp=e, pi_exp=e if jk else 0)}

        return Morphism(mods, mods, fn)

    def lhs_op(nu):
        """Θ_nu with one argument the coproduct of the other two factors."""
        gb = H.grade_basis(nu)
        c = theta_coeff(D, nu)
        pair_first = form in (0, 1)
        bar = form in (1, 3)

        def act_pair(gen, word, key2, pair_mods):
            vec = {key2: ONE}
            for i in reversed(word):
                vec = delta_bar_act(pair_mods, gen, i, vec) if bar else tensor_act(pair_mods, gen, i, vec)
            return vec

        def fn(k):
            out: Vec = {}
            if pair_first:
                x_par = (M1.parities[k[0]] + M2.parities[k[1]]) % 2
            else:
                x_par = M1.parities[k[0]]
            sign = TauScalar.monomial(pi_exp=D.parity(nu) * x_par) * c
            for b, wb in enumerate(gb.words):
                if pair_first:
                    fx = act_pair("F", wb, (k[0], k[1]), (M1, M2))
                else:
                    fx = {(a,): v for a, v in M1.apply_word("F", wb, k[0]).items()}
                if not fx:
                    continue
                ey: Vec = {}
                for kk, wk in enumerate(gb.words):
                    g = gb.dual_coeffs[kk][b]
                    if g.is_zero():
                        continue
                    if pair_first:
                        vec_add_into(ey, {(a,): v for a, v in M3.apply_word("E", wk, k[2]).items()}, g)
                    else:
                        vec_add_into(ey, act_pair("E", wk, (k[1], k[2]), (M2, M3)), g)
                for a, s in fx.items():
                    for cc, t in ey.items():
                        vec_add_into(out, {a + cc: s * t}, sign)
            return out

        return Morphism(mods, mods, fn)

    for nu in grades:
        lhs = lhs_op(nu)
        rhs = None
        for a in range(nu[0] + 1) if D.n == 1 else _sub_grades(nu):
            nu1 = (a,) if D.n == 1 else a
            nu2 = tuple(x - y for x, y in zip(nu, nu1))
            if form == 0:
                term = theta_st(1, 2, nu1) @ k_mid(nu2, False, -1) @ theta_st(0, 2, nu2)
            elif form == 1:
                term = theta_st(0, 2, nu1) @ k_mid(nu1, True, 1) @ theta_st(1, 2, nu2)
            elif form == 2:
                term = theta_st(0, 1, nu1) @ k_mid(nu2, True, 1) @ theta_st(0, 2, nu2)
            else:
                term = theta_st(0, 2, nu1) @ k_mid(nu1, False, -1) @ theta_st(0, 1, nu2)
            rhs = term if rhs is None else _add(rhs, term)
        if not lhs.equals(rhs):
            return False
    return True


def _sub_grades(nu):
    import itertools

    for a in itertools.product(*(range(k + 1) for k in nu)):
        yield tuple(a)


def _add(f: Morphism, g: Morphism) -> Morphism:
    def fn(k):
        out = dict(f.column(k))
        vec_add_into(out, g.column(k))
        return out

    return Morphism(f.dom, f.cod, fn)
