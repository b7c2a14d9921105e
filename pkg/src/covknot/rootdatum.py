"""The super Cartan datum of osp(1|2n) and the integer-valued functions built on it.

Nodes are indexed 0..n-1; the last node is the unique odd one.  Weights are
tuples of fundamental-weight coordinates (entry r is <alpha_r, lambda>) and
root vectors are tuples of simple-root coefficients.  A ``BigWeight`` adds a
Z/2 parity to a weight.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from typing import NamedTuple, Sequence

from .scalars import TauScalar

Weight = tuple[int, ...]
RootVector = tuple[int, ...]


class BigWeight(NamedTuple):
    weight: Weight
    parity: int


def parse_weight(text: str) -> Weight:
    """Parse comma-separated fundamental-weight coordinates, e.g. "2,0,1"."""
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise ValueError(f"bad weight {text!r}: expected comma-separated integers") from None


def format_weight(w: Weight) -> str:
    return ",".join(str(x) for x in w)


class CartanDatum:
    """Root datum of type B_n with the last node odd."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("rank must be at least 1")
        self.n = n
        self.nodes = tuple(range(n))
        dot = [[0] * n for _ in range(n)]
        for r in range(n):
            dot[r][r] = 2 if r == n - 1 else 4
            if r + 1 < n:
                dot[r][r + 1] = dot[r + 1][r] = -2
        self.dot_matrix = tuple(tuple(row) for row in dot)
        self.d = tuple(dot[i][i] // 2 for i in range(n))
        self.p = tuple(1 if i == n - 1 else 0 for i in range(n))
        # <r, s> = 2 r.s / r.r
        self.cartan = tuple(tuple(2 * dot[r][s] // dot[r][r] for s in range(n)) for r in range(n))
        # enhancer on simple roots: d_i on the diagonal, r.s above, 0 below
        self.phi_matrix = tuple(
            tuple(self.d[r] if r == s else (dot[r][s] if r < s else 0) for s in range(n)) for r in range(n)
        )

    def __repr__(self) -> str:
        return f"CartanDatum(n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, CartanDatum) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("CartanDatum", self.n))

    # lattice helpers -------------------------------------------------------
    def simple(self, i: int) -> RootVector:
        return tuple(1 if j == i else 0 for j in range(self.n))

    def zero(self) -> Weight:
        return (0,) * self.n

    def fundamental(self, i: int) -> Weight:
        return tuple(1 if j == i else 0 for j in range(self.n))

    def root_to_weight(self, nu: Sequence[int]) -> Weight:
        c = self.cartan
        return tuple(sum(c[r][s] * nu[s] for s in range(self.n)) for r in range(self.n))

    def dot(self, mu: Sequence[int], nu: Sequence[int]) -> int:
        """mu . nu for root vectors."""
        D = self.dot_matrix
        return sum(mu[r] * D[r][s] * nu[s] for r in range(self.n) if mu[r] for s in range(self.n) if nu[s])

    def pair(self, nu: Sequence[int], lam: Sequence[int]) -> int:
        """<nu, lambda>."""
        return sum(a * b for a, b in zip(nu, lam))

    def tilde_pair(self, nu: Sequence[int], lam: Sequence[int]) -> int:
        """<nu~, lambda> = sum d_i nu_i lambda_i."""
        return sum(d * a * b for d, a, b in zip(self.d, nu, lam))

    def ht(self, nu: Sequence[int]) -> int:
        return sum(nu)

    def parity(self, nu: Sequence[int]) -> int:
        """p(nu) for a root vector."""
        return nu[self.n - 1] % 2

    def bp(self, nu: Sequence[int]) -> int:
        """Number of pairs of odd letters in any word of grade nu."""
        k = nu[self.n - 1]
        return k * (k - 1) // 2

    def bullet(self, nu: Sequence[int]) -> int:
        """sum_{r<s} i_r . i_s over the letters of a word of grade nu."""
        diag = sum(nu[i] * self.dot_matrix[i][i] for i in range(self.n))
        return (self.dot(nu, nu) - diag) // 2

    def d_of(self, nu: Sequence[int]) -> int:
        """sum d_i nu_i, the exponent in q_nu."""
        return sum(d * a for d, a in zip(self.d, nu))

    @cached_property
    def rho_coeffs(self) -> tuple[int, ...]:
        """Coefficients c with sum_i c_i (i . j) = j . j, so rho~ pairs as sum c_i d_i lambda_i."""
        sol = _solve([[Fraction(self.dot_matrix[i][j]) for i in range(self.n)] for j in range(self.n)],
                     [Fraction(self.dot_matrix[j][j]) for j in range(self.n)])
        if any(x.denominator != 1 for x in sol):
            raise ArithmeticError("rho coefficients not integral")
        return tuple(int(x) for x in sol)

    def rho_pair(self, lam: Sequence[int]) -> int:
        """<rho~, lambda>; equals i . i on each simple root i."""
        return sum(c * d * x for c, d, x in zip(self.rho_coeffs, self.d, lam))

    def weight_parity(self, lam: Sequence[int]) -> int:
        """P(lambda) = n <alpha_n, lambda> mod 2."""
        return (self.n * lam[self.n - 1]) % 2

    def is_dominant(self, lam: Sequence[int]) -> bool:
        return len(lam) == self.n and all(x >= 0 for x in lam)

    # transversal of X / Z[I] --------------------------------------------------
    @cached_property
    def _cartan_inv(self) -> list[list[Fraction]]:
        n = self.n
        cols = []
        for k in range(n):
            e = [Fraction(1 if j == k else 0) for j in range(n)]
            cols.append(_solve([[Fraction(self.cartan[r][s]) for s in range(n)] for r in range(n)], e))
        return [[cols[k][s] for k in range(n)] for s in range(n)]

    @lru_cache(maxsize=4096)
    def decompose(self, lam: Weight) -> tuple[Weight, RootVector]:
        """Write lambda = zeta0 + mu with zeta0 in {0, omega_n} and mu in Z[I]."""
        lam = tuple(lam)
        zeta0 = self.zero() if lam[-1] % 2 == 0 else self.fundamental(self.n - 1)
        diff = [a - b for a, b in zip(lam, zeta0)]
        inv = self._cartan_inv
        mu = [sum(inv[s][r] * diff[r] for r in range(self.n)) for s in range(self.n)]
        if any(x.denominator != 1 for x in mu):
            raise ArithmeticError(f"weight {lam} does not reduce into the transversal")
        return zeta0, tuple(int(x) for x in mu)

    def in_root_lattice(self, lam: Sequence[int]) -> bool:
        return lam[self.n - 1] % 2 == 0

    # f, r, l -----------------------------------------------------------------
    def f_exponents(self, zeta: Weight, zeta_p: Weight) -> tuple[int, int]:
        """(q-exponent, pi-exponent) of f(zeta, zeta')."""
        z0, mu = self.decompose(tuple(zeta))
        z1, nu = self.decompose(tuple(zeta_p))
        a = self.tilde_pair(mu, z1)
        return -a - self.tilde_pair(nu, z0) - self.dot(mu, nu), -a

    def f_function(self, zeta: Weight, zeta_p: Weight) -> TauScalar:
        qe, pe = self.f_exponents(zeta, zeta_p)
        return TauScalar.monomial(q_exp=qe, pi_exp=pe)

    def r_function(self, zeta: Weight, zeta_p: Weight) -> TauScalar:
        """f(zeta, zeta') f(zeta, -zeta')."""
        return self.f_function(zeta, zeta_p) * self.f_function(zeta, _neg(zeta_p))

    def l_function(self, zeta: Weight, zeta_p: Weight) -> TauScalar:
        """f(zeta, zeta') f(-zeta, zeta')."""
        return self.f_function(zeta, zeta_p) * self.f_function(_neg(zeta), zeta_p)

    # enhancer and kappa ----------------------------------------------------------
    def phi_roots(self, mu: Sequence[int], nu: Sequence[int]) -> int:
        P = self.phi_matrix
        return sum(mu[r] * P[r][s] * nu[s] for r in range(self.n) if mu[r] for s in range(self.n) if nu[s]) % 4

    def phi(self, mu: Sequence[int], lam: Sequence[int]) -> int:
        """Enhancer on Z[I] x X, vanishing against the transversal representatives."""
        _, nu = self.decompose(tuple(lam))
        return self.phi_roots(mu, nu)

    def decompose_big(self, z: BigWeight) -> tuple[Weight, int, RootVector]:
        """(zeta0, epsilon, mu) with z = (zeta0, epsilon) + mu in X-hat."""
        zeta0, mu = self.decompose(tuple(z[0]))
        return zeta0, (z[1] - self.parity(mu)) % 2, mu

    def kappa2(self, c: tuple[int, int], z: BigWeight, zp: BigWeight) -> int:
        c1, c2 = c
        zeta0, eps0, mu = self.decompose_big(z)
        zeta1, _, nu = self.decompose_big(zp)
        val = (
            self.tilde_pair(mu, zeta1)
            + c2 * self.phi(mu, _scale(c2, zeta1))
            + 2 * eps0 * self.parity(nu)
            + c1 * self.phi(nu, _scale(c1, zeta0))
            + self.dot(mu, nu)
            + self.phi_roots(mu, nu)
        )
        return val % 4

    def kappa(self, c: Sequence[int], zs: Sequence[BigWeight]) -> int:
        """Pairwise sum of two-argument kappas, mod 4."""
        if len(c) != len(zs):
            raise ValueError("signature and weight tuple have different lengths")
        total = 0
        for r in range(len(zs)):
            for s in range(r + 1, len(zs)):
                total += self.kappa2((c[r], c[s]), zs[r], zs[s])
        return total % 4


def _neg(w: Sequence[int]) -> Weight:
    return tuple(-x for x in w)


def _scale(c: int, w: Sequence[int]) -> Weight:
    return tuple(c * x for x in w)


def _solve(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve A x = b over Q by Gauss-Jordan elimination (small dense systems)."""
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


@lru_cache(maxsize=None)
def cartan_datum(n: int) -> CartanDatum:
    return CartanDatum(n)
