"""Exact arithmetic in Q(i)(q)[tau]/(tau^4 = 1).

Elements of the coefficient ring are stored in the idempotent basis: a
``TauScalar`` keeps its four specializations at tau = 1, t, -1, -t, where t
is a fixed square root of -1.  Each specialization is a ``RationalFn``, an
element of Q(t)(q) written as (A + t*B)/D with A, B, D rational polynomials
in q, D monic and gcd(A, B, D) = 1.  That normal form is unique, so equality
is structural.

In this basis multiplication and inversion are componentwise, and the ring
automorphisms (bar involution, twistor) permute and substitute components.
The power-basis coefficients c0..c3 of c0 + c1*tau + c2*tau^2 + c3*tau^3 are
recovered with a length-4 inverse DFT.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from flint import fmpq, fmpq_poly

__all__ = [
    "GaussScalar",
    "LaurentPoly",
    "RationalFn",
    "TauScalar",
    "NotInvertibleError",
    "TAU_POINTS",
    "idempotent",
    "q_int",
    "q_fact",
    "q_binom",
]

Number = Union[int, Fraction]

# Component j of a TauScalar is the specialization at tau = t^j.
TAU_POINTS = ("1", "t", "-1", "-t")


class NotInvertibleError(ZeroDivisionError):
    """Raised when inverting a zero divisor of the coefficient ring."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


# ---------------------------------------------------------------------------
# Gaussian rationals and Laurent polynomials (display / interchange types)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaussScalar:
    """re + im*t with t^2 = -1 and rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def unit(cls, k: int) -> GaussScalar:
        """t^k."""
        return [cls(1, 0), cls(0, 1), cls(-1, 0), cls(0, -1)][k % 4]

    def __add__(self, other) -> GaussScalar:
        other = _as_gauss(other)
        return GaussScalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> GaussScalar:
        return GaussScalar(-self.re, -self.im)

    def __sub__(self, other) -> GaussScalar:
        return self + (-_as_gauss(other))

    def __rsub__(self, other) -> GaussScalar:
        return _as_gauss(other) - self

    def __mul__(self, other) -> GaussScalar:
        o = _as_gauss(other)
        return GaussScalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussScalar:
        return GaussScalar(self.re, -self.im)

    def inverse(self) -> GaussScalar:
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("zero Gaussian scalar")
        return GaussScalar(self.re / n, -self.im / n)

    def __truediv__(self, other) -> GaussScalar:
        return self * _as_gauss(other).inverse()

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return _unit_term(self.im, "i")
        return f"({self.re}{'+' if self.im > 0 else '-'}{_unit_term(abs(self.im), 'i')})"


def _unit_term(c: Fraction, sym: str) -> str:
    if c == 1:
        return sym
    if c == -1:
        return "-" + sym
    return f"{c}*{sym}"


def _as_gauss(x) -> GaussScalar:
    if isinstance(x, GaussScalar):
        return x
    return GaussScalar(_frac(x), Fraction(0))


class LaurentPoly:
    """Finitely supported map from q-exponents to Gaussian rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, GaussScalar] | None = None):
        self.terms: dict[int, GaussScalar] = {}
        for e, c in (terms or {}).items():
            c = _as_gauss(c)
            if c:
                self.terms[int(e)] = c

    @classmethod
    def monomial(cls, e: int, c=1) -> LaurentPoly:
        return cls({e: _as_gauss(c)})

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, GaussScalar()) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, GaussScalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, GaussScalar()) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def min_exp(self) -> int:
        return min(self.terms) if self.terms else 0

    def max_exp(self) -> int:
        return max(self.terms) if self.terms else 0

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        return _render_terms([(e, 0, c) for e, c in self.terms.items()])


def _render_terms(terms: list[tuple[int, int, GaussScalar]]) -> str:
    """Render sum of c * q^e * tau^k, q-exponent descending then tau ascending."""
    if not terms:
        return "0"
    pieces: list[str] = []
    for e, k, c in sorted(terms, key=lambda x: (-x[0], x[1])):
        factors = []
        if e == 1:
            factors.append("q")
        elif e:
            factors.append(f"q^{e}")
        if k == 1:
            factors.append("τ")
        elif k:
            factors.append(f"τ^{k}")
        neg = False
        if not c.im and c.re < 0:
            neg, c = True, -c
        elif not c.re and c.im < 0:
            neg, c = True, -c
        if factors:
            if c == GaussScalar(1):
                body = "*".join(factors)
            else:
                body = str(c) + "*" + "*".join(factors)
        else:
            body = str(c)
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


# ---------------------------------------------------------------------------
# Q(t)(q): rational functions with Gaussian coefficients
# ---------------------------------------------------------------------------

_P0 = fmpq_poly([0])
_P1 = fmpq_poly([1])


def _poly_key(p: fmpq_poly) -> tuple:
    return tuple(p.coeffs())


class RationalFn:
    """Element (A + t*B)/D of Q(t)(q), kept in lowest terms with D monic."""

    __slots__ = ("a", "b", "d", "_hash")

    def __init__(self, a: fmpq_poly, b: fmpq_poly, d: fmpq_poly, *, normalized: bool = False):
        if not normalized:
            a, b, d = _normalize(a, b, d)
        self.a = a
        self.b = b
        self.d = d
        self._hash = None

    # constructors ----------------------------------------------------------
    @classmethod
    def const(cls, re: Number = 0, im: Number = 0) -> RationalFn:
        re, im = _frac(re), _frac(im)
        return cls(
            fmpq_poly([fmpq(re.numerator, re.denominator)]),
            fmpq_poly([fmpq(im.numerator, im.denominator)]),
            _P1,
            normalized=True,
        )

    @classmethod
    def q_power(cls, k: int, c: Number = 1) -> RationalFn:
        c = _frac(c)
        cc = fmpq(c.numerator, c.denominator)
        if k >= 0:
            return cls(fmpq_poly([cc]) * _qpow(k), _P0, _P1, normalized=not c == 0)
        return cls(fmpq_poly([cc]), _P0, _qpow(-k), normalized=not c == 0)

    @classmethod
    def from_laurent(cls, lp: LaurentPoly) -> RationalFn:
        if lp.is_zero():
            return ZERO_FN
        lo = min(lp.min_exp(), 0)
        re = [fmpq(0)] * (lp.max_exp() - lo + 1)
        im = [fmpq(0)] * (lp.max_exp() - lo + 1)
        for e, c in lp.terms.items():
            re[e - lo] = fmpq(c.re.numerator, c.re.denominator)
            im[e - lo] = fmpq(c.im.numerator, c.im.denominator)
        return cls(fmpq_poly(re), fmpq_poly(im), _qpow(-lo))

    # predicates ------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_real(self) -> bool:
        return self.b.is_zero()

    def is_laurent(self) -> bool:
        """True when the denominator is a power of q."""
        return self.d.degree() == 0 or self.d == _qpow(self.d.degree())

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.d == other.d and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((_poly_key(self.a), _poly_key(self.b), _poly_key(self.d)))
        return self._hash

    # arithmetic ------------------------------------------------------------
    def __add__(self, other: RationalFn) -> RationalFn:
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.d == other.d:
            return RationalFn(self.a + other.a, self.b + other.b, self.d)
        g = self.d.gcd(other.d)
        s1 = self.d / g if g.degree() > 0 else self.d
        s2 = other.d / g if g.degree() > 0 else other.d
        return RationalFn(self.a * s2 + other.a * s1, self.b * s2 + other.b * s1, s1 * other.d)

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.a, -self.b, self.d, normalized=True)

    def __sub__(self, other: RationalFn) -> RationalFn:
        return self + (-other)

    def __mul__(self, other: RationalFn) -> RationalFn:
        if self.is_zero() or other.is_zero():
            return ZERO_FN
        if self.b.is_zero():
            if other.b.is_zero():
                return RationalFn(self.a * other.a, _P0, self.d * other.d)
            return RationalFn(self.a * other.a, self.a * other.b, self.d * other.d)
        if other.b.is_zero():
            return RationalFn(self.a * other.a, self.b * other.a, self.d * other.d)
        return RationalFn(
            self.a * other.a - self.b * other.b,
            self.a * other.b + self.b * other.a,
            self.d * other.d,
        )

    def scale(self, c: Fraction) -> RationalFn:
        if c == 0:
            return ZERO_FN
        cc = fmpq(c.numerator, c.denominator)
        return RationalFn(self.a * cc, self.b * cc, self.d, normalized=True)

    def times_unit(self, k: int) -> RationalFn:
        """Multiply by t^k."""
        k %= 4
        a, b = self.a, self.b
        if k == 0:
            return self
        if k == 1:
            return RationalFn(-b, a, self.d, normalized=True)
        if k == 2:
            return RationalFn(-a, -b, self.d, normalized=True)
        return RationalFn(b, -a, self.d, normalized=True)

    def inverse(self) -> RationalFn:
        if self.is_zero():
            raise ZeroDivisionError("zero rational function")
        if self.b.is_zero():
            return RationalFn(self.d, _P0, self.a)
        n = self.a * self.a + self.b * self.b
        return RationalFn(self.d * self.a, -(self.d * self.b), n)

    def __truediv__(self, other: RationalFn) -> RationalFn:
        return self * other.inverse()

    def __pow__(self, k: int) -> RationalFn:
        if k < 0:
            return self.inverse() ** (-k)
        out = ONE_FN
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # substitutions -----------------------------------------------------------
    def subst_scaled(self, unit: int) -> RationalFn:
        """Substitute q -> t^unit * q."""
        unit %= 4
        if unit == 0:
            return self
        a_re, a_im = _scale_var(self.a, unit)
        b_re, b_im = _scale_var(self.b, unit)
        d_re, d_im = _scale_var(self.d, unit)
        num = RationalFn(a_re - b_im, a_im + b_re, _P1)
        den = RationalFn(d_re, d_im, _P1)
        return num * den.inverse()

    def subst_inverted(self, sign: int) -> RationalFn:
        """Substitute q -> sign/q, sign = +1 or -1."""
        n = max(self.a.degree(), self.b.degree(), self.d.degree(), 0)
        a = _reverse(self.a, n, sign)
        b = _reverse(self.b, n, sign)
        d = _reverse(self.d, n, sign)
        return RationalFn(a, b, d)

    # export ----------------------------------------------------------------
    def real_part_fn(self) -> RationalFn:
        return RationalFn(self.a, _P0, self.d)

    def to_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"not a Laurent polynomial: {self}")
        shift = self.d.degree()
        lead = self.d.leading_coefficient()
        terms: dict[int, GaussScalar] = {}
        for e, c in enumerate(self.a.coeffs()):
            if c:
                terms[e - shift] = GaussScalar(_frac(c / lead), 0)
        for e, c in enumerate(self.b.coeffs()):
            if c:
                terms[e - shift] = terms.get(e - shift, GaussScalar()) + GaussScalar(0, _frac(c / lead))
        return LaurentPoly(terms)

    def numerator(self) -> LaurentPoly:
        terms: dict[int, GaussScalar] = {}
        for e, c in enumerate(self.a.coeffs()):
            if c:
                terms[e] = GaussScalar(_frac(c), 0)
        for e, c in enumerate(self.b.coeffs()):
            if c:
                terms[e] = terms.get(e, GaussScalar()) + GaussScalar(0, _frac(c))
        return LaurentPoly(terms)

    def denominator(self) -> LaurentPoly:
        return LaurentPoly({e: GaussScalar(_frac(c), 0) for e, c in enumerate(self.d.coeffs()) if c})

    def __repr__(self) -> str:
        return f"RationalFn({self})"

    def __str__(self) -> str:
        if self.is_laurent():
            return str(self.to_laurent())
        return f"({self.numerator()})/({self.denominator()})"


@lru_cache(maxsize=None)
def _qpow(k: int) -> fmpq_poly:
    return fmpq_poly([0] * k + [1])


def _normalize(a: fmpq_poly, b: fmpq_poly, d: fmpq_poly):
    if d.is_zero():
        raise ZeroDivisionError("zero denominator")
    if a.is_zero() and b.is_zero():
        return _P0, _P0, _P1
    if d.degree() > 0:
        g = a.gcd(b) if not b.is_zero() else a
        if g.is_zero():
            g = b
        g = g.gcd(d)
        if g.degree() > 0:
            a = a / g
            b = b / g if not b.is_zero() else b
            d = d / g
    lc = d.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        a = a * inv
        b = b * inv if not b.is_zero() else b
        d = d * inv
    return a, b, d


def _scale_var(p: fmpq_poly, unit: int) -> tuple[fmpq_poly, fmpq_poly]:
    """Split p(t^unit * q) into real and t-parts."""
    re: list = []
    im: list = []
    for e, c in enumerate(p.coeffs()):
        k = (unit * e) % 4
        if k == 0:
            re.append(c), im.append(0)
        elif k == 1:
            re.append(0), im.append(c)
        elif k == 2:
            re.append(-c), im.append(0)
        else:
            re.append(0), im.append(-c)
    return fmpq_poly(re), fmpq_poly(im)


def _reverse(p: fmpq_poly, n: int, sign: int) -> fmpq_poly:
    """q^n * p(sign/q)."""
    if p.is_zero():
        return p
    cs = p.coeffs()
    out = [0] * (n + 1)
    for e, c in enumerate(cs):
        out[n - e] = -c if (sign < 0 and e % 2) else c
    return fmpq_poly(out)


ZERO_FN = RationalFn(_P0, _P0, _P1, normalized=True)
ONE_FN = RationalFn(_P1, _P0, _P1, normalized=True)


# ---------------------------------------------------------------------------
# Q(t)(q)[tau]/(tau^4 = 1)
# ---------------------------------------------------------------------------


def _comp_mul(x: tuple, y: tuple) -> tuple:
    memo: dict = {}
    out = []
    for a, b in zip(x, y):
        key = (id(a), id(b))
        r = memo.get(key)
        if r is None:
            r = a * b
            memo[key] = r
        out.append(r)
    return tuple(out)


class TauScalar:
    """Element of Q(t)(q)[tau]/(tau^4 = 1), stored by its values at tau = t^j."""

    __slots__ = ("comps", "_hash")

    def __init__(self, comps: Iterable[RationalFn]):
        self.comps: tuple[RationalFn, ...] = tuple(comps)
        if len(self.comps) != 4:
            raise ValueError("a TauScalar needs exactly four components")
        self._hash = None

    # constructors ----------------------------------------------------------
    @classmethod
    def from_fn(cls, f: RationalFn) -> TauScalar:
        return cls((f, f, f, f))

    @classmethod
    def const(cls, re: Number = 0, im: Number = 0) -> TauScalar:
        return cls.from_fn(RationalFn.const(re, im))

    @classmethod
    def monomial(cls, q_exp: int = 0, pi_exp: int = 0, tau_exp: int = 0, t_exp: int = 0, coeff: Number = 1) -> TauScalar:
        """coeff * q^q_exp * pi^pi_exp * tau^tau_exp * t^t_exp."""
        base = RationalFn.q_power(q_exp, coeff)
        k = (2 * pi_exp + tau_exp) % 4
        comps = []
        memo: dict[int, RationalFn] = {}
        for j in range(4):
            u = (j * k + t_exp) % 4
            if u not in memo:
                memo[u] = base.times_unit(u)
            comps.append(memo[u])
        return cls(comps)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[RationalFn | TauScalar | Number]) -> TauScalar:
        """c0 + c1*tau + c2*tau^2 + c3*tau^3."""
        cs = [_coerce_fn(c) for c in coeffs]
        cs += [ZERO_FN] * (4 - len(cs))
        comps = []
        for j in range(4):
            acc = ZERO_FN
            for k, c in enumerate(cs):
                if not c.is_zero():
                    acc = acc + c.times_unit(j * k)
            comps.append(acc)
        return cls(comps)

    @classmethod
    def from_laurent(cls, terms: Mapping[tuple[int, int], GaussScalar | Number]) -> TauScalar:
        """Build from {(q_exp, tau_exp): coeff}."""
        by_tau: dict[int, dict[int, GaussScalar]] = {}
        for (e, k), c in terms.items():
            by_tau.setdefault(k % 4, {})
            by_tau[k % 4][e] = by_tau[k % 4].get(e, GaussScalar()) + _as_gauss(c)
        return cls.from_coeffs([RationalFn.from_laurent(LaurentPoly(by_tau.get(k, {}))) for k in range(4)])

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def is_unit(self) -> bool:
        return not any(c.is_zero() for c in self.comps)

    def is_pi_world(self) -> bool:
        """True when the value lies in Q(t)(q)[pi], i.e. is tau-even."""
        return self.comps[0] == self.comps[2] and self.comps[1] == self.comps[3]

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, TauScalar):
            if isinstance(other, (int, Fraction)):
                other = TauScalar.const(other)
            else:
                return NotImplemented
        return all(a == b for a, b in zip(self.comps, other.comps))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.comps)
        return self._hash

    # arithmetic -------------------------------------------------------------
    def __add__(self, other) -> TauScalar:
        other = _coerce(other)
        if other.is_zero():
            return self
        memo: dict = {}
        out = []
        for a, b in zip(self.comps, other.comps):
            key = (id(a), id(b))
            r = memo.get(key)
            if r is None:
                r = a + b
                memo[key] = r
            out.append(r)
        return TauScalar(out)

    __radd__ = __add__

    def __neg__(self) -> TauScalar:
        memo: dict = {}
        out = []
        for a in self.comps:
            r = memo.get(id(a))
            if r is None:
                r = -a
                memo[id(a)] = r
            out.append(r)
        return TauScalar(out)

    def __sub__(self, other) -> TauScalar:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> TauScalar:
        return _coerce(other) - self

    def __mul__(self, other) -> TauScalar:
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 1:
                return self
            return self._map(lambda c: c.scale(f))
        return TauScalar(_comp_mul(self.comps, other.comps))

    __rmul__ = __mul__

    def _map(self, fn) -> TauScalar:
        memo: dict = {}
        out = []
        for a in self.comps:
            r = memo.get(id(a))
            if r is None:
                r = fn(a)
                memo[id(a)] = r
            out.append(r)
        return TauScalar(out)

    def try_invert(self) -> TauScalar:
        for j, c in enumerate(self.comps):
            if c.is_zero():
                raise NotInvertibleError(
                    f"not invertible: the idempotent component at tau={TAU_POINTS[j]} vanishes"
                )
        return self._map(lambda c: c.inverse())

    inverse = try_invert

    def __truediv__(self, other) -> TauScalar:
        return self * _coerce(other).try_invert()

    def __pow__(self, k: int) -> TauScalar:
        if k < 0:
            return self.try_invert() ** (-k)
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def times_t(self, k: int) -> TauScalar:
        """Multiply by t^k."""
        if k % 4 == 0:
            return self
        return self._map(lambda c: c.times_unit(k))

    # ring automorphisms -------------------------------------------------------
    def bar(self) -> TauScalar:
        """q -> pi/q, fixing t and tau."""
        return TauScalar(c.subst_inverted(1 if j % 2 == 0 else -1) for j, c in enumerate(self.comps))

    def twist(self) -> TauScalar:
        """q -> t^-1 q, tau -> t^-1 tau."""
        src = self.comps
        memo: dict = {}
        out = []
        for j in range(4):
            c = src[(j - 1) % 4]
            r = memo.get(id(c))
            if r is None:
                r = c.subst_scaled(3)
                memo[id(c)] = r
            out.append(r)
        return TauScalar(out)

    def untwist(self) -> TauScalar:
        """Inverse of ``twist``: q -> t q, tau -> t tau."""
        src = self.comps
        return TauScalar(src[(j + 1) % 4].subst_scaled(1) for j in range(4))

    # projections ----------------------------------------------------------------
    def specialize(self, x: str | int) -> RationalFn:
        """Value at tau = x for x in {'1', 't', '-1', '-t'} or an index j (tau = t^j)."""
        if isinstance(x, str):
            x = TAU_POINTS.index(x.replace("i", "t").replace("+", ""))
        return self.comps[x % 4]

    def coeffs(self) -> tuple[RationalFn, ...]:
        """Power-basis coefficients (c0, c1, c2, c3)."""
        out = []
        for k in range(4):
            acc = ZERO_FN
            for j, a in enumerate(self.comps):
                if not a.is_zero():
                    acc = acc + a.times_unit(-j * k)
            out.append(acc.scale(Fraction(1, 4)))
        return tuple(out)

    def is_laurent(self) -> bool:
        return all(c.is_laurent() for c in self.comps)

    def laurent_terms(self) -> dict[tuple[int, int], GaussScalar]:
        """{(q_exp, tau_exp): coeff}; requires Laurent coefficients."""
        out: dict[tuple[int, int], GaussScalar] = {}
        for k, c in enumerate(self.coeffs()):
            for e, g in c.to_laurent().terms.items():
                out[(e, k)] = g
        return out

    def __repr__(self) -> str:
        return f"TauScalar({self})"

    def __str__(self) -> str:
        cs = self.coeffs()
        if all(c.is_laurent() for c in cs):
            return _render_terms([(e, k, g) for (e, k), g in self.laurent_terms().items()])
        # common denominator: lcm of the real denominators
        den = _P1
        for c in cs:
            g = den.gcd(c.d)
            den = den * (c.d / g)
        num_terms: list[tuple[int, int, GaussScalar]] = []
        for k, c in enumerate(cs):
            f = den / c.d
            scaled = RationalFn(c.a * f, c.b * f, _P1, normalized=True)
            for e, g in scaled.numerator().terms.items():
                num_terms.append((e, k, g))
        den_str = str(LaurentPoly({e: GaussScalar(_frac(c), 0) for e, c in enumerate(den.coeffs()) if c}))
        return f"({_render_terms(num_terms)})/({den_str})"

    @classmethod
    def parse(cls, text: str) -> TauScalar:
        """Inverse of ``str``: accepts q, τ (or tau), i (or t), pi, integers, + - * / ^ and parentheses."""
        return parse_scalar(text)


def _coerce_fn(x) -> RationalFn:
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, TauScalar):
        if not all(c == x.comps[0] for c in x.comps):
            raise ValueError("expected a tau-free scalar")
        return x.comps[0]
    if isinstance(x, GaussScalar):
        return RationalFn.const(x.re, x.im)
    return RationalFn.const(x)


def _coerce(x) -> TauScalar:
    if isinstance(x, TauScalar):
        return x
    if isinstance(x, (int, Fraction)):
        if x == 0:
            return ZERO
        if x == 1:
            return ONE
        return TauScalar.const(x)
    if isinstance(x, RationalFn):
        return TauScalar.from_fn(x)
    if isinstance(x, GaussScalar):
        return TauScalar.const(x.re, x.im)
    raise TypeError(f"cannot coerce {type(x).__name__} to TauScalar")


ZERO = TauScalar.from_fn(ZERO_FN)
ONE = TauScalar.from_fn(ONE_FN)


def idempotent(k: int) -> TauScalar:
    """The idempotent e with tau*e = t^k*e; equals 1 at tau = t^k and 0 elsewhere.

    For k = 0, 2 this is (1 + x tau + (x tau)^2 + (x tau)^3)/4 with x = t^k.
    """
    return TauScalar(ONE_FN if j == k % 4 else ZERO_FN for j in range(4))


# ---------------------------------------------------------------------------
# (q, pi)-combinatorics
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def q_int(n: int, d: int = 1) -> TauScalar:
    """[n] in the variables q^d, pi^d: sum_k pi^(d(n-1-k)) q^(d(n-1-2k))."""
    if n < 0:
        return -(TauScalar.monomial(pi_exp=d * n) * q_int(-n, d))
    acc: dict[tuple[int, int], GaussScalar] = {}
    for k in range(n):
        key = (d * (n - 1 - 2 * k), (2 * d * (n - 1 - k)) % 4)
        acc[key] = acc.get(key, GaussScalar()) + GaussScalar(1)
    return TauScalar.from_laurent(acc)


@lru_cache(maxsize=None)
def q_fact(n: int, d: int = 1) -> TauScalar:
    out = ONE
    for m in range(1, n + 1):
        out = out * q_int(m, d)
    return out


@lru_cache(maxsize=None)
def q_binom(n: int, k: int, d: int = 1) -> TauScalar:
    """Quantum binomial via the Pascal rule [n,k] = v^k [n-1,k] + w^(n-k) [n-1,k-1],
    v = pi^d q^d, w = q^-d."""
    if k < 0 or k > n:
        return ZERO
    if k == 0 or k == n:
        return ONE
    v_k = TauScalar.monomial(q_exp=d * k, pi_exp=d * k)
    w_nk = TauScalar.monomial(q_exp=-d * (n - k))
    return v_k * q_binom(n - 1, k, d) + w_nk * q_binom(n - 1, k - 1, d)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_NAMES = {
    "q": lambda: TauScalar.monomial(q_exp=1),
    "tau": lambda: TauScalar.monomial(tau_exp=1),
    "i": lambda: TauScalar.monomial(t_exp=1),
    "t": lambda: TauScalar.monomial(t_exp=1),
    "pi": lambda: TauScalar.monomial(pi_exp=1),
}


def parse_scalar(text: str) -> TauScalar:
    import ast

    src = text.replace("^", "**").replace("τ", "tau").replace("π", "pi")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}: {exc.msg}") from None

    def ev(node) -> TauScalar:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return _coerce(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ValueError(f"exponents must be integer literals in {text!r}")
                return ev(node.left) ** (sign * exp.value)
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                return a / b
        raise ValueError(f"unsupported syntax in scalar {text!r}")

    return ev(tree)
