"""Exact linear algebra over the coefficient ring.

The ring Q(t)(q)[tau]/(tau^4 = 1) is a product of four fields, so every
elimination here runs independently on each idempotent component and the
answers are reassembled.  Vectors whose independence differs between
components would mean a non-free module; that is reported as an error rather
than papered over.

Components 0 and 2 (and likewise 1 and 3) coincide for tau-even data; when
all inputs are tau-even only two components are solved.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .scalars import ONE_FN, ZERO, RationalFn, TauScalar

SparseVec = dict  # key -> TauScalar


class NonFreeError(ArithmeticError):
    """Raised when linear dependence differs between idempotent components."""


def _pi_world(scalars: Iterable[TauScalar]) -> bool:
    for s in scalars:
        c = s.comps
        if not (c[0] is c[2] or c[0] == c[2]) or not (c[1] is c[3] or c[1] == c[3]):
            return False
    return True


def _assemble(per_comp: dict[int, RationalFn]) -> TauScalar:
    if len(per_comp) == 2:
        return TauScalar((per_comp[0], per_comp[1], per_comp[0], per_comp[1]))
    return TauScalar(per_comp[j] for j in range(4))


class _FieldEchelon:
    """Incremental echelon form over one field component."""

    def __init__(self):
        self.rows: list[tuple[Hashable, dict, dict]] = []  # (pivot key, vec, combo)

    def reduce(self, idx: int, vec: dict) -> tuple[dict, dict]:
        v = dict(vec)
        combo: dict = {idx: ONE_FN}
        for pk, rv, rc in self.rows:
            c = v.get(pk)
            if c is None:
                continue
            for k, x in rv.items():
                y = v.get(k)
                y = -(c * x) if y is None else y - c * x
                if y.is_zero():
                    v.pop(k, None)
                else:
                    v[k] = y
            for k, x in rc.items():
                y = combo.get(k)
                y = -(c * x) if y is None else y - c * x
                if y.is_zero():
                    combo.pop(k, None)
                else:
                    combo[k] = y
        return v, combo

    def add(self, v: dict, combo: dict, key_order) -> None:
        pk = min(v, key=key_order)
        inv = v[pk].inverse()
        self.rows.append((pk, {k: x * inv for k, x in v.items()}, {k: x * inv for k, x in combo.items()}))


def select_independent(
    vectors: Sequence[SparseVec], key_order=None
) -> tuple[list[int], list[dict[int, TauScalar]]]:
    """Greedy left-to-right maximal independent subset.

    Returns (chosen, expr) where chosen lists indices of the selected vectors
    and expr[k] maps chosen indices to coefficients with
    vectors[k] = sum expr[k][c] * vectors[c].
    """
    key_order = key_order or (lambda k: k)
    comps = (0, 1) if _pi_world(s for v in vectors for s in v.values()) else (0, 1, 2, 3)
    ech = {j: _FieldEchelon() for j in comps}
    chosen: list[int] = []
    expr: list[dict[int, TauScalar]] = []
    for idx, vec in enumerate(vectors):
        results = {}
        for j in comps:
            fv = {k: s.comps[j] for k, s in vec.items() if not s.comps[j].is_zero()}
            results[j] = ech[j].reduce(idx, fv)
        nonzero = {j: bool(results[j][0]) for j in comps}
        if all(nonzero.values()):
            for j in comps:
                ech[j].add(results[j][0], results[j][1], key_order)
            chosen.append(idx)
            expr.append({idx: _unit()})
        elif not any(nonzero.values()):
            # 0 = sum combo[o] v_o with combo[idx] = 1
            coeffs: dict[int, dict[int, RationalFn]] = {}
            for j in comps:
                for o, x in results[j][1].items():
                    if o != idx:
                        coeffs.setdefault(o, {})[j] = -x
            e: dict[int, TauScalar] = {}
            for o, per in coeffs.items():
                full = {j: per.get(j, _zero_fn()) for j in comps}
                s = _assemble(full)
                if not s.is_zero():
                    e[o] = s
            expr.append(e)
        else:
            raise NonFreeError(
                f"vector {idx} is independent in components {sorted(j for j in comps if nonzero[j])} only"
            )
    return chosen, expr


def _unit() -> TauScalar:
    return TauScalar.const(1)


def _zero_fn() -> RationalFn:
    return ZERO.comps[0]


def invert(matrix: Sequence[Sequence[TauScalar]]) -> list[list[TauScalar]]:
    """Inverse of a square matrix; every component must be nonsingular."""
    n = len(matrix)
    comps = (0, 1) if _pi_world(s for row in matrix for s in row) else (0, 1, 2, 3)
    out_per: dict[int, list[list[RationalFn]]] = {}
    for j in comps:
        M = [[matrix[r][c].comps[j] for c in range(n)] + [ONE_FN if r == c else _zero_fn() for c in range(n)]
             for r in range(n)]
        for col in range(n):
            piv = next((r for r in range(col, n) if not M[r][col].is_zero()), None)
            if piv is None:
                raise NonFreeError(f"matrix singular in component {j}")
            M[col], M[piv] = M[piv], M[col]
            inv = M[col][col].inverse()
            M[col] = [x * inv for x in M[col]]
            for r in range(n):
                if r != col and not M[r][col].is_zero():
                    f = M[r][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        out_per[j] = [row[n:] for row in M]
    return [[_assemble({j: out_per[j][r][c] for j in comps}) for c in range(n)] for r in range(n)]


# ---------------------------------------------------------------------------
# sparse vectors
# ---------------------------------------------------------------------------


def vec_add_into(acc: dict, vec: dict, coeff: TauScalar | None = None) -> None:
    """acc += coeff * vec, dropping zeros."""
    for k, x in vec.items():
        y = x if coeff is None else coeff * x
        old = acc.get(k)
        if old is not None:
            y = old + y
            if y.is_zero():
                del acc[k]
                continue
        elif y.is_zero():
            continue
        acc[k] = y


def vec_scale(vec: dict, coeff: TauScalar) -> dict:
    out = {}
    for k, x in vec.items():
        y = coeff * x
        if not y.is_zero():
            out[k] = y
    return out


def vec_equal(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    for k in keys:
        x, y = a.get(k), b.get(k)
        if x is None:
            if not y.is_zero():
                return False
        elif y is None:
            if not x.is_zero():
                return False
        elif x != y:
            return False
    return True
