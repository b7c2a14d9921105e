"""Versioned on-disk cache for simple modules, R-matrices and invariants.

Entries are plain text: a magic header line, a key line, a sha256 of the
payload, then the payload.  The cache is advisory: any unreadable, stale or
corrupted entry is ignored and rebuilt, and deleting the directory is safe.
"""

from __future__ import annotations

import hashlib
import os
from pathlib import Path
from typing import Sequence

from filelock import FileLock

from .braiding import cached_r, seed_r
from .modules import Morphism, WeightModule, basis_tuples, dual_simple, seed_simple, simple_module
from .rootdatum import Weight, cartan_datum, format_weight
from .scalars import TauScalar, parse_scalar

MAGIC = "covknot-cache"
VERSION = 1
ENV_VAR = "COVKNOT_CACHE_DIR"


class CacheError(ValueError):
    pass


def _ints(xs: Sequence[int]) -> str:
    return ",".join(str(x) for x in xs)


def _parse_ints(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",")) if text else ()


# ---------------------------------------------------------------------------
# module and morphism payloads
# ---------------------------------------------------------------------------


def module_to_text(M: WeightModule) -> str:
    """Grades, parities, F-words and sparse E/F action triples of V(lambda)."""
    if M.sign != 1 or M.highest is None:
        raise CacheError("only simple modules V(lambda) are serialized; duals are rebuilt from them")
    lines = [f"module {M.datum.n} {_ints(M.highest)} {M.dim}", f"name {M.name}"]
    for b in range(M.dim):
        lines.append(f"basis {b} {_ints(M.weights[b])} {M.parities[b]} {_ints(M.grades[b])} {_ints(M.words[b])}")
    for gen, act in (("E", M.E), ("F", M.F)):
        for i, mat in enumerate(act):
            for b, col in enumerate(mat):
                for tgt, c in sorted(col.items()):
                    lines.append(f"{gen} {i} {b} {tgt} {c}")
    return "\n".join(lines)


def module_from_text(text: str) -> WeightModule:
    rows = text.splitlines()
    head = rows[0].split()
    if head[0] != "module":
        raise CacheError("not a module payload")
    n, lam, dim = int(head[1]), _parse_ints(head[2]), int(head[3])
    name = rows[1].split(" ", 1)[1]
    weights, parities, grades, words = [], [], [], []
    E = [[{} for _ in range(dim)] for _ in range(n)]
    F = [[{} for _ in range(dim)] for _ in range(n)]
    for row in rows[2:]:
        parts = row.split(" ", 4)
        if parts[0] == "basis":
            # the word field may be empty, so pad the split
            parts = (row + " ").split(" ")[:6]
            weights.append(_parse_ints(parts[2]))
            parities.append(int(parts[3]))
            grades.append(_parse_ints(parts[4]))
            words.append(_parse_ints(parts[5]))
        else:
            act = E if parts[0] == "E" else F
            act[int(parts[1])][int(parts[2])][int(parts[3])] = parse_scalar(parts[4])
    if len(weights) != dim:
        raise CacheError("basis count does not match the header")
    return WeightModule(cartan_datum(n), name, weights, parities, E, F,
                        highest=lam, sign=1, words=words, grades=grades)


def morphism_to_text(f: Morphism) -> str:
    lines = []
    for k in basis_tuples(f.dom):
        for k2, c in sorted(f.column(k).items()):
            lines.append(f"{_ints(k)} {_ints(k2)} {c}")
    return "\n".join(lines)


def morphism_from_text(text: str, dom: Sequence[WeightModule], cod: Sequence[WeightModule], label: str) -> Morphism:
    cols: dict[tuple[int, ...], dict] = {}
    for row in text.splitlines():
        if not row:
            continue
        a, b, c = row.split(" ", 2)
        cols.setdefault(_parse_ints(a), {})[_parse_ints(b)] = parse_scalar(c)
    return Morphism(dom, cod, lambda k: cols.get(k, {}), label)


# ---------------------------------------------------------------------------
# the store
# ---------------------------------------------------------------------------


class Cache:
    def __init__(self, root: str | os.PathLike | None = None):
        root = root if root is not None else os.environ.get(ENV_VAR)
        self.root = Path(root) if root else None
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)

    @property
    def enabled(self) -> bool:
        return self.root is not None

    def _path(self, key: str) -> Path:
        return self.root / (hashlib.sha256(key.encode()).hexdigest()[:32] + ".txt")

    def get(self, key: str) -> str | None:
        if not self.enabled:
            return None
        path = self._path(key)
        if not path.exists():
            return None
        with FileLock(str(path) + ".lock"):
            text = path.read_text(encoding="utf-8")
        head, _, rest = text.partition("\n")
        stored_key, _, rest = rest.partition("\n")
        digest, _, payload = rest.partition("\n")
        if head != f"{MAGIC} v{VERSION}" or stored_key != key:
            return None
        if hashlib.sha256(payload.encode()).hexdigest() != digest:
            return None
        return payload

    def put(self, key: str, payload: str) -> None:
        if not self.enabled:
            return
        path = self._path(key)
        digest = hashlib.sha256(payload.encode()).hexdigest()
        with FileLock(str(path) + ".lock"):
            tmp = path.with_suffix(".tmp")
            tmp.write_text(f"{MAGIC} v{VERSION}\n{key}\n{digest}\n{payload}", encoding="utf-8")
            tmp.replace(path)

    # -- typed helpers -----------------------------------------------------

    def simple(self, n: int, lam: Weight) -> WeightModule:
        """V(lambda), loaded from disk when present and installed in the engine."""
        key = f"module n={n} lam={format_weight(lam)}"
        payload = self.get(key)
        if payload is not None:
            try:
                seed_simple(n, lam, module_from_text(payload))
            except (CacheError, ValueError, IndexError):
                pass
            return simple_module(n, lam)
        M = simple_module(n, lam)
        self.put(key, module_to_text(M))
        return M

    def r_matrix(self, n: int, lam: Weight, mu: Weight, up: tuple[bool, bool], inverse: bool) -> Morphism:
        """R (or R^-1) for the colored pair, keyed by rank, colors and orientation."""
        mods = []
        for w, u in zip((lam, mu), up):
            self.simple(n, w)
            mods.append(simple_module(n, w) if u else dual_simple(n, w))
        M, Mp = mods
        key = f"R n={n} lam={format_weight(lam)} mu={format_weight(mu)} up={up} inverse={inverse}"
        payload = self.get(key)
        if payload is not None:
            dom, cod = ((Mp, M), (M, Mp)) if inverse else ((M, Mp), (Mp, M))
            try:
                seed_r(M, Mp, inverse, morphism_from_text(payload, dom, cod, f"R[{M.name},{Mp.name}]"))
            except (ValueError, IndexError):
                pass
            return cached_r(M, Mp, inverse)
        f = cached_r(M, Mp, inverse)
        self.put(key, morphism_to_text(f))
        return f

    def invariant(self, key: str) -> TauScalar | None:
        payload = self.get("J " + key)
        if payload is None:
            return None
        try:
            return parse_scalar(payload)
        except ValueError:
            return None

    def store_invariant(self, key: str, J: TauScalar) -> None:
        self.put("J " + key, str(J))
