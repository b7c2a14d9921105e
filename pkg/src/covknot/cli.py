"""Command line: evaluate invariants, run the verification suites, query the oracle.

Exit codes: 0 success, 2 unparsable input, 3 an internal consistency check failed.
"""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from .cache import Cache
from .modules import ModuleError
from .oracle import jones_polynomial, sl2_specialization
from .rootdatum import Weight, format_weight, parse_weight
from .scalars import NotInvertibleError
from .suites import SUITES
from .tangles import BraidWord, Coloring, DiagramError, SliceDiagram, as_diagram, invariant, parse, parse_braid, writhe
from .twistor import TwistorError, specialization_relation

EXIT_PARSE = 2
EXIT_CONSISTENCY = 3

DEFAULT_INPUT = "braid 1:"

SPECIALIZATIONS = {
    "so": ("1", "tau = 1 (pi = 1, quantum so(2n+1))"),
    "osp": ("t", "tau = t (pi = -1, quantum osp(1|2n))"),
}


class ConsistencyError(RuntimeError):
    pass


def _weights(n: int, colors: tuple[str, ...]) -> list[Weight]:
    out = []
    for text in colors or ("1" if n == 1 else ",".join(["1"] + ["0"] * (n - 1)),):
        w = parse_weight(text)
        if len(w) != n:
            raise DiagramError(f"color {text!r} has {len(w)} coordinates, rank is {n}")
        out.append(w)
    return out


def _diagram(obj: SliceDiagram | BraidWord, weights: list[Weight]) -> SliceDiagram:
    if isinstance(obj, BraidWord):
        comps = len(obj.components())
        if len(weights) == 1:
            return obj.closure([0] * comps)
        if len(weights) != comps:
            raise DiagramError(f"braid closure has {comps} components but {len(weights)} colors were given")
        return obj.closure(list(range(comps)))
    return as_diagram(obj)


def _warm_cache(cache: Cache, n: int, T: SliceDiagram, col: Coloring) -> None:
    for w in col.weights:
        cache.simple(n, w)
    seen = set()
    for _, t, a, b in T.crossings():
        inverse = t.sign < 0
        first, second = (b, a) if inverse else (a, b)
        key = (first.color, second.color, first.up, second.up, inverse)
        if key not in seen:
            seen.add(key)
            cache.r_matrix(n, col.weights[first.color], col.weights[second.color], (first.up, second.up), inverse)


def evaluate(source: str, n: int, weights: list[Weight], specialize: str, cache_dir: str | None = None) -> dict:
    """The JSON record for one input; raises DiagramError or ConsistencyError."""
    obj = parse(source)
    T = _diagram(obj, weights)
    if not T.is_closed():
        raise DiagramError("the invariant needs a closed diagram (no open boundary)")
    col = Coloring(n, weights)
    cache = Cache(cache_dir)
    key = f"n={n} colors={';'.join(map(format_weight, weights))}\n{T.text()}"
    J = cache.invariant(key)
    if J is None:
        if cache.enabled:
            _warm_cache(cache, n, T, col)
        try:
            J = invariant(T, col)
        except (NotInvertibleError, ModuleError) as exc:
            raise ConsistencyError(str(exc)) from exc
        cache.store_invariant(key, J)
    specs = {}
    wanted = list(SPECIALIZATIONS) if specialize == "all" else ([] if specialize == "none" else [specialize])
    for name in wanted:
        specs[name] = str(J.specialize(SPECIALIZATIONS[name][0]))
    record = {
        "input": source.strip(),
        "n": n,
        "colors": [list(w) for w in weights],
        "writhe": writhe(T),
        "invariant": str(J),
        "specializations": specs,
    }
    if specialize == "all":
        try:
            c, star = specialization_relation(J)
        except TwistorError as exc:
            raise ConsistencyError(str(exc)) from exc
        record["twistor"] = {"c": c, "star": star}
    return record


def _eval_line(args: tuple[str, int, list[Weight], str, str | None]) -> dict:
    source, n, weights, specialize, cache_dir = args
    try:
        return evaluate(source, n, weights, specialize, cache_dir)
    except DiagramError as exc:
        return {"input": source, "error": str(exc), "exit": EXIT_PARSE}
    except ConsistencyError as exc:
        return {"input": source, "error": str(exc), "exit": EXIT_CONSISTENCY}


def _print_record(rec: dict) -> None:
    if "error" in rec:
        return
    click.echo(f"input: {rec['input']}")
    click.echo(f"  n = {rec['n']}, colors = {', '.join(format_weight(w) for w in rec['colors'])}, writhe = {rec['writhe']}")
    click.echo(f"  J = {rec['invariant']}")
    for name, val in rec["specializations"].items():
        click.echo(f"  {SPECIALIZATIONS[name][1]}: {val}")
    if "twistor" in rec:
        tw = rec["twistor"]
        click.echo(f"  twist(J) = t^{tw['c']} J;  J(tau=t)(q) = t^{tw['star']} J(tau=1)(t^-1 q)")


# ---------------------------------------------------------------------------


@click.group()
def main() -> None:
    """Exact invariants of colored tangles for quantum covering groups of osp(1|2n)."""


@main.command("eval")
@click.option("--n", "rank", default=1, show_default=True, type=click.IntRange(1), help="rank n")
@click.option("--color", "colors", multiple=True,
              help="dominant weight coordinates, e.g. 2 or 1,0; repeat once per component or cup color")
@click.option("--braid", help="braid word whose closure is evaluated, e.g. '2: s1 s1 s1'")
@click.option("--dsl", type=click.Path(dir_okay=False), help="file holding one slice-diagram in the tile DSL")
@click.option("--file", "batch", type=click.Path(dir_okay=False),
              help="file with one braid word per line, evaluated in a worker pool")
@click.option("--specialize", type=click.Choice(["none", "so", "osp", "all"]), default="all", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="emit JSON records")
@click.option("--jobs", default=None, type=click.IntRange(1), help="worker processes for --file")
def eval_cmd(rank, colors, braid, dsl, batch, specialize, as_json, jobs) -> None:
    """Evaluate the renormalized invariant J of a closed colored diagram."""
    if sum(x is not None for x in (braid, dsl, batch)) > 1:
        raise click.UsageError("give at most one of --braid, --dsl, --file")
    try:
        weights = _weights(rank, colors)
    except (DiagramError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    cache_dir = None  # Cache() falls back to COVKNOT_CACHE_DIR
    if batch is not None:
        sources = [ln for ln in _read(batch).splitlines() if ln.split("#", 1)[0].strip()]
        jobs_args = [(s, rank, weights, specialize, cache_dir) for s in sources]
        if jobs == 1 or len(sources) < 2:
            records = [_eval_line(a) for a in jobs_args]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                records = list(pool.map(_eval_line, jobs_args))
    else:
        source = braid if braid is not None else (_read(dsl) if dsl is not None else DEFAULT_INPUT)
        if braid is not None:
            try:
                parse_braid(braid)
            except DiagramError as exc:
                click.echo(f"error: {exc}", err=True)
                sys.exit(EXIT_PARSE)
        records = [_eval_line((source, rank, weights, specialize, cache_dir))]
    if as_json:
        click.echo(json.dumps(records if batch is not None else records[0], indent=2))
    else:
        for rec in records:
            _print_record(rec)
    codes = [rec.get("exit", 0) for rec in records]
    for rec in records:
        if "error" in rec and not as_json:
            click.echo(f"error: {rec['input'].strip()}: {rec['error']}", err=True)
    if codes and max(codes):
        sys.exit(max(codes))


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        click.echo(f"error: cannot read {path}: {exc.strerror}", err=True)
        sys.exit(EXIT_PARSE)


@main.command("verify")
@click.argument("suite", type=click.Choice(["axioms", "yangbaxter", "turaev", "twistor", "all"]))
@click.option("--n", "rank", default=1, show_default=True, type=click.IntRange(1))
@click.option("--max-color", default=2, show_default=True, type=click.IntRange(1),
              help="largest coordinate sum of the colors checked")
@click.option("--seed", default=7, show_default=True, help="seed for the randomized Turaev contexts")
def verify_cmd(suite, rank, max_color, seed) -> None:
    """Run a verification suite, printing every check and its constant."""
    names = list(SUITES) if suite == "all" else [suite]
    failed = total = 0
    for name in names:
        for chk in SUITES[name](rank, max_color, seed):
            total += 1
            failed += not chk.passed
            click.echo(chk.line())
    click.echo(f"{total - failed}/{total} checks passed")
    if failed:
        sys.exit(EXIT_CONSISTENCY)


@main.group("oracle")
def oracle_cmd() -> None:
    """Independent reference computations."""


@oracle_cmd.command("jones")
@click.option("--braid", required=True, help="braid word, e.g. '2: s1 s1 s1'")
@click.option("--json", "as_json", is_flag=True)
def jones_cmd(braid, as_json) -> None:
    """Jones polynomial of a closed braid from the Kauffman bracket state sum.

    Conventions: <unknot> = 1, f = (-A^3)^-w <L>, V(t) = f at A = t^(-1/4).
    The sl2 line is (q + q^-1) f at A^2 = -q^-1, which equals J at tau = 1
    for n = 1 and color 1.
    """
    try:
        word = parse_braid(braid)
    except DiagramError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    V = jones_polynomial(word)
    sl2 = sl2_specialization(word)
    terms = sorted(V.items(), reverse=True)
    if as_json:
        click.echo(json.dumps({"input": braid, "jones": {str(e): c for e, c in terms}, "sl2": str(sl2)}, indent=2))
        return
    click.echo("V(t) = " + " + ".join(f"({c})t^{e}" for e, c in terms))
    click.echo(f"sl2 (A^2 = -q^-1): {sl2}")


if __name__ == "__main__":
    main()
