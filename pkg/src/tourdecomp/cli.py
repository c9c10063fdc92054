"""Command-line interface: gen, excess, decompose, verify, experiment.

Exit codes: 0 ok, 1 bad input, 2 failed or out of budget, 3 counterexample.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .construct.absorption import AbsorptionParams
from .digraph import Digraph, format_edge_list, parse_edge_list
from .errors import DigraphError
from .excess import excess_profile
from .experiment import METHODS, NODES_PER_MS, batch_specs, run_experiment
from .exact import verify_conjecture
from .generators import KINDS, GeneratorSpec, generate

EXIT_OK, EXIT_INPUT, EXIT_FAILED, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3

log = logging.getLogger("tourdecomp")


class InputError(Exception):
    pass


def _read_digraph(src: str) -> Digraph:
    try:
        text = sys.stdin.read() if src == "-" else Path(src).read_text()
    except OSError as err:
        raise InputError(f"cannot read {src}: {err.strerror}") from None
    try:
        return parse_edge_list(text)
    except (DigraphError, ValueError) as err:
        raise InputError(f"{src}: {err}") from None


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as err:
        raise InputError(f"cannot write {out}: {err.strerror}") from None


def _params(raw: str | None) -> AbsorptionParams | None:
    if raw is None:
        return None
    try:
        vals = [int(x) for x in raw.split(",")]
        ell, m, s, *rest = vals
        return AbsorptionParams(ell, m, s, interval_cap=rest[0] if rest else None)
    except ValueError as err:
        raise InputError(f"--params expects ell,m,s[,interval_cap]: {err}") from None


def cmd_gen(args) -> int:
    try:
        D = generate(GeneratorSpec(args.kind, args.n, args.seed, args.bias))
    except ValueError as err:
        raise InputError(str(err)) from None
    _emit(format_edge_list(D), args.out)
    return EXIT_OK


def cmd_excess(args) -> int:
    prof = excess_profile(_read_digraph(args.input))
    if args.format == "json":
        _emit(json.dumps(prof.to_dict(), indent=2) + "\n", args.out)
    else:
        lines = [f"ex(D) = {prof.total}"]
        lines += [f"{v}\t{x:+d}" for v, x in enumerate(prof.per_vertex)]
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_decompose(args) -> int:
    from .experiment import _construct, _exact
    D = _read_digraph(args.input)
    if args.method == "exact":
        paths, exact, status = _exact(D, args.budget_ms)
    else:
        paths, exact, status = _construct(D, _params(args.params))
        if paths is None and args.method == "auto":
            log.info("construction failed (%s); falling back to exact search", status)
            paths, exact, status = _exact(D, args.budget_ms)
    if paths is None:
        print(f"decomposition failed: {status}", file=sys.stderr)
        return EXIT_FAILED
    from .decomposition import PathDecomposition
    dec = PathDecomposition.of(D, paths)
    payload = dec.to_dict()
    payload["exact"] = exact
    _emit(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK if exact else EXIT_FAILED


def cmd_verify(args) -> int:
    if args.samples is None and not args.all:
        raise InputError("verify needs --all or --samples K")
    nodes = None if args.budget_ms is None else int(args.budget_ms * NODES_PER_MS)
    try:
        rep = verify_conjecture(
            args.n, "all" if args.all else "sample", iso=args.iso,
            samples=args.samples or 0, seed=args.seed, node_budget=nodes,
        )
    except ValueError as err:
        raise InputError(str(err)) from None
    if args.out:
        _emit(json.dumps(rep, indent=2) + "\n", args.out)
    print(f"n={rep['n']}: {rep['instances']} instances, {rep['consistent']} consistent, "
          f"{len(rep['violations'])} violations, {len(rep['inconclusive'])} inconclusive")
    if rep["violations"]:
        print(json.dumps(rep["violations"], indent=2))
        return EXIT_COUNTEREXAMPLE
    return EXIT_FAILED if rep["inconclusive"] else EXIT_OK


def cmd_experiment(args) -> int:
    try:
        specs = batch_specs(args.kind, args.n, args.samples, args.seed, args.bias)
    except ValueError as err:
        raise InputError(str(err)) from None
    rep = run_experiment(specs, args.method, budget_ms=args.budget_ms,
                         workers=args.workers, params=_params(args.params))
    if args.format == "csv":
        if args.out is None:
            raise InputError("--format csv needs --out")
        rep.write_csv(args.out)
    else:
        _emit(rep.to_json(timing=not args.no_timing), args.out)
    agg = rep.aggregates()
    print(f"{agg['solved']}/{agg['instances']} solved, {agg['perfect']} perfect, "
          f"{agg['invalid']} invalid", file=sys.stderr)
    return EXIT_FAILED if agg["invalid"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tourdecomp", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance as an edge list")
    g.add_argument("--kind", choices=KINDS, default="random_uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bias", type=float)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("excess", help="excess profile of an edge-list file")
    e.add_argument("input", help="edge-list file, or - for stdin")
    e.add_argument("--format", choices=("json", "text"), default="text")
    e.add_argument("--out")
    e.set_defaults(func=cmd_excess)

    d = sub.add_parser("decompose", help="path decomposition of an edge-list file")
    d.add_argument("input", help="edge-list file, or - for stdin")
    d.add_argument("--method", choices=METHODS, default="exact")
    d.add_argument("--budget-ms", type=float)
    d.add_argument("--params", help="absorption parameters ell,m,s[,interval_cap]")
    d.add_argument("--format", choices=("json",), default="json")
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="compare pn(T) with ex(T) over even tournaments")
    v.add_argument("--n", type=int, required=True)
    mode = v.add_mutually_exclusive_group()
    mode.add_argument("--all", action="store_true")
    mode.add_argument("--samples", type=int)
    v.add_argument("--iso", action="store_true", help="one tournament per isomorphism class")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget-ms", type=float)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("experiment", help="run a batch of generated instances")
    x.add_argument("--kind", choices=KINDS, default="skewed")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--samples", type=int, default=10)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--bias", type=float)
    x.add_argument("--method", choices=METHODS, default="auto")
    x.add_argument("--budget-ms", type=float)
    x.add_argument("--params", help="absorption parameters ell,m,s[,interval_cap]")
    x.add_argument("--workers", type=int, default=1)
    x.add_argument("--format", choices=("json", "csv"), default="json")
    x.add_argument("--no-timing", action="store_true", help="omit the timing block")
    x.add_argument("--out")
    x.set_defaults(func=cmd_experiment)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
