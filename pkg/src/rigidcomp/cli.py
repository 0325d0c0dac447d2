"""Command-line entry point.

Subcommands: gen, decompose, verify, bounds, sweep.  Every subcommand is
deterministic given its flags (stochastic ones given their seed).  Exit
codes: 0 success, 2 usage error, 3 parse error, 4 verification mismatch,
5 certification failure, 6 instance too large for the oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import certify, evaluate_formula, formula_names
from .experiments import (
    DEFAULT_GAP_LOWER,
    DEFAULT_GAP_UPPER_FRACTION,
    ExperimentConfig,
    run_sweep,
    sweep_metadata,
    write_records_csv,
)
from .graphs import EdgeListParseError, GraphError, edge_list_str, read_edge_list, sample_gnp
from .oracle import OracleLimitError, brute_components
from .pebble import rigid_components

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_MISMATCH = 4
EXIT_CERTIFY = 5
EXIT_TOO_LARGE = 6


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _cmd_gen(args) -> int:
    if (args.p is None) == (args.c is None):
        print("gen: exactly one of --p or --c is required", file=sys.stderr)
        return EXIT_USAGE
    p = args.p if args.p is not None else args.c / args.n
    if not 0.0 <= p <= 1.0:
        print(f"gen: edge probability must be in [0, 1], got {p}", file=sys.stderr)
        return EXIT_USAGE
    print(f"seed: {args.seed}", file=sys.stderr)
    g = sample_gnp(args.n, p, args.seed)
    _write_out(edge_list_str(g), args.out)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    g = read_edge_list(args.input)
    payload = rigid_components(g).to_json_dict()
    if g.n < 2:
        print("warning: graph has fewer than 2 vertices; decomposition is empty",
              file=sys.stderr)
    _write_out(json.dumps(payload, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_verify(args) -> int:
    g = read_edge_list(args.input)
    try:
        verdict = brute_components(g)
    except OracleLimitError as exc:
        print(f"verify: too large for oracle: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    engine = rigid_components(g).vertex_sets()
    oracle = set(verdict.components)
    match = engine == oracle
    print(json.dumps({
        "n": g.n,
        "m": g.m,
        "engine_components": sorted(sorted(c) for c in engine),
        "oracle_components": sorted(sorted(c) for c in oracle),
        "match": match,
    }, indent=2))
    return EXIT_OK if match else EXIT_MISMATCH


def _cmd_bounds(args) -> int:
    if args.certify:
        results = certify()
        ok = True
        for r in results:
            status = "ok" if r.ok else "FAIL"
            print(f"{status:4s} {r.name} {r.detail}".rstrip())
            ok &= r.ok
        return EXIT_OK if ok else EXIT_CERTIFY
    if not args.formula:
        print("bounds: --formula or --certify is required", file=sys.stderr)
        return EXIT_USAGE
    params = {k: getattr(args, k) for k in ("a", "c", "N", "p", "delta", "x", "n", "k", "s", "epsilon", "t")}
    try:
        report = evaluate_formula(args.formula, params)
    except ValueError as exc:
        print(f"bounds: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(report.to_json_dict()))
    return EXIT_OK


def _parse_config_file(path: str) -> dict:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise EdgeListParseError(f"config line {lineno}: expected key = value, got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key] = val
    return values


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(",") if x.strip())


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _cmd_sweep(args) -> int:
    raw: dict = {}
    if args.config:
        raw = _parse_config_file(args.config)
    n_values = _int_list(args.n) if args.n else _int_list(raw.get("n_values", ""))
    c_values = _float_list(args.c) if args.c else _float_list(raw.get("c_values", ""))
    trials = args.trials if args.trials is not None else int(raw.get("trials", 0))
    seed = args.seed if args.seed is not None else int(raw.get("master_seed", 0))
    gap_lower = args.gap_lower if args.gap_lower is not None else int(
        raw.get("gap_lower", DEFAULT_GAP_LOWER))
    gap_frac = args.gap_upper_fraction if args.gap_upper_fraction is not None else float(
        raw.get("gap_upper_fraction", DEFAULT_GAP_UPPER_FRACTION))
    if not n_values or not c_values or trials < 1:
        print("sweep: need --n, --c and --trials (flags or config file)", file=sys.stderr)
        return EXIT_USAGE
    config = ExperimentConfig(
        n_values=n_values, c_values=c_values, trials=trials, master_seed=seed,
        gap_lower=gap_lower, gap_upper_fraction=gap_frac,
    )
    print(f"seed: {config.master_seed}", file=sys.stderr)
    records, summaries = run_sweep(config, threads=args.threads)
    import io

    buf = io.StringIO()
    write_records_csv(records, buf)
    _write_out(buf.getvalue(), args.csv)
    summary = {"metadata": sweep_metadata(config), "cells": summaries}
    _write_out(json.dumps(summary, indent=2) + "\n", args.summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rigidcomp",
        description="Rigid-component decomposition, bound certification, and "
                    "random-graph experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample G(n, p) to an edge-list file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, help="edge probability")
    p.add_argument("--c", type=float, help="mean-degree parameter (p = c/n)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("decompose", help="rigid components of an edge-list file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("verify", help="cross-check the engine against the brute-force oracle")
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bounds", help="evaluate or certify the closed-form bounds")
    p.add_argument("--certify", action="store_true")
    p.add_argument("--formula", choices=formula_names())
    for flag in ("a", "c", "p", "delta", "s", "epsilon", "t"):
        p.add_argument(f"--{flag}", type=float, default=None)
    for flag in ("N", "x", "n", "k"):
        p.add_argument(f"--{flag}", type=int, default=None)
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("sweep", help="Monte Carlo sweep over an (n, c) grid")
    p.add_argument("--n", help="comma-separated vertex counts")
    p.add_argument("--c", help="comma-separated mean-degree parameters")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--gap-lower", type=int, default=None)
    p.add_argument("--gap-upper-fraction", type=float, default=None)
    p.add_argument("--config", help="key = value config file")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--csv", default=None, help="records output path (default stdout)")
    p.add_argument("--summary", default=None, help="summary JSON path (default stdout)")
    p.set_defaults(func=_cmd_sweep)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    print(f"rigidcomp {__version__}", file=sys.stderr)
    try:
        return args.func(args)
    except EdgeListParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
