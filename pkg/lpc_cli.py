from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from analytics.bus_simulator import SimConfig, simulate
from analytics.reporting import bounds_frame, comparison_frame, render, summary_frame, wire_frame
from chart.chart_builder import build_chart
from codes.bounds import applicable_bound, bounds, comparison_sizes, headline_comparisons
from codes.code_model import KIND_COOLING, KIND_LPC, HotSet
from codes.code_store import load_code, save_code
from codes.registry import CONSTRUCTIONS, build_code
from config.settings import log
from mapping.domination_map import (
    DominationGraph,
    LeafMapping,
    load_mapping,
    save_mapping,
    synthesize_for,
    synthesize_mapping,
)
from validation.mapping_verifier import verify_mapping
from validation.verifier import MODE_EXHAUSTIVE, MODE_SAMPLED, min_distance, verify_code

# integer construction parameters accepted as --name flags
INT_PARAMS = ("q", "w", "e", "t", "n", "k", "m", "alpha", "beta")
# parameters naming files
PATH_PARAMS = ("inner", "generator", "cooling", "mapping")


def _int_list(text: str) -> List[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(payload: Any) -> None:
    print(json.dumps(payload, indent=2, default=str))


# ---- subcommands ------------------------------------------------------------


def cmd_construct(args: argparse.Namespace) -> int:
    params: Dict[str, Any] = {name: getattr(args, name) for name in INT_PARAMS if getattr(args, name) is not None}
    params.update({name: getattr(args, name) for name in PATH_PARAMS if getattr(args, name) is not None})
    code = build_code(args.construction, params, base_dir=Path.cwd())
    summary = code.describe()
    if args.output:
        summary["path"] = str(save_code(code, args.output))
    _emit(summary)
    return 0


def cmd_encode(args: argparse.Namespace) -> int:
    code = load_code(args.code)
    hot = HotSet.from_wires(code.n, args.hot, code.t)
    word = code.encode(args.codeset, hot)
    _emit({"codeset": args.codeset, "hot": list(hot), "codeword": word.to_list(), "weight": word.weight})
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    code = load_code(args.code)
    _emit({"codeword": sorted(args.word), "codeset": code.decode(args.word)})
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    code = load_code(args.code)
    mode = MODE_SAMPLED if args.sampled else MODE_EXHAUSTIVE
    report = verify_code(code, mode=mode, trials=args.trials, seed=args.seed, workers=args.workers)
    payload = report.to_dict()
    if code.kind != KIND_COOLING:
        limit = applicable_bound(code.n, code.t, code.w, code.kind != KIND_LPC)
        payload["size_bound"] = {"bound": limit, "within": code.size <= limit}
    if args.min_distance:
        payload["min_distance"] = min_distance(code)
    _emit(payload)
    return 0 if report.passed else 1


def cmd_bounds(args: argparse.Namespace) -> int:
    if args.json:
        _emit(bounds(args.n, args.t, args.w))
    else:
        print(render(bounds_frame(args.n, args.t, args.w)))
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    if args.examples:
        entries = headline_comparisons()
    else:
        if args.n is None or args.t is None or args.w is None:
            raise ValueError("compare needs N T W, or --examples")
        concat = [dict(zip(("m", "s", "w_prime", "q"), row)) for row in args.concat or []]
        sunflower = [dict(zip(("s", "r"), row)) for row in args.sunflower or []] or None
        entries = comparison_sizes(args.n, args.t, args.w, concatenation=concat, sunflower=sunflower)
    if args.json:
        _emit([e.to_dict() for e in entries])
    else:
        print(render(comparison_frame(entries)))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    config = SimConfig.from_json(args.config)
    if args.steps is not None:
        config = replace(config, steps=args.steps)
    report = simulate(config)
    payload = report.to_dict()
    if args.chart:
        payload["chart"] = build_chart(report, output_path=args.chart)
    if args.json:
        _emit(payload)
    else:
        print(f"# thermal proxy: {report.thermal_model}")
        print(render(summary_frame(report)))
        print()
        print(render(wire_frame(report)))
    ok = report.hot_violations == 0 and report.weight_violations == 0
    return 0 if ok else 1


def cmd_synth_mapping(args: argparse.Namespace) -> int:
    if args.sizes:
        result = synthesize_mapping(DominationGraph.from_sizes(args.sizes), args.w)
    else:
        if args.m is None or args.n is None:
            raise ValueError("synth-mapping needs --sizes, or --m and --n")
        result = synthesize_for(args.m, args.n, args.w)
    if not isinstance(result, LeafMapping):
        _emit(result.to_dict())
        return 1
    payload: Dict[str, Any] = {
        "feasible": True,
        "groups": result.graph.to_list(),
        "w": result.w,
        "verify": verify_mapping(result).to_dict(),
    }
    if args.output:
        payload["path"] = str(save_mapping(args.output, result))
    _emit(payload)
    return 0


def cmd_verify_mapping(args: argparse.Namespace) -> int:
    report = verify_mapping(load_mapping(args.mapping))
    _emit(report.to_dict())
    return 0 if report.passed else 1


# ---- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lpc_cli",
        description="Construct, encode, decode, verify and bound low-power cooling codes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Build a named construction and optionally save it")
    p.add_argument("construction", choices=sorted(CONSTRUCTIONS))
    for name in INT_PARAMS:
        p.add_argument(f"--{name}", type=int)
    for name in PATH_PARAMS:
        p.add_argument(f"--{name}", help=f"Path to a {name} JSON file")
    p.add_argument("-o", "--output", help="Write the code file here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", help="Encode a codeset index avoiding a hot set")
    p.add_argument("code")
    p.add_argument("--codeset", type=int, required=True)
    p.add_argument("--hot", type=_int_list, default=[], help="Comma-separated hot wires, e.g. 1,5,9")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="Recover the codeset index of a word")
    p.add_argument("code")
    p.add_argument("--word", type=_int_list, required=True, help="Comma-separated lit wires")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", help="Check weights, disjointness and cooling")
    p.add_argument("code")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exhaustive", action="store_true", help="All t-subsets (default)")
    mode.add_argument("--sampled", action="store_true", help="Seeded random hot sets and codesets")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--min-distance", action="store_true", help="Also compute the minimum distance")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="Counting and Turan upper bounds")
    p.add_argument("n", type=int)
    p.add_argument("t", type=int)
    p.add_argument("w", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("compare", help="Sizes of prior constructions")
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("t", type=int, nargs="?")
    p.add_argument("w", type=int, nargs="?")
    p.add_argument("--examples", action="store_true", help="The headline comparison rows")
    p.add_argument("--concat", type=_int_list, action="append", help="m,s,w',q")
    p.add_argument("--sunflower", type=_int_list, action="append", help="s,r")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simulate", help="Run the bus simulator on a config file")
    p.add_argument("config")
    p.add_argument("--steps", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--chart", help="Write an HTML chart of per-wire transitions here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("synth-mapping", help="Synthesize a domination mapping by matching")
    p.add_argument("--sizes", type=_int_list, help="Group sizes, e.g. 1,2")
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--w", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_synth_mapping)

    p = sub.add_parser("verify-mapping", help="Exhaustively check a mapping file")
    p.add_argument("mapping")
    p.set_defaults(func=cmd_verify_mapping)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    log("CLI", f"command={args.command}")
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
