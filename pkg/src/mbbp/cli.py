"""Command line front end: solve campaigns, generate instances, export LPs,
fetch datasets, and run variant studies."""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .harness import (CampaignConfig, InstanceSpec, report_to_csv,
                      report_to_json, report_to_table, run_campaign)
from .instance_io import (KONECT_DATASETS, FetchError, ParseError, export_lp,
                          fetch_konect, gen_random, write_bip)
from .reduction import peel
from .solution import balanced_size
from .solver import ReductionVariant, SolverParams, solve
from .tabu_search import UnbalanceVariant

__all__ = ["main"]


def _gen_triple(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"--gen wants n,p,id, got {text!r}")
    try:
        return int(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"--gen wants n,p,id, got {text!r}")


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="paths", action="append", default=[],
                   metavar="PATH", help="instance file (repeatable)")
    p.add_argument("--format", choices=["bip", "konect"], default="bip",
                   help="syntax of --in files")
    p.add_argument("--gen", dest="gens", action="append", default=[],
                   type=_gen_triple, metavar="N,P,ID",
                   help="generated instance triple (repeatable)")
    p.add_argument("--konect", dest="konects", action="append", default=[],
                   metavar="NAME", help="KONECT dataset to fetch (repeatable)")


def _add_solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--runs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-limit", type=float, default=60.0, metavar="SECS")
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--K", type=int, default=None)
    p.add_argument("--exact-timeout", type=float, default=10.0, metavar="SECS")
    p.add_argument("--unbalance", choices=["2", "1", "inf"], default="2")
    p.add_argument("--reduction", choices=["none", "peel", "peel+exact"],
                   default="peel+exact")
    p.add_argument("--profile", choices=["dense", "sparse"], default="dense")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--emit", choices=["table", "csv", "json"], default="table")


def _params_from(args) -> SolverParams:
    base = SolverParams.dense() if args.profile == "dense" else SolverParams.sparse()
    over = {
        "time_limit": args.time_limit,
        "exact_budget": args.exact_timeout,
        "unbalance": UnbalanceVariant.from_str(args.unbalance),
        "reduction": ReductionVariant.from_str(args.reduction),
        "seed": args.seed,
    }
    if args.L is not None:
        over["L"] = args.L
    if args.alpha is not None:
        over["alpha"] = args.alpha
    if args.K is not None:
        over["K"] = args.K
    return replace(base, **over)


def _specs_from(args) -> list:
    specs = [InstanceSpec.from_file(p, args.format) for p in args.paths]
    specs += [InstanceSpec.from_gen(*t) for t in args.gens]
    specs += [InstanceSpec.from_konect(n) for n in args.konects]
    return specs


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _render(report, emit: str) -> str:
    if emit == "json":
        return report_to_json(report)
    if emit == "csv":
        return report_to_csv(report)
    return report_to_table(report)


def _cmd_solve(args) -> int:
    specs = _specs_from(args)
    if not specs:
        print("solve: no instances given (use --in, --gen, or --konect)",
              file=sys.stderr)
        return 2
    config = CampaignConfig(instances=tuple(specs), runs=args.runs,
                            params=_params_from(args), jobs=args.jobs)
    report = run_campaign(config)
    _emit(_render(report, args.emit), args.out)
    return 1 if len(report.failed) == len(report.results) else 0


def _cmd_variants(args) -> int:
    specs = _specs_from(args)
    if not specs:
        print("variants: no instances given", file=sys.stderr)
        return 2
    params = _params_from(args)
    if args.study == "unbalance":
        settings = [("unbalance", UnbalanceVariant.from_str(s))
                    for s in ("2", "1", "inf")]
    else:
        settings = [("reduction", ReductionVariant.from_str(s))
                    for s in ("none", "peel", "peel+exact")]
    chunks = []
    any_ok = False
    for attr, value in settings:
        config = CampaignConfig(instances=tuple(specs), runs=args.runs,
                                params=replace(params, **{attr: value}),
                                jobs=args.jobs)
        report = run_campaign(config)
        any_ok = any_ok or len(report.failed) < len(report.results)
        label = f"{attr}={value.value}"
        if args.emit == "table":
            chunks.append(f"== {label} ==\n" + report_to_table(report))
        else:
            chunks.append(f'"{label}":' + "\n" + _render(report, args.emit))
    _emit("\n".join(chunks), args.out)
    return 0 if any_ok else 1


def _cmd_gen(args) -> int:
    if not args.gens:
        print("gen: nothing to generate (use --gen n,p,id)", file=sys.stderr)
        return 2
    out = args.out
    multiple = len(args.gens) > 1
    if out is None:
        out = Path(".")
    for n, p, seed in args.gens:
        g = gen_random(n, p, seed)
        name = f"G_{n}_{p:g}_{seed}.bip"
        path = (out / name) if (multiple or out.is_dir()) else out
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w") as fh:
            write_bip(g, fh)
        print(path)
    return 0


def _cmd_export_lp(args) -> int:
    specs = _specs_from(args)
    if len(specs) != 1:
        print("export-lp: exactly one instance required", file=sys.stderr)
        return 2
    if args.out is None:
        print("export-lp: --out is required", file=sys.stderr)
        return 2
    g, meta = specs[0].load()
    if args.peel_with_best:
        params = _params_from(args)
        report = solve(g, params)
        peel(g, report.omega)
        print(f"peeled at omega={report.omega}: "
              f"{g.alive_counts()[0]}x{g.alive_counts()[1]} vertices left",
              file=sys.stderr)
    # write to a sibling temp file so a failed export (cap exceeded, disk
    # full) cannot truncate an existing file at args.out
    tmp = Path(str(args.out) + ".tmp")
    try:
        with open(tmp, "w") as fh:
            export_lp(g, fh, name=meta.name, max_complement=args.max_complement)
    except BaseException:
        tmp.unlink(missing_ok=True)
        raise
    tmp.replace(args.out)
    print(args.out)
    return 0


def _cmd_fetch(args) -> int:
    if not args.konects:
        print("fetch: name at least one dataset with --konect", file=sys.stderr)
        return 2
    code = 0
    for name in args.konects:
        try:
            print(fetch_konect(name))
        except (FetchError, ValueError) as e:
            print(f"fetch {name}: {e}", file=sys.stderr)
            code = 1
    return code


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mbbp",
        description="Maximum balanced biclique solver and benchmark harness")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the solver over instances")
    _add_instance_args(p)
    _add_solver_args(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("gen", help="write generated instances as .bip files")
    p.add_argument("--gen", dest="gens", action="append", default=[],
                   type=_gen_triple, metavar="N,P,ID", required=True)
    p.add_argument("--out", type=Path, default=None,
                   help="output file, or directory for several")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("export-lp", help="write the MIP formulation as CPLEX LP")
    _add_instance_args(p)
    _add_solver_args(p)
    p.add_argument("--peel-with-best", action="store_true",
                   help="solve first, then peel at the found size before export")
    p.add_argument("--max-complement", type=int, default=10_000_000)
    p.set_defaults(fn=_cmd_export_lp)

    p = sub.add_parser("fetch", help="download KONECT datasets into the cache")
    p.add_argument("--konect", dest="konects", action="append", default=[],
                   metavar="NAME", choices=sorted(KONECT_DATASETS))
    p.set_defaults(fn=_cmd_fetch)

    p = sub.add_parser("variants", help="ablation study over solver variants")
    _add_instance_args(p)
    _add_solver_args(p)
    p.add_argument("--study", choices=["unbalance", "reduction"],
                   default="unbalance")
    p.set_defaults(fn=_cmd_variants)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except (ParseError, FetchError, OSError, ValueError) as e:
        print(f"mbbp {args.command}: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
