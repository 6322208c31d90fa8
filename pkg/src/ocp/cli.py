"""Command-line interface: ``ocp <subcommand> ...``.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 solver guard
exceeded, 5 certificate rejected (``verify`` only).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .core import residual_trace, total_cost, verify_certificate
from .errors import (
    ConfigurationError,
    InstanceError,
    MalformedCertificateError,
    OcpError,
    ParseError,
    PreconditionError,
    SolverCapacityError,
)
from .generators import GenParams, gen_random_3p, gen_random_ocp
from .harness import run_gap_experiment
from .reduction import extract_partition, reduce_3p_to_ocp, solve_3p_bruteforce, validate_3p
from .solvers import SOLVERS

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_GUARD = 4
EXIT_REJECTED = 5


def _emit(args, records, text):
    if args.format == "records":
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    else:
        print(text)


def _read_text(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None


def _write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _instance(path):
    if not Path(path).exists() and path in io.FIXTURES:
        return io.load_fixture(path)
    return io.parse_instance(_read_text(path))


def _covering(path, instance):
    return io.parse_covering(_read_text(path), instance)[0]


def cmd_eval(args):
    inst = _instance(args.instance)
    cov = _covering(args.covering, inst)
    trace = residual_trace(inst, cov)
    cost = total_cost(trace)
    records = [
        {"step": k, "edge": s.edge_id, "residual": sorted(s.residual), "weight": s.weight}
        for k, s in enumerate(trace.steps)
    ]
    records.append({"cost": str(cost)})
    lines = [f"{k:>3}  {s.edge_id:<12} u={s.weight:<6} U={{{', '.join(sorted(s.residual))}}}"
             for k, s in enumerate(trace.steps)]
    lines.append(f"cost {cost}")
    _emit(args, records, "\n".join(lines))
    return EXIT_OK


def cmd_verify(args):
    inst = _instance(args.instance)
    if args.budget is not None:
        inst = inst.with_budget(io.parse_budget(args.budget))
    cov = _covering(args.covering, inst)
    verdict = verify_certificate(inst, cov)
    rec = {"accepted": verdict.accepted, "reason": verdict.reason.value, "detail": verdict.detail}
    _emit(args, [rec], f"{verdict.reason.value}" + (f": {verdict.detail}" if verdict.detail else ""))
    return EXIT_OK if verdict.accepted else EXIT_REJECTED


def cmd_solve(args):
    inst = _instance(args.instance)
    solver = SOLVERS[args.method]
    if args.method == "dp" and args.max_universe is not None:
        result = solver(inst, max_universe=args.max_universe)
    else:
        result = solver(inst)
    rec = {
        "method": args.method,
        "cost": str(result.cost),
        "optimal": result.optimal,
        "sequence": list(result.covering.sequence),
    }
    _emit(args, [rec], f"cost {result.cost}\nsequence {' '.join(result.covering.sequence)}")
    if args.output:
        _write_text(args.output, io.serialize_covering(result.covering, args.instance))
    return EXIT_OK


def cmd_reduce(args):
    tp = io.parse_3p(_read_text(args.threep))
    inst, rmap = reduce_3p_to_ocp(tp)
    prefix = Path(args.output) if args.output else Path(args.threep).with_suffix("")
    ocp_path = prefix.with_name(prefix.name + ".ocp")
    map_path = prefix.with_name(prefix.name + ".ocpmap")
    _write_text(ocp_path, io.serialize_instance(inst))
    _write_text(map_path, io.serialize_map(rmap))
    rec = {
        "instance": str(ocp_path),
        "map": str(map_path),
        "triplets": len(rmap.triplets),
        "edges": len(inst.edges),
        "w": rmap.w,
        "budget": list(rmap.budget.terms),
        "infeasible": rmap.infeasible,
    }
    text = (f"wrote {ocp_path} and {map_path}: {len(rmap.triplets)} valid triplets, "
            f"{len(inst.edges)} edges, w={rmap.w}, budget {rmap.budget}")
    if rmap.infeasible:
        text += "\nwarning: no valid triplet; the instance has no covering (answer NO)"
    _emit(args, [rec], text)
    return EXIT_OK


def cmd_extract(args):
    rmap = io.parse_map(_read_text(args.map))
    inst = _instance(args.instance)
    cov = _covering(args.covering, inst)
    partition = extract_partition(rmap, inst, cov)
    if args.format == "records":
        print(json.dumps({"triplets": [list(t) for t in partition.triplets]}, sort_keys=True))
    else:
        sys.stdout.write(io.serialize_partition(partition))
    return EXIT_OK


def cmd_check3p(args):
    tp = io.parse_3p(_read_text(args.threep))
    problems = validate_3p(tp)
    if problems:
        _emit(args, [{"valid": False, "violations": problems}], "invalid:\n  " + "\n  ".join(problems))
        return EXIT_VALIDATION
    partition = solve_3p_bruteforce(tp, max_m=args.max_m)
    answer = None if partition is None else [list(t) for t in partition.triplets]
    text = "valid; " + ("NO partition exists" if partition is None else f"partition {answer}")
    _emit(args, [{"valid": True, "partition": answer}], text)
    return EXIT_OK


def cmd_gen(args):
    params = GenParams(
        family=args.family,
        seed=args.seed,
        n_labels=args.labels,
        n_edges=args.edges,
        max_weight=args.max_weight,
        edge_density=args.density,
        m=args.m,
        B_min=args.b_min,
        B_max=args.b_max,
    )
    if args.family == "random-ocp":
        text = io.serialize_instance(gen_random_ocp(params))
    else:
        text = io.serialize_3p(gen_random_3p(params))
    if args.output:
        _write_text(args.output, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gap(args):
    directory = Path(args.directory)
    if not directory.is_dir():
        raise ParseError("not a directory", str(directory))
    batch = [(p.name, io.parse_instance(p.read_text(encoding="utf-8"))) for p in sorted(directory.glob("*.ocp"))]
    report = run_gap_experiment(batch, max_universe=args.max_universe, workers=args.workers)
    _emit(args, report.records(), report.table())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ocp", description="Ordered covering problem toolkit.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="print the residual trace and cost")
    p.add_argument("instance")
    p.add_argument("covering")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify", parents=[common], help="check a covering against the budget")
    p.add_argument("instance")
    p.add_argument("covering")
    p.add_argument("--budget", help="override budget (decimal)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", parents=[common], help="minimize the covering cost")
    p.add_argument("instance")
    p.add_argument("--method", choices=sorted(SOLVERS), default="dp")
    p.add_argument("--max-universe", type=int, default=None)
    p.add_argument("-o", "--output", help="write the covering to this .cov file")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("reduce", parents=[common], help="reduce a 3-Partition instance")
    p.add_argument("threep")
    p.add_argument("-o", "--output", help="output prefix (default: input path without suffix)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("extract", parents=[common], help="recover a 3-partition from a covering")
    p.add_argument("map")
    p.add_argument("instance")
    p.add_argument("covering")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("check3p", parents=[common], help="validate and brute-force a 3-Partition instance")
    p.add_argument("threep")
    p.add_argument("--max-m", type=int, default=4)
    p.set_defaults(func=cmd_check3p)

    p = sub.add_parser("gen", parents=[common], help="generate a random instance")
    p.add_argument("family", choices=("random-ocp", "planted-3p", "unconstrained-3p"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--labels", type=int, default=6)
    p.add_argument("--edges", type=int, default=5)
    p.add_argument("--max-weight", type=int, default=5)
    p.add_argument("--density", type=float, default=0.4)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--b-min", type=int, default=9)
    p.add_argument("--b-max", type=int, default=15)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("gap", parents=[common], help="greedy vs optimal on every .ocp in a directory")
    p.add_argument("directory")
    p.add_argument("--max-universe", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_gap)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SolverCapacityError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InstanceError, PreconditionError, ConfigurationError, MalformedCertificateError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OcpError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
