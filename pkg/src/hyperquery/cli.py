"""Command-line front end.

Exit codes: 0 ok, 2 usage or input error, 3 construction failure,
4 budget refusal, 5 verification failure, 6 decode ambiguous/inconsistent.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import bench
from .construct import ConstructionConfig, ConstructionFailure, las_vegas_construct, zero_test_plan
from .decode import UNIQUE, decode_exhaustive
from .field import INFINITY, FieldSpec
from .hypergraph import Hypergraph, random_hypergraph
from .plan import QueryPlan, answer_plan
from .verify import (
    BudgetExceeded,
    check_column_independence,
    verify_detecting,
    verify_search,
    verify_zero_test,
)

EXIT_OK, EXIT_USAGE, EXIT_CONSTRUCT, EXIT_BUDGET, EXIT_VERIFY, EXIT_DECODE = 0, 2, 3, 4, 5, 6

log = logging.getLogger("hyperquery")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _field_arg(text: str) -> FieldSpec:
    try:
        return FieldSpec.from_json(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> list[int]:
    return [_positive(t) for t in text.split(",") if t]


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"


def _read_plan(path: str) -> QueryPlan:
    return QueryPlan.from_json(Path(path).read_text())


def _answers_to_json(values) -> list:
    return [v if isinstance(v, int) else str(v) for v in values]


def cmd_construct(args) -> int:
    cfg = ConstructionConfig(
        c1=args.c1, C2=args.C2, retry_limit=args.retries, seed=args.seed,
        verify_mode=args.verify, budget=args.budget,
    )
    result, attempts = las_vegas_construct(args.kind, args.n, args.d, args.m, cfg, field=args.field)
    log.info("%s set verified=%s after %d attempt(s)", args.kind, args.verify == "exhaustive", attempts)
    plan = zero_test_plan(result) if args.kind == "zero-test" else result
    if args.field is not None:
        plan.field = args.field
    _write(args.out, plan.to_json())
    return EXIT_OK


def cmd_answer(args) -> int:
    plan = _read_plan(args.plan)
    G = Hypergraph.from_json(Path(args.graph).read_text())
    if G.n != plan.n or G.rank > plan.d:
        log.error("hypergraph (n=%d, rank=%d) does not fit plan (n=%d, d=%d)", G.n, G.rank, plan.n, plan.d)
        return EXIT_USAGE
    F = args.field or plan.field
    answers = answer_plan(plan, G, F)
    _write(args.out, _dump({"schema": 1, "field": F.to_json(), "answers": _answers_to_json(answers)}))
    return EXIT_OK


def cmd_verify(args) -> int:
    plan = _read_plan(args.plan)
    F = args.field or plan.field
    mode = args.mode or plan.kind
    m = args.m or (plan.m_detect if mode in ("detecting", "columns") else plan.m)
    if mode == "zero-test":
        if plan.tuples is None:
            log.error("plan file carries no tuples")
            return EXIT_USAGE
        report = verify_zero_test(plan.tuples, plan.n, plan.d, m, F, budget=args.budget)
    elif mode == "detecting":
        report = verify_detecting(plan, plan.n, plan.d, m, F, args.window, args.budget)
    elif mode == "search":
        report = verify_search(plan, plan.n, plan.d, m, F, args.route, args.window, args.budget)
    else:
        report = check_column_independence(plan, plan.n, plan.d, m, F, args.budget)
    _write(args.out, _dump(report.to_dict()))
    log.info("%s: %s", report.check, "pass" if report.verdict else "fail")
    return EXIT_OK if report.verdict else EXIT_VERIFY


def _parse_answer(a):
    return int(a) if isinstance(a, int) else Fraction(a)


def cmd_decode(args) -> int:
    plan = _read_plan(args.plan)
    data = json.loads(Path(args.answers).read_text())
    answers = [_parse_answer(a) for a in data["answers"]]
    F = args.field or FieldSpec.from_json(data.get("field", plan.field.to_json()))
    result = decode_exhaustive(plan, answers, m=args.m, F=F, window=args.window, budget=args.budget)
    _write(args.out, _dump(result.to_dict()))
    if result.outcome == UNIQUE and args.graph_out:
        Path(args.graph_out).write_text(result.graph.to_json())
    log.info("decode: %s (%d candidates)", result.outcome, result.candidates_examined)
    return EXIT_OK if result.outcome == UNIQUE else EXIT_DECODE


def cmd_bench(args) -> int:
    cfg = ConstructionConfig(c1=args.c1, C2=args.C2, seed=args.seed)
    records = bench.run_grid(args.ns, args.ms, args.d, cfg, args.kind)
    _write(args.out, bench.to_csv(records))
    worst = bench.max_ratio(records)
    log.info("max ratio k/bound1 = %.4f", worst)
    if args.max_ratio is not None and worst > args.max_ratio:
        log.error("ratio %.4f exceeds allowed %.4f", worst, args.max_ratio)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_random_graph(args) -> int:
    G = random_hypergraph(args.n, args.d, args.m, seed=args.seed, field=args.field or INFINITY, mixed=args.mixed)
    _write(args.out, G.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperquery", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build (and optionally verify) a query plan")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--kind", choices=("zero-test", "detecting", "search"), default="search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c1", type=float, default=4.0)
    p.add_argument("--C2", type=float, default=8.0)
    p.add_argument("--retries", type=_positive, default=20)
    p.add_argument("--verify", choices=("exhaustive", "skip"), default="exhaustive")
    p.add_argument("--field", type=_field_arg, default=None, help="verification prime (default: chosen per plan)")
    p.add_argument("--budget", type=_positive, default=10**7)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("answer", help="answer every plan query for a hypergraph")
    p.add_argument("--plan", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--field", type=_field_arg, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_answer)

    p = sub.add_parser("verify", help="exhaustively verify a plan file")
    p.add_argument("--plan", required=True)
    p.add_argument("--mode", choices=("zero-test", "detecting", "search", "columns"), default=None)
    p.add_argument("--m", type=_positive, default=None)
    p.add_argument("--field", type=_field_arg, default=None)
    p.add_argument("--route", choices=("both", "dtos", "direct"), default="both")
    p.add_argument("--window", type=_positive, default=2)
    p.add_argument("--budget", type=_positive, default=10**7)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="reconstruct the hypergraph behind an answers file")
    p.add_argument("--plan", required=True)
    p.add_argument("--answers", required=True)
    p.add_argument("--m", type=_positive, default=None)
    p.add_argument("--field", type=_field_arg, default=None)
    p.add_argument("--window", type=_positive, default=2)
    p.add_argument("--budget", type=_positive, default=10**7)
    p.add_argument("--out", default=None)
    p.add_argument("--graph-out", default=None, help="write the decoded hypergraph here when unique")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bench", help="plan sizes over an (n, m) grid as CSV")
    p.add_argument("--ns", type=_int_list, default=[16, 32, 64, 128, 256])
    p.add_argument("--ms", type=_int_list, default=[4, 8, 16, 32, 64])
    p.add_argument("--d", type=_positive, default=2)
    p.add_argument("--kind", choices=("detecting", "search"), default="search")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c1", type=float, default=4.0)
    p.add_argument("--C2", type=float, default=8.0)
    p.add_argument("--max-ratio", type=float, default=None, help="fail (exit 5) if any k/bound1 exceeds this")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("random-graph", help="write a random hypergraph file")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--field", type=_field_arg, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mixed", action="store_true", help="draw edges of every size 1..d")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_random_graph)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConstructionFailure as exc:
        log.error("%s", exc)
        if exc.report is not None and exc.report.counterexample is not None:
            log.error("last counterexample: %s", exc.report.counterexample)
        return EXIT_CONSTRUCT
    except BudgetExceeded as exc:
        log.error("%s", exc)
        return EXIT_BUDGET
    except (ValueError, KeyError, json.JSONDecodeError, FileNotFoundError) as exc:
        log.error("%s", exc)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
