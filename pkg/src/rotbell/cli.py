"""Command-line interface: tensors, maximization, criterion checks, scans.

Exit codes: 0 on success, 2 on invalid arguments or inputs, 3 when
--require-certified is set and the optimizer could not certify.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .correlation import CorrelationTensor, ghz_planar_tensor
from .criterion import CriterionReport, ScanPoint, ghz_scan, ri_criterion
from .errors import RotbellError
from .lhv import verify_bound
from .tensor_analysis import OptimizerConfig, t_max

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_CERTIFIED = 3

SCAN_COLUMNS = ("N", "V", "lhs", "rhs", "violated", "sum_sq", "two_setting_model", "region")


def _format_float(x: float) -> str:
    return f"{x:.12g}"


def _format_bool(x: bool) -> str:
    return "true" if x else "false"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _load_tensor(path: str) -> CorrelationTensor:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return CorrelationTensor.from_json_dict(data)


def _optimizer_config(args: argparse.Namespace) -> OptimizerConfig:
    return OptimizerConfig(random_starts=args.starts, seed=args.seed)


def _report_dict(report: CriterionReport) -> dict:
    return {
        "n_parties": report.n_parties,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "violated": report.violated,
        "two_setting_model": report.two_setting_model,
        "margin": report.margin,
        "sum_sq": report.sum_sq,
        "certified": report.certified,
    }


def _scan_row(point: ScanPoint) -> dict:
    r = point.report
    return {
        "N": r.n_parties,
        "V": point.visibility,
        "lhs": r.lhs,
        "rhs": r.rhs,
        "violated": r.violated,
        "sum_sq": r.sum_sq,
        "two_setting_model": r.two_setting_model,
        "region": point.region,
    }


def _scan_csv(points: list[ScanPoint]) -> str:
    lines = [",".join(SCAN_COLUMNS)]
    for point in points:
        row = _scan_row(point)
        cells = []
        for column in SCAN_COLUMNS:
            value = row[column]
            if isinstance(value, bool):
                cells.append(_format_bool(value))
            elif isinstance(value, float):
                cells.append(_format_float(value))
            else:
                cells.append(str(value))
        lines.append(",".join(cells))
    return "\n".join(lines)


def _cmd_tensor(args: argparse.Namespace) -> int:
    tensor = ghz_planar_tensor(args.ghz, args.visibility)
    _emit(json.dumps(tensor.to_json_dict(), indent=2), args.out)
    return EXIT_OK


def _cmd_tmax(args: argparse.Namespace) -> int:
    tensor = _load_tensor(args.infile)
    result = t_max(tensor, _optimizer_config(args))
    payload = {
        "value": result.value,
        "maximizer": [list(d) for d in result.maximizer],
        "certified": result.certified,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    if args.require_certified and not result.certified:
        return EXIT_NOT_CERTIFIED
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    tensor = _load_tensor(args.infile)
    report = ri_criterion(tensor, _optimizer_config(args))
    _emit(json.dumps(_report_dict(report), indent=2), args.out)
    if args.require_certified and not report.certified:
        return EXIT_NOT_CERTIFIED
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace) -> int:
    points = ghz_scan(args.ghz, args.v_min, args.v_max, args.steps, _optimizer_config(args))
    if args.format == "json":
        _emit(json.dumps([_scan_row(p) for p in points], indent=2), args.out)
    else:
        _emit(_scan_csv(points), args.out)
    if args.require_certified and not all(p.report.certified for p in points):
        return EXIT_NOT_CERTIFIED
    return EXIT_OK


def _cmd_verify_bound(args: argparse.Namespace) -> int:
    tensor = _load_tensor(args.infile)
    report = verify_bound(
        tensor,
        args.trials,
        seed=args.seed,
        include_optimal=not args.skip_optimal,
        config=OptimizerConfig(random_starts=args.starts),
    )
    payload = {
        "n_parties": report.n_parties,
        "trials": report.trials,
        "bound": report.bound,
        "max_found": report.max_found,
        "ratio_to_bound": report.ratio_to_bound,
        "violations": report.violations,
        "includes_optimal": report.includes_optimal,
        "certified": report.certified,
        "seed": report.seed,
    }
    _emit(json.dumps(payload, indent=2), args.out)
    if args.require_certified and not report.certified:
        return EXIT_NOT_CERTIFIED
    return EXIT_OK


def _add_optimizer_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="master PRNG seed")
    sub.add_argument("--starts", type=int, default=64, help="random multistart count")
    sub.add_argument(
        "--require-certified",
        action="store_true",
        help="exit with code 3 unless the optimizer result is grid-certified",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rotbell",
        description="Rotational-invariance constraints on local realistic models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tensor", help="emit a noisy-GHZ planar tensor as JSON")
    p.add_argument("--ghz", type=int, required=True, metavar="N", help="party count")
    p.add_argument("--visibility", type=float, required=True, metavar="V")
    p.add_argument("--out", metavar="FILE.json")
    p.set_defaults(handler=_cmd_tensor)

    p = sub.add_parser("tmax", help="maximize a tensor over planar settings")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE.json")
    p.add_argument("--out", metavar="FILE.json")
    _add_optimizer_flags(p)
    p.set_defaults(handler=_cmd_tmax)

    p = sub.add_parser("check", help="evaluate the exclusion criterion for a tensor")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE.json")
    p.add_argument("--out", metavar="FILE.json")
    _add_optimizer_flags(p)
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("scan", help="scan the criterion over a visibility grid")
    p.add_argument("--ghz", type=int, required=True, metavar="N", help="party count")
    p.add_argument("--v-min", type=float, required=True)
    p.add_argument("--v-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True, help="number of grid points")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", metavar="FILE")
    _add_optimizer_flags(p)
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("verify-bound", help="stress-test the bound with random ensembles")
    p.add_argument("--in", dest="infile", required=True, metavar="FILE.json")
    p.add_argument("--trials", type=int, default=1000, metavar="T")
    p.add_argument(
        "--skip-optimal",
        action="store_true",
        help="do not add the saturating strategy to the trial set",
    )
    p.add_argument("--out", metavar="FILE.json")
    _add_optimizer_flags(p)
    p.set_defaults(handler=_cmd_verify_bound)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except RotbellError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    raise SystemExit(main())
