"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 generation failure, 4 I/O failure.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .calibration import Calibrator
from .config import MlcnConfig, Mode, ScenarioConfig
from .engine import FailureEngine, mean_series
from .exceptions import ArgumentError, EmissionError, GenerationError
from .fixtures import write_fixtures
from .reporting import FORMATS, build_report, emit, summarize


EXIT_OK = 0
EXIT_USAGE = 2
EXIT_GENERATION = 3
EXIT_IO = 4

COMPARE_MODES = {
    "edge": (Mode.SEBC, Mode.DEBC),
    "node": (Mode.SNBC, Mode.DNBC),
}


def _generation_flags(parser: argparse.ArgumentParser):
    defaults = MlcnConfig()
    group = parser.add_argument_group("network generation")
    group.add_argument("--nodes", type=int, default=defaults.n, help="vertex count N")
    group.add_argument("--l1-p", type=float, default=defaults.l1_p, help="L1 edge probability")
    group.add_argument("--l2-p", type=float, default=defaults.l2_p, help="L2 edge probability")
    group.add_argument(
        "--l3-m", type=int, default=defaults.l3_m, help="L3 attachment edges per vertex"
    )
    group.add_argument(
        "--gauss-max-skew",
        type=float,
        default=defaults.gauss_max_skew,
        help="largest accepted |skewness| of the L1 hop counts",
    )
    group.add_argument(
        "--gauss-attempts",
        type=int,
        default=defaults.gauss_attempts,
        help="L1 candidates tried before giving up",
    )
    group.add_argument("--seed", type=int, default=0, help="master seed")


def _scenario_flags(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("scenario")
    group.add_argument("--failures", type=int, default=60, help="edges or nodes to fail")
    group.add_argument("--replicates", type=int, default=1, help="independent runs")
    group.add_argument("--workers", type=int, default=1, help="worker processes")
    group.add_argument(
        "--l3-tne-only",
        action="store_true",
        help="measure only TNE on L3, ASPL and TSPC are left empty",
    )
    group.add_argument("--chaos-window", type=int, default=5, help="chaos detector window")
    group.add_argument(
        "--chaos-factor", type=float, default=2.0, help="chaos detector dispersion ratio"
    )
    group.add_argument("--format", choices=FORMATS, default="csv", help="output format")
    group.add_argument("--out", type=Path, default=None, help="output file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlcn-sim",
        description="Betweenness-ordered failures in a three-layer network",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser("run", help="run one failure scenario")
    run.add_argument(
        "--mode", choices=[m.value for m in Mode], default=Mode.DEBC.value, help="failure mode"
    )
    _generation_flags(run)
    _scenario_flags(run)

    compare = commands.add_parser(
        "compare", help="run the static and dynamic variant of one failure kind"
    )
    compare.add_argument("--kind", choices=sorted(COMPARE_MODES), default="edge")
    _generation_flags(compare)
    _scenario_flags(compare)

    calibrate = commands.add_parser("calibrate", help="Monte-Carlo check of the generator")
    _generation_flags(calibrate)
    calibrate.add_argument("--samples", type=int, default=200, help="networks to draw")
    calibrate.add_argument("--out", type=Path, default=None, help="also write the report here")

    fixtures = commands.add_parser("fixtures", help="write the small test fixtures")
    fixtures.add_argument("--out", type=Path, default=Path("fixtures"), help="output directory")
    return parser


def _mlcn_config(args: argparse.Namespace) -> MlcnConfig:
    return MlcnConfig(
        n=args.nodes,
        l1_p=args.l1_p,
        l2_p=args.l2_p,
        l3_m=args.l3_m,
        gauss_max_skew=args.gauss_max_skew,
        gauss_attempts=args.gauss_attempts,
    )


def _scenario_config(args: argparse.Namespace, mode: Mode) -> ScenarioConfig:
    return ScenarioConfig(
        _mlcn_config(args),
        mode,
        failures=args.failures,
        seed=args.seed,
        replicates=args.replicates,
        l3_paths=not args.l3_tne_only,
        chaos_window=args.chaos_window,
        chaos_factor=args.chaos_factor,
    )


def run(args: argparse.Namespace, logger: logging.Logger) -> int:
    cfg = _scenario_config(args, Mode.parse(args.mode))
    series = FailureEngine(cfg, workers=args.workers, logger=logger).run()
    report = build_report(series, cfg.as_dict(), cfg.chaos_window, cfg.chaos_factor)
    out = args.out if args.out is not None else Path(f"{cfg.mode.value}.{args.format}")
    emit(report, args.format, out)
    print(summarize(report))
    logger.info("wrote %s", out)
    return EXIT_OK


def compare(args: argparse.Namespace, logger: logging.Logger) -> int:
    reports = []
    for mode in COMPARE_MODES[args.kind]:
        cfg = _scenario_config(args, mode)
        series = FailureEngine(cfg, workers=args.workers, logger=logger).run()
        averaged = mean_series(series)
        reports.append(
            build_report([averaged], cfg.as_dict(), cfg.chaos_window, cfg.chaos_factor)
        )
    out = args.out if args.out is not None else Path(f"compare-{args.kind}.{args.format}")
    emit(reports, args.format, out)
    for report in reports:
        print(summarize(report))
    return EXIT_OK


def calibrate(args: argparse.Namespace, logger: logging.Logger) -> int:
    report = Calibrator(_mlcn_config(args), seed=args.seed, logger=logger).run(args.samples)
    body = json.dumps(report.as_dict(), sort_keys=True, indent=2) + "\n"
    if args.out is not None:
        try:
            args.out.parent.mkdir(parents=True, exist_ok=True)
            args.out.write_text(body, encoding="utf-8")
        except OSError as _err:
            raise EmissionError(
                f"unable to write report ({_err.strerror})", str(args.out)
            ) from _err
    sys.stdout.write(body)
    verdict = "holds" if report.ordering_ok else "FAILED"
    print(
        f"gate pass rate {report.gate_pass_rate:.3f}, "
        f"edge ordering {verdict} in {report.ordering_rate:.1%} of samples"
    )
    return EXIT_OK


def fixtures(args: argparse.Namespace, logger: logging.Logger) -> int:
    written = write_fixtures(args.out)
    logger.info("wrote %d fixture files to %s", len(written), args.out)
    print(f"wrote {len(written)} files to {args.out}")
    return EXIT_OK


COMMANDS = {
    "run": run,
    "compare": compare,
    "calibrate": calibrate,
    "fixtures": fixtures,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger = logging.getLogger("mlcn_sim")

    try:
        return COMMANDS[args.command](args, logger)
    except ArgumentError as _err:
        logger.error("invalid arguments: %s", _err)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except GenerationError as _err:
        logger.error("generation failed: %s", _err)
        return EXIT_GENERATION
    except EmissionError as _err:
        logger.error("output failed: %s", _err)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
