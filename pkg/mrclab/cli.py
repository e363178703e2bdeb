"""Command line: predict, verify, link and chain.

Exit codes: 0 when every verdict passes, 1 when one fails, 2 on any error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from mrclab.lib.cubic_lab import SURFACES, ExperimentConfig, run_experiment, run_first_link_experiment
from mrclab.lib.errors import ConfigError, MrcLabError
from mrclab.lib.liaison import chain_report, link_chain
from mrclab.lib.mrc import FamilyTag, family_prediction, predicted_diagram
from mrclab.lib.reports import chain_frame, render_run, write_json
from mrclab.lib.settings import LOG_FORMAT, Settings, get_settings

LOGGER = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
FAMILIES = [t.value for t in FamilyTag]


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrclab",
        description="Minimal resolutions of general points on a smooth cubic surface.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=settings.prime, help="field characteristic")
    common.add_argument("--seed", type=int, default=settings.seed, help="master seed")
    common.add_argument("--out", type=Path, help="write the JSON report here")

    target = argparse.ArgumentParser(add_help=False)
    target.add_argument("--family", choices=FAMILIES, help="point-count family m, n, o or p")
    target.add_argument("--a", type=int, help="family parameter")
    target.add_argument("--z", type=int, help="explicit number of points")

    sub.add_parser("predict", parents=[common, target], help="predicted Betti diagram")

    verify = sub.add_parser("verify", parents=[common, target], help="sample points and compare")
    verify.add_argument("--trials", type=int, help=f"number of trials (default {settings.trials})")
    verify.add_argument("--surface", choices=SURFACES, default="fermat")
    verify.add_argument("--points-file", type=Path, help="use these points instead of sampling")

    link = sub.add_parser("link", parents=[common], help="first CI link on sampled points")
    link.add_argument("--a", type=int, default=3, choices=(3, 4))
    link.add_argument("--surface", choices=SURFACES, default="fermat")
    link.add_argument("--skip-involution", action="store_true", help="do not re-link the residual")

    chain = sub.add_parser("chain", parents=[common], help="symbolic four-link chain")
    chain.add_argument("--a", type=int, default=3, help="starting parameter a_from")
    chain.add_argument("--to", type=int, help="final parameter a_to, same parity as a (default a+2)")
    return parser


def _emit(payload: dict, out: Path | None) -> None:
    if out is not None:
        path = write_json(payload, out)
        LOGGER.info("wrote %s", path)


def cmd_predict(args: argparse.Namespace) -> int:
    if args.z is not None:
        prediction = predicted_diagram(args.z)
    elif args.family is not None and args.a is not None:
        prediction = family_prediction(args.family, args.a)
    else:
        raise ConfigError("predict needs --z or --family with --a")
    print(f"z={prediction.z} r={prediction.r} ({prediction.source})")
    print(prediction.diagram)
    _emit(prediction.to_json(), args.out)
    return EXIT_PASS


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    trials = args.trials
    if trials is None:
        trials = 1 if args.points_file else settings.trials
    cfg = ExperimentConfig(
        prime=args.prime,
        seed=args.seed,
        family=args.family,
        a=args.a,
        z=args.z,
        trials=trials,
        surface=args.surface,
        output=args.out,
        points_file=args.points_file,
    ).validate()
    report = run_experiment(cfg)
    print(render_run(report))
    _emit(report.to_json(), cfg.output)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_link(args: argparse.Namespace) -> int:
    report = run_first_link_experiment(
        args.a, args.seed, args.prime, args.surface, check_involution=not args.skip_involution
    )
    print(render_run(report))
    _emit(report.to_json(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_chain(args: argparse.Namespace) -> int:
    a_to = args.to if args.to is not None else args.a + 2
    steps = link_chain(args.a, a_to)
    payload = chain_report(args.a, a_to, steps)
    if steps:
        print(chain_frame(steps).to_string(index=False))
    print(f"final: {json.dumps(payload['final'])}")
    print("PASS" if payload["passed"] else "FAIL")
    _emit(payload, args.out)
    return EXIT_PASS if payload["passed"] else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    try:
        settings = get_settings()
    except MrcLabError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
    args = build_parser(settings).parse_args(argv)
    level = logging.DEBUG if args.verbose else settings.log_level
    logging.basicConfig(level=level, format=LOG_FORMAT)
    try:
        if args.command == "predict":
            return cmd_predict(args)
        if args.command == "verify":
            return cmd_verify(args, settings)
        if args.command == "link":
            return cmd_link(args)
        return cmd_chain(args)
    except (MrcLabError, OSError) as err:
        LOGGER.debug("command failed", exc_info=True)
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ERROR
