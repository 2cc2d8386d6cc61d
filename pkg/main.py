import argparse
import logging
import os
import sys
from typing import List, Optional

from src.challenges import CHALLENGES, dump_challenge
from src.experiments import list_experiments
from src.generate_report import ReportWriter, RunConfig
from src.presets import seed_names
from src.tester import Tester

logger = logging.getLogger("PonceletParabolas")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_UNKNOWN_ID = 2
EXIT_UNWRITABLE = 3


def _family_override(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected KEY=VALUE, got {text!r}")
    values = [float(v) for v in value.split(",")]
    return key, values[0] if len(values) == 1 else values


def _add_run_options(parser: argparse.ArgumentParser):
    parser.add_argument("--samples", type=int, required=False, default=None, help="triangles per sweep")
    parser.add_argument("--anchors", type=int, required=False, default=None, help="anchors per over-all sweep")
    parser.add_argument("--tol", type=float, required=False, default=None, help="direct-locus rms threshold")
    parser.add_argument("--seed-preset", choices=seed_names(), type=str, required=False, default="scalene-A")
    parser.add_argument(
        "--family",
        type=_family_override,
        action="append",
        default=[],
        help="family parameter override, e.g. r=0.4 or perspector=1,1.2,0.9",
    )
    parser.add_argument("--out", type=str, required=False, default="reports")


def _get_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Loci of parabolas over Poncelet triangle families")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("list", help="print the experiment registry")

    run = commands.add_parser("run", help="run experiments and write reports")
    run.add_argument("ids", nargs="*", default=["all"], help="experiment ids (E1..E23) or all")
    _add_run_options(run)
    run.add_argument("--json-only", action="store_true", help="write JSON reports only")
    run.add_argument("--svg", action="store_true", help="write SVG overlays even with --json-only")

    dump = commands.add_parser("dump", help="write the raw locus CSV of an open question")
    dump.add_argument("--challenge", type=int, choices=sorted(CHALLENGES), required=True)
    _add_run_options(dump)

    return parser.parse_args(argv)


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.from_dict(
        {
            "experiments": getattr(args, "ids", None) or ["all"],
            "out_dir": args.out,
            "samples": args.samples,
            "anchors": args.anchors,
            "tol": args.tol,
            "seed_preset": args.seed_preset,
            "family": dict(args.family),
            "json_only": getattr(args, "json_only", False),
            "svg": getattr(args, "svg", False),
        }
    )


def _list() -> int:
    for entry in list_experiments():
        print(f"{entry['id']:>4}  {entry['family'] or '-':<11} {entry['title']}")
        print(f"      {entry['reference']}")
    return EXIT_OK


def _run(args: argparse.Namespace) -> int:
    try:
        run_config = _run_config(args)
        run_config.experiment_ids()
    except ValueError as e:
        logger.error(str(e))
        return EXIT_UNKNOWN_ID

    writer = ReportWriter(run_config)
    try:
        writer.prepare()
    except OSError as e:
        logger.error(f"cannot write reports: {e}")
        return EXIT_UNWRITABLE

    results, _ = Tester(run_config, writer).run_all_tests()
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def _dump(args: argparse.Namespace) -> int:
    try:
        run_config = _run_config(args)
    except ValueError as e:
        logger.error(str(e))
        return EXIT_UNKNOWN_ID

    writer = ReportWriter(run_config)
    try:
        writer.prepare()
    except OSError as e:
        logger.error(f"cannot write dump: {e}")
        return EXIT_UNWRITABLE

    description, frame = dump_challenge(args.challenge, run_config.experiment_config())
    path = writer.write_table(frame, f"challenge_{args.challenge}.csv")
    logger.info(f"{len(frame)} rows ({description}) written to {os.path.abspath(path)}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    logging.basicConfig(
        format="%(asctime)s | %(levelname)s | %(name)s | %(message)s",
        datefmt="%d/%m/%Y %H:%M:%S",
        level=logging.INFO,
    )
    args = _get_args(argv)
    if args.command == "list":
        return _list()
    if args.command == "run":
        return _run(args)
    return _dump(args)


if __name__ == "__main__":
    sys.exit(main())
