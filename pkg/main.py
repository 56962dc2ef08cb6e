#!/usr/bin/env python3
import argparse
import sys
from typing import List, Optional

from common.errors import ConfigError, InvariantViolation, OutputError, StateParseError
from common.utils import ColoredText, configure_logging, get_logger
from experiments.config import EXPERIMENTS, resolve_config
from experiments.figures import FIGURES
from experiments.report import format_report, inspect_state, load_inspection_state

logger = get_logger("cli")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_INVARIANT = 3


def build_parser() -> argparse.ArgumentParser:
    """Command-line interface: one positional experiment plus shared options."""
    parser = argparse.ArgumentParser(
        prog="qlab",
        description="Potential discord experiments and single-state inspection.",
    )
    parser.add_argument("experiment", choices=EXPERIMENTS)
    parser.add_argument("--step", type=float, help="parameter grid step in (0, 1]")
    parser.add_argument("--samples", type=int, help="random states for fig3/fig6")
    parser.add_argument("--seed", type=int, help="seed for sampling and restarts")
    parser.add_argument("--d", dest="ancilla_dim", type=int, help="ancilla dimension")
    parser.add_argument("--restarts", type=int, help="optimizer restarts per search")
    parser.add_argument("--out", dest="out_dir", help="output directory")
    parser.add_argument("--svg", action="store_true", default=None, help="also write SVG plots")
    parser.add_argument("--jobs", type=int, help="worker processes")
    parser.add_argument(
        "--full", action="store_true", default=None, help="use full-scale sample counts"
    )
    parser.add_argument("--config", help="YAML config file")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--state-file", help="state to inspect")
    parser.add_argument("--family", help="family tag to inspect (cc, werner, bell, ...)")
    parser.add_argument("--param", type=float, help="family parameter to inspect")
    return parser


def run(args: argparse.Namespace) -> int:
    cli = {
        "step": args.step,
        "samples": args.samples,
        "seed": args.seed,
        "ancilla_dim": args.ancilla_dim,
        "restarts": args.restarts,
        "out_dir": args.out_dir,
        "svg": args.svg,
        "jobs": args.jobs,
        "full": args.full,
    }
    cfg = resolve_config(args.experiment, cli, args.config)

    if cfg.experiment == "inspect":
        rho = load_inspection_state(args.state_file, args.family, args.param)
        print(format_report(inspect_state(rho, cfg.ancilla_dim, cfg.optimizer)))
        return EXIT_OK

    if cfg.full:
        logger.warning(
            "--full runs %d samples per random ensemble; expect hours to days of runtime",
            cfg.samples,
        )
    print(ColoredText.cyan(f"=== Running {cfg.experiment} ==="))
    result = FIGURES[cfg.experiment](cfg)
    print(ColoredText.green(f"{len(result.rows)} rows written to {result.csv_path}"))
    if result.svg_path is not None:
        print(ColoredText.green(f"plot written to {result.svg_path}"))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    configure_logging(args.verbose)

    try:
        return run(args)
    except (ConfigError, StateParseError, OutputError) as e:
        print(ColoredText.red(f"Configuration error: {e}"), file=sys.stderr)
        return EXIT_CONFIG
    except InvariantViolation as e:
        print(ColoredText.red(f"Numerical invariant violated: {e}"), file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print(ColoredText.yellow("\n\nRun stopped by user."))
        sys.exit(130)
