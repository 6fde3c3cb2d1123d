"""Command-line front end: parse a config, run one experiment, emit a report.

Exit status is 0 exactly when every assertion in the run passed.
"""

from __future__ import annotations

import argparse
import json
import sys

from .experiments import EXPERIMENTS, ExperimentConfig, run_experiment

__all__ = ["build_parser", "main"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyslice",
        description="Exact slice-diameter experiments on polyhedral norm balls.",
    )
    parser.add_argument("experiment", nargs="?", choices=EXPERIMENTS,
                        help="which sweep to run (omit only with --config)")
    parser.add_argument("--config", metavar="FILE",
                        help="JSON file mirroring ExperimentConfig; flags override its entries")
    parser.add_argument("--n", type=int, dest="N", metavar="INT",
                        help="single N instead of the default grid")
    parser.add_argument("--r", metavar="P/Q", help="lifting weight r > 0")
    parser.add_argument("--delta", metavar="P/Q", help="slice depth for thm1")
    parser.add_argument("--epsilon", metavar="P/Q", help="target diameter bound")
    parser.add_argument("--epsilons", metavar="P/Q,...",
                        help="strictly decreasing list for profiles")
    parser.add_argument("--omega-rule", dest="omega_rule", metavar="RULE",
                        help="'default' or 'list:w2,w3,...' weights")
    parser.add_argument("--alpha", metavar="P/Q", help="slice depth for prop2")
    parser.add_argument("--g", metavar="SPEC",
                        help="functional for prop2: e1, e1+e2, random, or comma-separated rationals")
    parser.add_argument("--trials", type=int, metavar="INT",
                        help="random vectors per sandwich case")
    parser.add_argument("--space", dest="space_path", metavar="FILE",
                        help="space description JSON (kind+params or explicit generators)")
    parser.add_argument("--seed", type=int, metavar="INT", help="RNG seed")
    parser.add_argument("--format", choices=("csv", "json"), help="report format")
    parser.add_argument("--output", dest="output_path", metavar="PATH",
                        help="write the report here instead of stdout")
    return parser


def _merge_config(args: argparse.Namespace) -> ExperimentConfig:
    data = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError("config file must hold a JSON object")
    if args.experiment is not None:
        data["experiment"] = args.experiment
    if "experiment" not in data:
        raise ValueError("no experiment named on the command line or in the config")
    for name in ("N", "r", "delta", "epsilon", "omega_rule", "alpha", "g",
                 "trials", "seed", "space_path", "format", "output_path"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    if args.epsilons is not None:
        data["epsilons"] = [part.strip() for part in args.epsilons.split(",")]
    return ExperimentConfig.from_dict(data)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _merge_config(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        parser.error(str(exc))
    report = run_experiment(config)
    text = report.render()
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.all_pass else 1


if __name__ == "__main__":
    sys.exit(main(argv=sys.argv[1:]))
