"""Command line: ``coopsim run | sweep | validate``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Sequence

from coopsim.config import SimConfig
from coopsim.engine import run_simulation
from coopsim.harness import SweepSpec, resolve_jobs, run_sweep, write_outputs

# flag -> SimConfig field
_OVERRIDES = {
    "n": int,
    "k": int,
    "T": int,
    "gamma0": float,
    "c0": float,
    "s0": float,
    "consumption": float,
    "alpha": float,
    "beta": float,
    "max_term": int,
    "d0": float,
}


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _add_config_flags(p: argparse.ArgumentParser, *, grid: bool = False) -> None:
    p.add_argument("--config", metavar="PATH", help="flat JSON object of SimConfig fields")
    for name, kind in _OVERRIDES.items():
        if grid and name in ("alpha", "beta"):
            continue
        p.add_argument(f"--{name.replace('_', '-')}", dest=name, type=kind, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coopsim", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="one simulation, written as a time series")
    _add_config_flags(run)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--out", metavar="DIR", default="out")

    sweep = sub.add_parser("sweep", help="replicated runs over an alpha x beta grid")
    _add_config_flags(sweep, grid=True)
    sweep.add_argument("--alphas", type=_float_list, default=[0.2, 0.4, 0.6, 0.8, 1.0])
    sweep.add_argument("--betas", type=_float_list, default=[round(0.1 * i, 1) for i in range(1, 10)])
    sweep.add_argument("--reps", type=int, default=800)
    sweep.add_argument("--master-seed", type=int, default=0)
    sweep.add_argument("--jobs", type=int, default=None, help="worker processes (env COOPSIM_JOBS)")
    sweep.add_argument("--out", metavar="DIR", default="out")

    validate = sub.add_parser("validate", help="print the fully resolved config as JSON")
    _add_config_flags(validate)
    validate.add_argument("--seed", type=int, default=None)
    return parser


def resolve_config(args: argparse.Namespace) -> SimConfig:
    base = SimConfig.load(args.config) if args.config else SimConfig()
    overrides = {name: getattr(args, name, None) for name in _OVERRIDES}
    overrides["seed"] = getattr(args, "seed", None)
    return base.with_overrides(**overrides)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        config = resolve_config(args)
        if args.command == "validate":
            print(json.dumps(config.to_dict(), indent=2))
        elif args.command == "run":
            report = run_simulation(config)
            for path in write_outputs(report, args.out):
                print(path)
        else:
            spec = SweepSpec(
                alphas=tuple(args.alphas),
                betas=tuple(args.betas),
                replications=args.reps,
                base_config=config,
                master_seed=args.master_seed,
                jobs=resolve_jobs(args.jobs),
            )
            for path in write_outputs(run_sweep(spec), args.out):
                print(path)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"coopsim: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
