from __future__ import annotations

import argparse
import logging
import sys
from typing import List

from pydantic import ValidationError

from rmcorr.config import Settings
from rmcorr.exceptions import (
    ConfigError,
    ContractError,
    DomainError,
    InvalidParameter,
    ModelConstructionError,
    NumericalError,
    UnsupportedModel,
)

from .config import ExperimentKind, load_config
from .experiments import run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmcorr", description="Spectral experiments on high-dimensional sample correlation matrices"
    )
    sub = parser.add_subparsers(dest="experiment", required=True)
    for kind in ExperimentKind.all:
        p = sub.add_parser(kind, help=f"Run the {kind} experiment")
        p.add_argument("--config", required=True, help="YAML experiment document (or a manifest.json of a run)")
        p.add_argument("--seed", type=int, default=None, help="Override the top-level seed")
        p.add_argument("--out", default=None, help="Output directory")
        p.add_argument("--reps", type=int, default=None, help="Override the number of replicates")
        p.add_argument("--threads", type=int, default=None, help="Worker threads for replicates")
        p.add_argument("--debug", action="store_true", help="Log at DEBUG level")
    return parser


def _apply_overrides(config, args):
    if config.experiment != args.experiment:
        raise ConfigError(f'Config describes a "{config.experiment}" experiment, not "{args.experiment}"')
    updates = dict(seed=args.seed, output_dir=args.out, replicates=args.reps, threads=args.threads)
    updates = {k: v for k, v in updates.items() if v is not None}
    if not updates:
        return config
    try:
        return config.model_validate(config.model_dump() | updates)
    except ValidationError as e:
        err = e.errors()[0]
        raise ConfigError(f"--{err['loc'][0]}: {err['msg']}")


def main(argv: List[str] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if (args.debug or Settings.debug) else logging.INFO
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(message)s")

    try:
        config = _apply_overrides(load_config(args.config, args.experiment), args)
        run(config)
    except ConfigError as e:
        logging.error(f"Invalid config {args.config}: {e.message}")
        return EXIT_CONFIG
    except (NumericalError, ModelConstructionError, UnsupportedModel) as e:
        logging.error(f"Run failed in {type(e).__module__}.{type(e).__name__}: {e}")
        return EXIT_NUMERIC
    except (InvalidParameter, DomainError, ContractError) as e:
        logging.error(f"Out-of-range value during the run ({type(e).__name__}): {e}")
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
