"""Command line interface.

    magnon-epr <command> --config run.yaml [--out DIR] [--threads N]
                         [--format csv,json] [--seed N]

Commands: dispersion | entanglement | epr-path | experiment | validate.
Exit codes: 0 success, 1 config error (including usage errors), 2
runtime/model error (e.g. every k-point unstable).
"""

from __future__ import annotations

import argparse
import os
import sys

from .config import ConfigError, load_config
from . import sweeps

THREADS_ENV = "MAGNON_EPR_THREADS"

_COMMANDS = {
    "dispersion": "bare and hybridized dispersions along the k-path",
    "entanglement": "entanglement entropies and Delta0 along the k-path",
    "epr-path": "ground-state EPR variance and regime along the k-path",
    "experiment": "simulated cavity measurement protocol at each k-point",
    "validate": "check a config and report stability/truncation/runtime",
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="magnon-epr",
        description="Magnon-magnon entanglement and EPR readout sweeps.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in _COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, metavar="PATH",
                       help="YAML run configuration")
        p.add_argument("--out", metavar="DIR",
                       help="output directory (overrides output.directory)")
        p.add_argument("--threads", type=int, metavar="N",
                       help=f"worker count (default: ${THREADS_ENV} or config)")
        p.add_argument("--format", dest="formats", metavar="csv,json",
                       help="output formats (overrides output.formats)")
        p.add_argument("--seed", type=int, metavar="N",
                       help="master seed (overrides acquisition.seed)")
        if name == "entanglement":
            p.add_argument("--bits", action="store_true",
                           help="report entropies in bits instead of nats")
    return parser


def _apply_overrides(cfg, args):
    if args.out is not None:
        cfg.output.directory = args.out
    if args.formats is not None:
        formats = tuple(f.strip() for f in args.formats.split(",") if f.strip())
        if not formats or any(f not in ("csv", "json") for f in formats):
            raise ConfigError(f"--format: expected a subset of csv,json, "
                              f"got {args.formats!r}")
        cfg.output.formats = formats
    if args.seed is not None:
        cfg.acquisition.seed = args.seed
    if args.threads is not None:
        if args.threads < 1:
            raise ConfigError(f"--threads: must be >= 1, got {args.threads}")
        cfg.threads = args.threads
    elif os.environ.get(THREADS_ENV):
        try:
            cfg.threads = int(os.environ[THREADS_ENV])
        except ValueError as exc:
            raise ConfigError(f"{THREADS_ENV}: must be an integer, "
                              f"got {os.environ[THREADS_ENV]!r}") from exc
        if cfg.threads < 1:
            raise ConfigError(f"{THREADS_ENV}: must be >= 1, got {cfg.threads}")
    return cfg


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are config errors here
        return 0 if exc.code == 0 else 1

    try:
        cfg = _apply_overrides(load_config(args.config), args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "validate":
            return sweeps.run_validate(cfg)
        if args.command == "dispersion":
            paths = sweeps.run_dispersion(cfg)
        elif args.command == "entanglement":
            paths = sweeps.run_entanglement(cfg, bits=args.bits)
        elif args.command == "epr-path":
            paths = sweeps.run_epr_path(cfg)
        else:
            paths = sweeps.run_experiment(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # model/runtime failures -> exit 2
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
