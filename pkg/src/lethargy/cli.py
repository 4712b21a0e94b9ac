"""Command-line experiment harness.

Exit codes: 0 all requested verdicts hold, 1 invalid configuration or usage,
2 certification/verification failure, 3 I/O failure.  A config file
(INI-style key=value sections) can seed every option; command-line flags win.
"""

import argparse
import configparser
import sys

from .errors import ConfigError, ContainmentError
from .report import ExperimentConfig, report_csv_text, report_json_text, run

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_CERTIFICATION = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the exit-code contract."""

    def error(self, message):
        raise ConfigError(message)


def build_parser() -> _Parser:
    parser = _Parser(
        prog="lethargy",
        description=(
            "Construct a continuous function whose best-approximation errors "
            "stay above a prescribed sequence, certify the lower bounds with "
            "alternation certificates, and cross-check with a discrete "
            "minimax solver."
        ),
    )
    parser.add_argument("--config", help="INI config file; flags override it")
    parser.add_argument("--eps", help="power:ALPHA | log | geometric:RHO | file:PATH")
    parser.add_argument("--scheme", help="poly | rational:PATH | spline")
    parser.add_argument("--n-lo", type=int, dest="n_lo", help="first level (default 0)")
    parser.add_argument("--n-hi", type=int, dest="n_hi", help="last level (default 15)")
    parser.add_argument(
        "--interval", nargs=2, type=float, metavar=("A", "B"),
        help="domain endpoints; (0 1) or 0 < A < B",
    )
    parser.add_argument("--envelope", help="identity | mollified:DELTA")
    parser.add_argument("--grid", type=int, help="solver grid size (>= 1001)")
    parser.add_argument("--tol", type=float, help="solver convergence tolerance")
    parser.add_argument("--out", help="output directory for report artifacts")
    parser.add_argument(
        "--emit-samples", type=int, dest="emit_samples",
        help="write samples.csv with this many uniform points",
    )
    parser.add_argument(
        "--emit-certs", action="store_true", default=None, dest="emit_certs",
        help="write certificates.json",
    )
    parser.add_argument(
        "--emit-envelope", type=int, dest="emit_envelope",
        help="write envelope dumps with this many points",
    )
    parser.add_argument(
        "--plots", action="store_true", default=None,
        help="render figures (bounds, function, envelope) under out/figures",
    )
    parser.add_argument("--format", choices=("csv", "json"), help="stdout report format")
    return parser


_CONFIG_SCHEMA = {
    "experiment": {
        "eps": str,
        "scheme": str,
        "n_lo": int,
        "n_hi": int,
        "interval_a": float,
        "interval_b": float,
        "grid": int,
        "tol": float,
    },
    "envelope": {"mode": str},
    "output": {
        "out": str,
        "emit_samples": int,
        "emit_certs": bool,
        "emit_envelope": int,
        "plots": bool,
        "format": str,
    },
}


def load_config_file(path) -> dict:
    """Flat dict of typed values from an INI file, validated by section."""
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path}")
    values = {}
    for section in parser.sections():
        if section not in _CONFIG_SCHEMA:
            raise ConfigError(f"unknown config section [{section}]")
        schema = _CONFIG_SCHEMA[section]
        for key, raw in parser.items(section):
            if key not in schema:
                raise ConfigError(f"unknown config key {key!r} in [{section}]")
            kind = schema[key]
            try:
                if kind is bool:
                    values[key] = parser.getboolean(section, key)
                else:
                    values[key] = kind(raw)
            except ValueError as exc:
                raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc
    return values


def assemble_config(args) -> ExperimentConfig:
    config = ExperimentConfig()
    if args.config:
        file_values = load_config_file(args.config)
        if "interval_a" in file_values or "interval_b" in file_values:
            a = file_values.pop("interval_a", config.interval[0])
            b = file_values.pop("interval_b", config.interval[1])
            config.interval = (float(a), float(b))
        if "mode" in file_values:
            config.envelope = file_values.pop("mode")
        for key, value in file_values.items():
            setattr(config, key, value)
    for key in (
        "eps", "scheme", "n_lo", "n_hi", "envelope", "grid", "tol", "out",
        "emit_samples", "emit_certs", "emit_envelope", "plots", "format",
    ):
        value = getattr(args, key)
        if value is not None:
            setattr(config, key, value)
    if args.interval is not None:
        config.interval = (args.interval[0], args.interval[1])
    config.validate()
    return config


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = assemble_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        report = run(config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ContainmentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO

    if config.format == "json":
        sys.stdout.write(report_json_text(report))
    else:
        sys.stdout.write(report_csv_text(report))
    if not report.all_passed:
        failing = ", ".join(str(n) for n in report.failing_levels())
        print(f"certification failed at level(s): {failing}", file=sys.stderr)
        return EXIT_CERTIFICATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
