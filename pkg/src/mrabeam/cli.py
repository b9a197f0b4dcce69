"""Command-line front end: config parsing, sweep execution, CSV artifacts.

Config files are plain ``key = value`` lines with ``#`` comments and
comma-separated lists. Every key has a documented default, so an empty (or
absent) file runs the default four-antenna, four-user setup.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from dataclasses import dataclass, field, replace
from pathlib import Path

from .harness import (
    AXES,
    ExperimentConfig,
    SweepResult,
    aggregate,
    run_sweep,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_VALIDATION = 3

CSV_HEADER = "scheme,axis,axis_value,trial,sum_rate_bps_hz,iterations,converged"


class ConfigError(Exception):
    """Base class for configuration failures."""


class ParseError(ConfigError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownKey(ConfigError):
    def __init__(self, line_no: int, key: str):
        super().__init__(f"line {line_no}: unknown key {key!r}")
        self.key = key


class RangeError(ConfigError):
    pass


@dataclass
class CliConfig:
    """Experiment settings plus the CLI-only fields."""

    experiment: ExperimentConfig = field(default_factory=ExperimentConfig)
    axes: tuple[str, ...] = AXES
    output_path: Path | None = None
    command: str | None = None


_INT_KEYS = ("n_x", "n_z", "k_users", "l_paths", "trials", "seed")
_FLOAT_KEYS = ("snr_db_fixed", "r_fixed", "psi_max_fixed")
_LIST_KEYS = ("snr_db_list", "r_list", "psi_max_list")
KNOWN_KEYS = frozenset(_INT_KEYS + _FLOAT_KEYS + _LIST_KEYS + ("axes",))


def _parse_int(raw: str, line_no: int, key: str) -> int:
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(line_no, f"{key} expects an integer, got {raw!r}") from exc


def _parse_float(raw: str, line_no: int, key: str) -> float:
    try:
        return float(raw)
    except ValueError as exc:
        raise ParseError(line_no, f"{key} expects a number, got {raw!r}") from exc


def _parse_float_list(raw: str, line_no: int, key: str) -> tuple[float, ...]:
    items = [piece.strip() for piece in raw.split(",") if piece.strip()]
    if not items:
        raise RangeError(f"line {line_no}: {key} must list at least one value")
    return tuple(_parse_float(piece, line_no, key) for piece in items)


def parse_config(text: str) -> CliConfig:
    """Parse ``key = value`` config text into a fully-defaulted CliConfig."""
    overrides: dict[str, object] = {}
    axes: tuple[str, ...] = AXES
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(line_no, f"expected 'key = value', got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in KNOWN_KEYS:
            raise UnknownKey(line_no, key)
        if key == "axes":
            names = tuple(piece.strip() for piece in raw.split(",") if piece.strip())
            bad = [name for name in names if name not in AXES]
            if bad or not names:
                raise RangeError(
                    f"line {line_no}: axes must be a subset of {AXES}, got {raw!r}"
                )
            axes = names
        elif key in _INT_KEYS:
            overrides[key] = _parse_int(raw, line_no, key)
        elif key in _FLOAT_KEYS:
            overrides[key] = _parse_float(raw, line_no, key)
        else:
            overrides[key] = _parse_float_list(raw, line_no, key)
    try:
        experiment = ExperimentConfig(**overrides)
    except ValueError as exc:
        raise RangeError(str(exc)) from exc
    return CliConfig(experiment=experiment, axes=axes)


def load_config(path: str | os.PathLike | None) -> CliConfig:
    if path is None:
        return CliConfig()
    return parse_config(Path(path).read_text())


def format_float(value: float) -> str:
    return f"{value:.9g}"


def sweep_csv_text(result: SweepResult) -> str:
    lines = [CSV_HEADER]
    for row in result.rows:
        lines.append(
            ",".join(
                (
                    row.scheme,
                    result.axis,
                    format_float(row.axis_value),
                    str(row.trial),
                    format_float(row.sum_rate),
                    str(row.iterations),
                    "1" if row.converged else "0",
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_atomic(path: Path, text: str) -> None:
    """Write via a temp file plus rename so failures never leave partial output."""
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        mode="w", dir=path.parent, suffix=".tmp", delete=False, newline="\n"
    )
    try:
        with handle:
            handle.write(text)
        os.replace(handle.name, path)
    except BaseException:
        try:
            os.unlink(handle.name)
        except OSError:
            pass
        raise


def cmd_sweep(config: CliConfig) -> int:
    out_dir = Path(config.output_path or ".")
    try:
        for axis in config.axes:
            result = run_sweep(config.experiment, axis)
            write_atomic(out_dir / f"sweep_{axis}.csv", sweep_csv_text(result))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_run(config: CliConfig) -> int:
    """Single fixed-point run: all four schemes at the configured fixed
    (SNR, r, psi_max), reported as a one-value SNR sweep."""
    experiment = replace(
        config.experiment, snr_db_list=(config.experiment.snr_db_fixed,)
    )
    try:
        result = run_sweep(experiment, "snr")
        out_dir = Path(config.output_path or ".")
        write_atomic(out_dir / "run.csv", sweep_csv_text(result))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"{'scheme':<8}{'mean rate':>14}{'std error':>14}{'trials':>8}")
    for agg in aggregate(result):
        print(
            f"{agg.scheme:<8}{agg.mean_rate:>14.6f}{agg.std_error:>14.6f}"
            f"{agg.n_trials:>8d}"
        )
    return EXIT_OK


def cmd_validate() -> int:
    from ._selftest import run_all_checks

    return EXIT_OK if run_all_checks() else EXIT_VALIDATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mrabeam",
        description=(
            "Optimize movable/rotatable antenna arrays for the zero-forcing "
            "downlink sum rate and run Monte-Carlo sweeps."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("run", "single fixed-point run over the four schemes"),
        ("sweep", "write one CSV per configured sweep axis"),
        ("validate", "run the fast invariant checks"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", help="path to a key=value config file")
        cmd.add_argument("--out", help="output directory for CSV files")
        cmd.add_argument("--seed", type=int, help="override the config seed")
        cmd.add_argument("--trials", type=int, help="override the config trial count")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "validate":
        return cmd_validate()
    try:
        config = load_config(args.config)
        overrides = {}
        if args.seed is not None:
            overrides["seed"] = args.seed
        if args.trials is not None:
            overrides["trials"] = args.trials
        if overrides:
            config.experiment = replace(config.experiment, **overrides)
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    config.output_path = Path(args.out) if args.out else None
    config.command = args.command
    if args.command == "sweep":
        return cmd_sweep(config)
    return cmd_run(config)


if __name__ == "__main__":
    sys.exit(main())
