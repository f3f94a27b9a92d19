"""Command-line front end: figure presets, custom sweeps, CSV output.

Configuration precedence is preset < config file < command-line flags.
Every run writes the result table plus a `<output>.meta` sidecar with the
full effective configuration, which is sufficient to reproduce the CSV
byte for byte.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .montecarlo import SweepSpec, compare_analytic, figure_preset, run_sweep
from .strategies import StrategyKind

STRATEGY_NAMES = {
    "conventional": StrategyKind.CONVENTIONAL,
    "switched": StrategyKind.SWITCHED_ARRAY,
    "random-path": StrategyKind.RANDOM_PATH,
    "joint": StrategyKind.JOINT_PATH_ANTENNA,
}

AXIS_NAMES = {
    "theta-e": "theta_e_deg",
    "rho-e": "rho_e_db",
    "antennas": "n_antennas",
    "paths": "n_paths",
}

DEFAULT_AXIS_VALUES = {
    "theta_e_deg": tuple(float(t) for t in range(1, 181)),
    "rho_e_db": tuple(float(r) for r in np.arange(0.0, 20.01, 2.5)),
    "n_antennas": (16.0, 32.0, 64.0),
    "n_paths": (4.0, 8.0, 12.0),
}


class CliError(Exception):
    """User-facing configuration error; message names the violated constraint."""


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--antennas", type=int, help="transmit antenna count N")
    p.add_argument("--paths", type=int, help="channel path count L")
    p.add_argument("--m-main", type=int, help="main-path antenna subset size M")
    p.add_argument("--ls", type=int, help="secondary-path candidate pool size L_S")
    p.add_argument("--rho-r-db", type=float, help="receiver gain-to-noise ratio (dB)")
    p.add_argument("--rho-e-db", type=float, help="eavesdropper gain-to-noise ratio (dB)")
    p.add_argument("--theta-r", type=float, help="receiver strongest-path angle (deg)")
    p.add_argument("--theta-e", type=float, help="eavesdropper angle (deg)")
    p.add_argument("--symbols", type=int, help="symbols per sweep point")
    p.add_argument("--ensemble", type=int, help="channel realizations per point")
    p.add_argument("--seed", type=int, help="base random seed")
    p.add_argument(
        "--strategies",
        help="comma-separated strategy list: " + ",".join(STRATEGY_NAMES) + " or 'all'",
    )
    p.add_argument("--spacing", type=float, help="element spacing d/lambda")
    p.add_argument("--config", help="flat key=value config file ('#' comments)")
    p.add_argument("--output", "-o", default="results.csv", help="output CSV path")
    p.add_argument(
        "--analytic",
        action="store_true",
        help="also write closed-form rates to <output stem>_analytic.csv",
    )
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mmwsec",
        description="Secrecy-rate sweeps for randomized mmWave beamforming strategies",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fig = sub.add_parser("figure", help="run a preset benchmark figure sweep")
    fig.add_argument("fig_id", type=int, choices=(1, 2, 3, 4), metavar="1-4")
    _add_common_flags(fig)

    sw = sub.add_parser("sweep", help="run a custom parameter sweep")
    sw.add_argument(
        "--axis",
        choices=sorted(AXIS_NAMES),
        default="rho-e",
        help="sweep axis (default rho-e)",
    )
    sw.add_argument("--values", help="comma-separated axis values (defaults per axis)")
    _add_common_flags(sw)
    return parser


def parse_strategies(text: str) -> tuple[StrategyKind, ...]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise CliError("strategy list must be nonempty")
    if names == ["all"]:
        return tuple(STRATEGY_NAMES.values())
    out = []
    for name in names:
        if name not in STRATEGY_NAMES:
            raise CliError(
                f"unknown strategy {name!r}; choose from {sorted(STRATEGY_NAMES)}"
            )
        out.append(STRATEGY_NAMES[name])
    return tuple(out)


def load_config_file(path: str) -> dict[str, str]:
    """Flat key=value lines; blank lines and '#' comments ignored."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read config file {path}: {e}") from e
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, val = (part.strip() for part in line.split("=", 1))
        values[key] = val
    return values

# config-file key -> (SweepSpec-ish field, parser)
_CONFIG_KEYS = {
    "antennas": ("n_antennas", int),
    "paths": ("n_paths", int),
    "m_main": ("m_main", int),
    "ls": ("l_s", int),
    "rho_r_db": ("rho_r_db", float),
    "rho_e_db": ("rho_e_db", float),
    "theta_r": ("theta_r_deg", float),
    "theta_e": ("theta_e_deg", float),
    "symbols": ("symbols_per_point", int),
    "ensemble": ("ensemble", int),
    "seed": ("base_seed", int),
    "spacing": ("spacing_over_wavelength", float),
    "strategies": ("strategies", parse_strategies),
}


def apply_config_file(spec: SweepSpec, path: str) -> SweepSpec:
    updates = {}
    for key, val in load_config_file(path).items():
        if key not in _CONFIG_KEYS:
            raise CliError(f"unknown config key {key!r}; valid keys: {sorted(_CONFIG_KEYS)}")
        field, conv = _CONFIG_KEYS[key]
        try:
            updates[field] = conv(val)
        except ValueError as e:
            raise CliError(f"config key {key}: {e}") from e
    return replace(spec, **updates) if updates else spec


def apply_flags(spec: SweepSpec, args: argparse.Namespace) -> SweepSpec:
    updates = {}
    pairs = [
        ("antennas", "n_antennas"),
        ("paths", "n_paths"),
        ("m_main", "m_main"),
        ("ls", "l_s"),
        ("rho_r_db", "rho_r_db"),
        ("rho_e_db", "rho_e_db"),
        ("theta_r", "theta_r_deg"),
        ("theta_e", "theta_e_deg"),
        ("symbols", "symbols_per_point"),
        ("ensemble", "ensemble"),
        ("seed", "base_seed"),
        ("spacing", "spacing_over_wavelength"),
    ]
    for flag, field in pairs:
        val = getattr(args, flag)
        if val is not None:
            updates[field] = val
    if args.strategies is not None:
        updates["strategies"] = parse_strategies(args.strategies)
    return replace(spec, **updates) if updates else spec


def validate_spec(spec: SweepSpec):
    for strat in spec.strategies:
        if strat is StrategyKind.JOINT_PATH_ANTENNA and spec.axis != "n_paths":
            if spec.n_paths < 2:
                raise CliError(
                    "joint path-and-antenna selection requires paths >= 2 "
                    f"(got paths={spec.n_paths})"
                )
    if spec.m_main is not None and spec.axis != "n_antennas":
        if not 1 <= spec.m_main <= spec.n_antennas:
            raise CliError(
                f"m-main must lie in [1, antennas]; got m-main={spec.m_main}, "
                f"antennas={spec.n_antennas}"
            )
    if spec.axis != "n_paths" and not 1 <= spec.l_s:
        raise CliError(f"ls must be >= 1, got {spec.l_s}")
    if not 1 <= spec.theta_r_deg <= 180:
        raise CliError(f"theta-r must lie in [1, 180], got {spec.theta_r_deg}")
    if spec.axis != "theta_e_deg" and not 1 <= spec.theta_e_deg <= 180:
        raise CliError(f"theta-e must lie in [1, 180], got {spec.theta_e_deg}")


def spec_metadata(spec: SweepSpec) -> dict[str, str]:
    return {
        "tool": "mmwsec",
        "version": __version__,
        "strategies": ",".join(s.value for s in spec.strategies),
        "axis": spec.axis,
        "axis_values": ",".join(f"{v:g}" for v in spec.axis_values),
        "n_antennas": str(spec.n_antennas),
        "n_paths": str(spec.n_paths),
        "m_main": "auto" if spec.m_main is None else str(spec.m_main),
        "l_s": str(spec.l_s),
        "rho_r_db": f"{spec.rho_r_db:g}",
        "rho_e_db": f"{spec.rho_e_db:g}",
        "theta_r_deg": f"{spec.theta_r_deg:g}",
        "theta_e_deg": f"{spec.theta_e_deg:g}",
        "spacing_over_wavelength": f"{spec.spacing_over_wavelength:g}",
        "symbols_per_point": str(spec.symbols_per_point),
        "ensemble": str(spec.ensemble),
        "base_seed": str(spec.base_seed),
    }


def write_outputs(table, spec: SweepSpec, output: str, verbose: bool):
    ok_rows = [r for r in table.rows if r.status == "ok"]
    if not ok_rows:
        raise CliError("no applicable (strategy, axis value) combinations in this run")
    out = Path(output)
    try:
        out.write_text(table.to_csv())
        meta_lines = [f"{k}={v}" for k, v in spec_metadata(spec).items()]
        Path(str(out) + ".meta").write_text("\n".join(meta_lines) + "\n")
    except OSError as e:
        raise CliError(f"cannot write output {output}: {e}") from e
    if verbose:
        print(f"wrote {out} ({len(table.rows)} rows)", file=sys.stderr)


def _run_one(spec: SweepSpec, args: argparse.Namespace, output: str):
    table = run_sweep(spec)
    write_outputs(table, spec, output, args.verbose)
    if args.analytic:
        analytic_strats = tuple(
            s
            for s in spec.strategies
            if s in (StrategyKind.RANDOM_PATH, StrategyKind.JOINT_PATH_ANTENNA)
        )
        if not analytic_strats:
            raise CliError(
                "--analytic requires random-path or joint among the strategies"
            )
        aspec = replace(spec, strategies=analytic_strats)
        atable = compare_analytic(aspec)
        stem = Path(output)
        apath = stem.with_name(stem.stem + "_analytic" + stem.suffix)
        write_outputs(atable, aspec, str(apath), args.verbose)


def _curve_outputs(spec: SweepSpec, output: str):
    """Expand a multi-curve preset into (spec, path) pairs, one per curve value."""
    if not spec.curve_param:
        return [(spec, output)]
    out = Path(output)
    runs = []
    for v in spec.curve_values:
        sub = replace(spec, **{spec.curve_param: int(v)}, curve_param=None, curve_values=())
        tag = {"n_paths": "L", "n_antennas": "N"}.get(spec.curve_param, spec.curve_param)
        path = out.with_name(f"{out.stem}_{tag}{int(v)}{out.suffix}")
        runs.append((sub, str(path)))
    return runs


def run(args: argparse.Namespace) -> int:
    if args.command == "figure":
        spec = figure_preset(args.fig_id)
    else:
        axis = AXIS_NAMES[args.axis]
        if args.values is not None:
            try:
                values = tuple(float(v) for v in args.values.split(",") if v.strip())
            except ValueError as e:
                raise CliError(f"--values: {e}") from e
            if not values:
                raise CliError("--values must contain at least one number")
        else:
            values = DEFAULT_AXIS_VALUES[axis]
        spec = SweepSpec(
            strategies=tuple(STRATEGY_NAMES.values()),
            axis=axis,
            axis_values=values,
        )
    if args.config:
        spec = apply_config_file(spec, args.config)
    spec = apply_flags(spec, args)
    validate_spec(spec)
    for sub_spec, path in _curve_outputs(spec, args.output):
        validate_spec(sub_spec)
        _run_one(sub_spec, args, path)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
