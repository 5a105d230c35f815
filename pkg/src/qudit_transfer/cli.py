"""Command-line front end.

    qudit-transfer transfer      --bus-length 3 --spin 10 --dim 3 --g-over-j 0.1 --time optimal
    qudit-transfer avg-fidelity  --axis spin --values 1:10:10 --method exact
    qudit-transfer entangle      --spins 1,2,3,5,10
    qudit-transfer thermal       --bus-length 1 --spins 3,5 --temps 0.5:40:10 --fields 4,6,8
    qudit-transfer modes         --bus-length 5 --spin 2

Energies are given relative to J (J = 1 internally); thermal fields are in
units of S*J unless ``--field-unit j``.  Grids are either comma lists
(``1,2,5``) or ``start:stop:count[:log]``.  A JSON file passed with
``--config`` supplies defaults for any option (keys are the option names
with underscores); explicit flags win.

Exit codes: 0 ok, 2 invalid configuration, 3 unsupported configuration
(optimal time for even N), 4 thermal truncation failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import ChainConfig, ConfigurationError, DomainError, TruncationError, UnsupportedConfigurationError
from .effective import mode_spectrum, optimal_time
from .entanglement import distribution_efficiency
from .haar import average_fidelity_exact, average_fidelity_mc, sample_haar
from .thermal import thermal_average_fidelity
from .transfer import receiver_density

EXIT_OK, EXIT_INVALID, EXIT_UNSUPPORTED, EXIT_TRUNCATION = 0, 2, 3, 4

DEFAULTS: dict[str, Any] = {
    "bus_length": 3,
    "spin": 10.0,
    "dim": 3,
    "g_over_j": 0.1,
    "h_over_j": 0.0,
    "time": "optimal",
    "state": "uniform",
    "axis": "spin",
    "values": None,
    "method": "exact",
    "samples": 10000,
    "seed": 0,
    "spins": None,
    "temps": "0.5:40:10",
    "fields": "4",
    "field_unit": "sj",
    "n_cut": None,
    "tol": 1e-8,
    "format": "csv",
    "output": None,
}


@dataclass
class RunConfig:
    command: str
    params: dict[str, Any] = field(default_factory=dict)


def parse_grid(spec) -> list[float]:
    """``"1,2,3"``, ``"0:1:5"`` or ``"0.01:1:5:log"``; numbers pass through."""
    if isinstance(spec, (int, float)):
        return [float(spec)]
    if isinstance(spec, (list, tuple)):
        return [float(x) for x in spec]
    text = str(spec).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ConfigurationError(f"bad grid {spec!r}; use start:stop:count[:log]")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        scale = parts[3] if len(parts) == 4 else "linear"
        if count < 1:
            raise ConfigurationError("grid count must be >= 1")
        if scale == "log":
            if start <= 0 or stop <= 0:
                raise ConfigurationError("log grids need positive bounds")
            return list(np.geomspace(start, stop, count))
        if scale not in ("linear", "lin"):
            raise ConfigurationError(f"unknown grid scale {scale!r}")
        return list(np.linspace(start, stop, count))
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ConfigurationError(f"bad grid {spec!r}") from None
    if not values:
        raise ConfigurationError("empty grid")
    return values


def twice_spin(spin: float) -> int:
    twice = 2 * float(spin)
    if abs(twice - round(twice)) > 1e-9 or twice < 1:
        raise ConfigurationError(f"--spin must be a positive multiple of 0.5, got {spin}")
    return int(round(twice))


def chain(p: dict[str, Any], spin=None, g=None, h=None) -> ChainConfig:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return ChainConfig(
            bus_length=int(p["bus_length"]),
            twice_spin=twice_spin(p["spin"] if spin is None else spin),
            qudit_dim=int(p["dim"]),
            coupling_j=1.0,
            coupling_g=float(p["g_over_j"] if g is None else g),
            field_h=float(p["h_over_j"] if h is None else h),
        )


def parse_state(spec: str, d: int, seed) -> np.ndarray:
    if spec == "uniform":
        return np.full(d, 1 / np.sqrt(d), dtype=complex)
    if spec.startswith("basis:"):
        k = int(spec.split(":", 1)[1])
        if not 0 <= k < d:
            raise ConfigurationError(f"basis index {k} outside [0, {d})")
        alpha = np.zeros(d, dtype=complex)
        alpha[k] = 1
        return alpha
    if spec == "haar":
        return sample_haar(d, seed)
    raise ConfigurationError(f"unknown --state {spec!r}; use uniform, basis:K or haar")


def _times(p, cfg: ChainConfig) -> list[float]:
    if str(p["time"]) == "optimal":
        return [optimal_time(cfg)]
    times = parse_grid(p["time"])
    if any(t < 0 for t in times):
        raise ConfigurationError("times must be non-negative")
    return times


def cmd_transfer(rc: RunConfig) -> list[dict[str, Any]]:
    p = rc.params
    cfg = chain(p)
    alpha = parse_state(p["state"], cfg.qudit_dim, p["seed"])
    odd = cfg.bus_length % 2 == 1
    rows = []
    for tau in _times(p, cfg):
        raw = receiver_density(cfg, alpha, tau, apply_phase_gate=False, apply_field_phase=False)
        fixed = receiver_density(cfg, alpha, tau, apply_phase_gate=odd, apply_field_phase=True)
        rows.append({"tau": tau, "fidelity": fixed.fidelity(alpha), "fidelity_uncorrected": raw.fidelity(alpha)})
    return rows


def cmd_avg_fidelity(rc: RunConfig) -> list[dict[str, Any]]:
    p = rc.params
    axis = p["axis"]
    if axis not in ("spin", "g-over-j", "g_over_j"):
        raise ConfigurationError("--axis must be spin or g-over-j")
    values = parse_grid(p["values"] if p["values"] is not None else (p["spin"] if axis == "spin" else p["g_over_j"]))
    rows = []
    for v in values:
        cfg = chain(p, spin=v) if axis == "spin" else chain(p, g=v)
        if str(p["time"]) == "optimal":
            tau = optimal_time(cfg)
        else:
            tau = parse_grid(p["time"])[0]
        if p["method"] == "exact":
            mean, err = average_fidelity_exact(cfg, tau, apply_phase_gate=cfg.bus_length % 2 == 1), 0.0
        elif p["method"] == "mc":
            mean, err = average_fidelity_mc(
                cfg, tau, int(p["samples"]), int(p["seed"]), apply_phase_gate=cfg.bus_length % 2 == 1
            )
        else:
            raise ConfigurationError("--method must be exact or mc")
        rows.append({"axis_value": v, "mean": mean, "stderr": err})
    return rows


def cmd_entangle(rc: RunConfig) -> list[dict[str, Any]]:
    p = rc.params
    spins = parse_grid(p["spins"] if p["spins"] is not None else p["spin"])
    rows = []
    for s in spins:
        cfg = chain(p, spin=s)
        times = _times(p, cfg)
        for tau in times:
            eff = distribution_efficiency(cfg, tau, apply_phase_gate=cfg.bus_length % 2 == 1)
            row = {"spin": s, "efficiency": eff}
            if len(times) > 1 or str(p["time"]) != "optimal":
                row = {"spin": s, "tau": tau, "efficiency": eff}
            rows.append(row)
    return rows


def cmd_thermal(rc: RunConfig) -> list[dict[str, Any]]:
    p = rc.params
    spins = parse_grid(p["spins"] if p["spins"] is not None else p["spin"])
    temps = parse_grid(p["temps"])
    fields = parse_grid(p["fields"])
    if any(t <= 0 for t in temps):
        raise ConfigurationError("temperatures must be positive")
    if p["field_unit"] not in ("sj", "j"):
        raise ConfigurationError("--field-unit must be sj or j")
    n_cut = None if p["n_cut"] is None else int(p["n_cut"])
    rows = []
    for s in spins:
        for f in fields:
            h = f * s if p["field_unit"] == "sj" else f
            cfg = chain(p, spin=s, h=h)
            tau = _times(p, cfg)[0]
            for T in temps:
                mean = thermal_average_fidelity(cfg, T, tau, n_cut=n_cut, tol=float(p["tol"]))
                rows.append({"T": T, "h": h, "S": s, "mean_fidelity": mean})
    return rows


def cmd_modes(rc: RunConfig) -> list[dict[str, Any]]:
    cfg = chain(rc.params)
    eps, t = mode_spectrum(cfg)
    tau0 = optimal_time(cfg) if cfg.bus_length % 2 == 1 else None
    return [
        {"k": k + 1, "epsilon_k": e, "t_k": c, "tau0": tau0}
        for k, (e, c) in enumerate(zip(eps, t))
    ]


COMMANDS = {
    "transfer": cmd_transfer,
    "avg-fidelity": cmd_avg_fidelity,
    "entangle": cmd_entangle,
    "thermal": cmd_thermal,
    "modes": cmd_modes,
}


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.12g}"


def _json_value(x):
    if x is None or isinstance(x, (str, bool)):
        return x
    if isinstance(x, (int, np.integer)):
        return int(x)
    return float(f"{float(x):.12g}")


def render(rows: list[dict[str, Any]], rc: RunConfig) -> str:
    fmt = rc.params["format"]
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(list(rows[0]))
            for row in rows:
                writer.writerow([_fmt(v) for v in row.values()])
        return buf.getvalue()
    if fmt == "json":
        echo = {"command": rc.command}
        echo.update({k: v for k, v in rc.params.items() if k not in ("output", "config")})
        payload = {"config": echo, "rows": [{k: _json_value(v) for k, v in r.items()} for r in rows]}
        return json.dumps(payload, indent=2) + "\n"
    raise ConfigurationError("--format must be csv or json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qudit-transfer", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        # defaults stay None so a config file can fill them in
        sp.add_argument("--config", help="JSON file with option defaults")
        sp.add_argument("--bus-length", type=int, dest="bus_length")
        sp.add_argument("--spin", type=float)
        sp.add_argument("--dim", type=int)
        sp.add_argument("--g-over-j", type=float, dest="g_over_j")
        sp.add_argument("--h-over-j", type=float, dest="h_over_j")
        sp.add_argument("--time", help="'optimal', a number, or a grid")
        sp.add_argument("--format", choices=["csv", "json"])
        sp.add_argument("--output", "-o", help="output file (default stdout)")
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("transfer", help="fidelity of one input state")
    common(sp)
    sp.add_argument("--state", help="uniform | basis:K | haar")

    sp = sub.add_parser("avg-fidelity", help="Haar-averaged fidelity over a g/J or S grid")
    common(sp)
    sp.add_argument("--axis", choices=["spin", "g-over-j"])
    sp.add_argument("--values")
    sp.add_argument("--method", choices=["exact", "mc"])
    sp.add_argument("--samples", type=int)

    sp = sub.add_parser("entangle", help="entanglement distribution efficiency")
    common(sp)
    sp.add_argument("--spins")

    sp = sub.add_parser("thermal", help="average fidelity with a thermal bus")
    common(sp)
    sp.add_argument("--spins")
    sp.add_argument("--temps", help="temperature grid in units of J")
    sp.add_argument("--fields", help="field grid")
    sp.add_argument("--field-unit", dest="field_unit", choices=["sj", "j"])
    sp.add_argument("--n-cut", type=int, dest="n_cut")
    sp.add_argument("--tol", type=float)

    sp = sub.add_parser("modes", help="bus mode energies, couplings and tau0")
    common(sp)
    return parser


def resolve(args: argparse.Namespace) -> RunConfig:
    params = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                from_file = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read config file: {exc}") from None
        unknown = set(from_file) - set(DEFAULTS)
        if unknown:
            raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
        params.update(from_file)
    for key, value in vars(args).items():
        if key in ("command", "config") or value is None:
            continue
        params[key] = value
    if params["axis"] == "g_over_j":
        params["axis"] = "g-over-j"
    return RunConfig(args.command, params)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rc = resolve(args)
        rows = COMMANDS[rc.command](rc)
        text = render(rows, rc)
        if rc.params["output"]:
            with open(rc.params["output"], "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except UnsupportedConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (ConfigurationError, DomainError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
