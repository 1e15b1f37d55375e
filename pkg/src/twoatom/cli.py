"""Command line front end.

Each subcommand reads an optional flat ``key = value`` config file
(``--config``); any key may also be given as a flag (``--k-recoil 2``),
and flags win. Unknown keys are rejected.

Exit codes: 0 success, 1 verification failure, 2 configuration/input error,
3 physics-domain error.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import math
import sys
from importlib import resources

import numpy as np

from . import oracle
from .errors import PauliViolation, TwoAtomError
from .evolution import PulseModel
from .exchange import (
    EPS_PAULI,
    Statistics,
    TwoParticleProblem,
    equal_state_probability,
    factorized_equal_state_probability,
    overlap_sq,
    probability_decomposition,
    ratio_law,
    total_absorption_probability,
)
from .experiment import SPECIES, AtomSpecies, DelayScanConfig, qualitative_temperature_scan
from .experiment import run_delay_scan
from .hilbert import GridSpec, make_gaussian


class ConfigError(Exception):
    exit_code = 2


def _floats(text: str) -> list[float]:
    return [float(v) for v in str(text).replace(",", " ").split()]


def _stats_list(text: str) -> list[Statistics]:
    return [Statistics.parse(v) for v in str(text).replace(",", " ").split()]


_MODEL_KEYS = {
    "theta": (float, math.pi / 6),
    "k_recoil": (float, 0.0),
    "t_pre": (float, 0.0),
    "t_post": (float, 0.0),
    "mass": (float, 1.0),
}

SCHEMAS: dict[str, dict] = {
    "ratio-scan": {
        "overlaps": (_floats, "0, 0.25, 0.5, 0.75"),
        "stats": (_stats_list, "boson, fermion"),
        "n_points": (int, 1024),
        "half_width": (float, 64.0),
        "sigma": (float, 1.0),
        "finals": (str, "orthogonal"),
        **_MODEL_KEYS,
        "k_recoil": (float, 8.0),
    },
    "amplitude": {
        "n_points": (int, 1024),
        "x_min": (float, -32.0),
        "x_max": (float, 32.0),
        "phi_center": (float, -1.0),
        "phi_sigma": (float, 1.0),
        "phi_k0": (float, 0.0),
        "psi_center": (float, 1.0),
        "psi_sigma": (float, 1.0),
        "psi_k0": (float, 0.0),
        "stats": (str, "boson"),
        "finals": (str, "default"),
        **_MODEL_KEYS,
    },
    "oracle-check": {
        "n_instances": (int, 100),
        "n_points": (int, 64),
        "stats": (_stats_list, "boson, fermion"),
    },
    "experiment": {
        "species": (str, "rb87"),
        "mass_kg": (float, 0.0),
        "sigma0": (float, 1e-6),
        "v_mean": (float, 0.01),
        "g_accel": (float, 9.80665),
        "delays": (_floats, "0"),
        "stats": (str, "boson"),
        "shots": (int, 10000),
        "eta": (float, 1.0),
        "n_points": (int, 1024),
        "finals": (str, "default"),
        **_MODEL_KEYS,
    },
    "thermal": {
        "temperatures": (_floats, " ".join(f"{1e-9 * 2**i:g}" for i in range(13))),
        "species": (str, "rb87"),
        "mass_kg": (float, 0.0),
        "density_spacing": (float, 1e-6),
        **_MODEL_KEYS,
    },
}

DEFAULT_SEED = {"oracle-check": 2024}


def read_config_text(text: str) -> dict[str, str]:
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",)
    )
    parser.optionxform = str
    try:
        parser.read_string("[root]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {exc}") from None
    return dict(parser["root"])


def bundled_experiment_config() -> dict[str, str]:
    return read_config_text(
        resources.files("twoatom").joinpath("data/delay_scan.cfg").read_text()
    )


def resolve(command: str, file_values: dict[str, str], flag_values: dict[str, str]) -> dict:
    schema = SCHEMAS[command]
    raw = {k: str(v) for k, (_, v) in schema.items()}
    if command == "experiment":
        raw.update(bundled_experiment_config())
    for source in (file_values, flag_values):
        unknown = set(source) - set(schema)
        if unknown:
            raise ConfigError(f"unknown key(s) for {command}: {', '.join(sorted(unknown))}")
        raw.update(source)
    out = {}
    for key, (conv, _) in schema.items():
        try:
            out[key] = conv(raw[key])
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {exc}") from None
    return out


def _model(cfg: dict) -> PulseModel:
    return PulseModel(cfg["theta"], cfg["k_recoil"], cfg["t_pre"], cfg["t_post"], cfg["mass"])


def _species(cfg: dict) -> AtomSpecies:
    if cfg["mass_kg"] > 0:
        return AtomSpecies(cfg["species"], cfg["mass_kg"])
    try:
        return SPECIES[cfg["species"].lower()]
    except KeyError:
        raise ConfigError(f"unknown species {cfg['species']!r}; give mass_kg") from None


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def _emit(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2, default=str) + "\n")
        return
    if not rows:
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(rows[0].keys())
    for r in rows:
        w.writerow(_fmt(v) for v in r.values())


# --- subcommands -------------------------------------------------------------


def ratio_scan_rows(cfg: dict) -> list[dict]:
    model = _model(cfg)
    sigma = cfg["sigma"]
    grid = GridSpec(cfg["n_points"], -cfg["half_width"], cfg["half_width"])
    d_max = 2 * (cfg["half_width"] - 12 * sigma)
    rows = []
    for stats in cfg["stats"]:
        for target in cfg["overlaps"]:
            if not 0 <= target <= 1:
                raise ConfigError(f"overlap {target} outside [0, 1]")
            d = d_max if target == 0 else min(2 * sigma * math.sqrt(-math.log(target)), d_max)
            phi = make_gaussian(grid, -d / 2, sigma)
            psi = make_gaussian(grid, d / 2, sigma)
            x = overlap_sq(phi, psi)
            row = dict(
                overlap_sq=x, statistics=stats.name.lower(), p_two=math.nan, p_fac=math.nan,
                ratio=math.nan, ratio_law=math.nan, regime="", status="ok",
            )  # fmt: skip
            if stats is Statistics.FERMION and x > 1 - EPS_PAULI:
                row["status"] = "PauliViolation"
                rows.append(row)
                continue
            row["ratio_law"] = ratio_law(x, stats)
            if x > 1 - EPS_PAULI:
                row.update(
                    p_two=equal_state_probability(model, phi),
                    p_fac=factorized_equal_state_probability(model, phi),
                    regime="full",
                    status="equal-state",
                )
            else:
                try:
                    p = TwoParticleProblem.build(model, phi, psi, stats, cfg["finals"])
                except PauliViolation:
                    row["status"] = "PauliViolation"
                    rows.append(row)
                    continue
                res = probability_decomposition(p)
                row.update(p_two=res.p_two, p_fac=res.p_fac, regime=res.regime)
            if row["p_fac"] > 0:
                row["ratio"] = row["p_two"] / row["p_fac"]
            else:
                row["status"] = "DegenerateBaseline"
            rows.append(row)
    return rows


def amplitude_result(cfg: dict) -> dict:
    grid = GridSpec(cfg["n_points"], cfg["x_min"], cfg["x_max"])
    phi = make_gaussian(grid, cfg["phi_center"], cfg["phi_sigma"], cfg["phi_k0"])
    psi = make_gaussian(grid, cfg["psi_center"], cfg["psi_sigma"], cfg["psi_k0"])
    p = TwoParticleProblem.build(_model(cfg), phi, psi, cfg["stats"], cfg["finals"])
    out = probability_decomposition(p).as_dict()
    try:
        out["total_absorption_probability"] = total_absorption_probability(p)
    except TwoAtomError as exc:
        out["total_absorption_probability"] = None
        out["total_status"] = type(exc).__name__
    return out


def experiment_rows(cfg: dict, seed: int) -> list[dict]:
    scan = DelayScanConfig(
        species=_species(cfg),
        sigma0=cfg["sigma0"],
        v_mean=cfg["v_mean"],
        g_accel=cfg["g_accel"],
        delays=tuple(cfg["delays"]),
        model=_model(cfg),
        stats=Statistics.parse(cfg["stats"]),
        shots=cfg["shots"],
        seed=seed,
        eta=cfg["eta"],
        n_points=cfg["n_points"],
        finals=cfg["finals"],
    )
    return [
        dict(
            delay=r.delay, overlap_sq=r.overlap_sq, p_analytic=r.p_analytic,
            detected=r.detected, shots=r.shots, regime=r.regime, status=r.status,
        )  # fmt: skip
        for r in run_delay_scan(scan)
    ]


def thermal_rows(cfg: dict) -> list[dict]:
    rows = qualitative_temperature_scan(
        cfg["temperatures"], _species(cfg), cfg["density_spacing"], _model(cfg)
    )
    return [
        dict(
            T=r.T, lambda_T=r.lambda_T, overlap_sq_proxy=r.overlap_sq,
            ratio_boson=r.ratio_boson, ratio_fermion=r.ratio_fermion,
        )  # fmt: skip
        for r in rows
    ]


def oracle_reports(cfg: dict, seed: int) -> list[oracle.EquivalenceReport]:
    reports = []
    for stats in cfg["stats"]:
        reports += oracle.run_suite(cfg["n_instances"], stats, cfg["n_points"], seed)
    return reports


# --- argument handling -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twoatom",
        description="Exchange effects in one-photon absorption by two identical atoms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, schema in SCHEMAS.items():
        sp = sub.add_parser(name)
        sp.add_argument("--config", help="flat key = value file")
        sp.add_argument("--seed", type=int)
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", choices=("csv", "json"), default=None)
        for key in schema:
            flag = "--" + key.replace("_", "-")
            sp.add_argument(flag, dest="opt_" + key, metavar=key.upper(), default=None)
    return parser


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    command = args.command
    fmt = args.format or ("json" if command == "amplitude" else "csv")
    seed = args.seed if args.seed is not None else DEFAULT_SEED.get(command, 0)
    flags = {k[4:]: v for k, v in vars(args).items() if k.startswith("opt_") and v is not None}

    try:
        file_values = {}
        if args.config:
            try:
                with open(args.config) as fh:
                    file_values = read_config_text(fh.read())
            except OSError as exc:
                raise ConfigError(str(exc)) from None
        if command == "experiment" and args.seed is None and "seed" in file_values:
            seed = int(file_values["seed"])
        file_values.pop("seed", None)
        cfg = resolve(command, file_values, flags)

        buf = io.StringIO()
        status = 0
        if command == "ratio-scan":
            _emit(ratio_scan_rows(cfg), fmt, buf)
        elif command == "amplitude":
            result = amplitude_result(cfg)
            if fmt == "json":
                buf.write(json.dumps(result, indent=2) + "\n")
            else:
                flat = {}
                for k, v in result.items():
                    if isinstance(v, dict):
                        flat.update({f"{k}_{part}": val for part, val in v.items()})
                    else:
                        flat[k] = v
                _emit([flat], "csv", buf)
        elif command == "experiment":
            _emit(experiment_rows(cfg, seed), fmt, buf)
        elif command == "thermal":
            _emit(thermal_rows(cfg), fmt, buf)
        elif command == "oracle-check":
            reports = oracle_reports(cfg, seed)
            if fmt == "json":
                buf.write(oracle.reports_to_json(reports) + "\n")
            else:
                _emit([_report_row(r) for r in reports], "csv", buf)
            n_pass = sum(r.passed for r in reports)
            verdict = "PASS" if n_pass == len(reports) else "FAIL"
            print(f"{verdict} {n_pass}/{len(reports)} (seed={seed})", file=stderr)
            status = 0 if verdict == "PASS" else 1
    except (ConfigError, TwoAtomError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"ConfigError: {exc}", file=stderr)
        return 2

    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        stdout.write(buf.getvalue())
    return status


def _report_row(r: oracle.EquivalenceReport) -> dict:
    return dict(
        statistics=r.params.get("statistics"),
        index=r.params.get("index"),
        overlap_sq=r.params.get("overlap_sq"),
        residual_phi_branch=r.residual_phi_branch,
        residual_psi_branch=r.residual_psi_branch,
        residual_equal_state=np.nan if r.residual_equal_state is None else r.residual_equal_state,
        identity_residual=r.identity_residual,
        status="PASS" if r.passed else "FAIL",
    )


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
