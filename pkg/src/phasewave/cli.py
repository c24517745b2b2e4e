"""Command-line surface: evaluate, sample, verify, evolve, inspect geometry.

Every run is deterministic: identical configurations produce byte-identical
artifacts.  Exit status is 0 on success, 1 when a requested check fails,
2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import verify
from .errors import AccuracyError, ConfigurationError
from .evolution import GridSpec, evolve_fd, propagate_exact
from .extended import StandingWaveSpec, antinode_angles, node_angles, standing_wave_field
from .gridio import export_field, sample_field
from .oscillator import OscillatorParams
from .wigner import stationary_field

_TIME_RE = re.compile(r"^([0-9]*\.?[0-9]*)\s*T\s*(?:/\s*([0-9]*\.?[0-9]+))?$")


def parse_time(token: str, period: float | None):
    """Parse '0.25', 'T', 'T/4' or '3T/4'; fractions of T need a known period."""
    token = token.strip()
    m = _TIME_RE.match(token)
    if m:
        if period is None:
            raise ValueError(f"time {token!r} uses the wave period; --ell is required")
        num = float(m.group(1)) if m.group(1) else 1.0
        den = float(m.group(2)) if m.group(2) else 1.0
        return num * period / den
    return float(token)


@dataclass
class RunConfig:
    """Validated run configuration; defaults are the natural-unit setup."""

    command: str
    n: int = 0
    ell: int | None = None
    A: float = 2.0
    C: float = 5.0
    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    alpha: float = 0.0
    rho_max: float = 4.5
    n_rho: int = 64
    n_phi: int = 128
    dt: float | None = None
    times: tuple = ("0",)
    fmt: str = "csv"
    out: str | None = None
    tol: float | None = None
    suite: str = "all"
    x: float = 0.0
    p: float = 0.0

    def params(self) -> OscillatorParams:
        return OscillatorParams(m=self.m, omega=self.omega, hbar=self.hbar, alpha=self.alpha)

    def spec(self) -> StandingWaveSpec | None:
        if self.ell is None:
            return None
        return StandingWaveSpec(ell=self.ell, A=self.A, C=self.C)

    def field(self, params):
        spec = self.spec()
        if spec is None:
            return stationary_field(params, self.n)
        return standing_wave_field(params, self.n, spec)

    def parsed_times(self, params):
        spec = self.spec()
        period = spec.period(params.omega) if spec is not None else None
        return [parse_time(tok, period) for tok in self.times]

    def out_dir(self) -> str:
        return self.out or os.environ.get("PHASEWAVE_OUT") or "."


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasewave",
        description="Harmonic-oscillator Wigner functions in phase space: "
                    "evaluation, polar-grid sampling, verification, and advection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_state(sp):
        sp.add_argument("--n", type=int, default=0, help="eigenstate index (default 0)")
        sp.add_argument("--ell", type=int, default=None,
                        help="standing-wave index; omit for the stationary state")
        sp.add_argument("--A", type=float, default=2.0, help="wave amplitude (default 2)")
        sp.add_argument("--C", type=float, default=5.0, help="wave offset (default 5)")
        sp.add_argument("--m", type=float, default=1.0)
        sp.add_argument("--omega", type=float, default=1.0)
        sp.add_argument("--hbar", type=float, default=1.0)
        sp.add_argument("--alpha", type=float, default=0.0)

    def add_grid(sp):
        sp.add_argument("--rho-max", type=float, default=4.5, dest="rho_max")
        sp.add_argument("--n-rho", type=int, default=64, dest="n_rho")
        sp.add_argument("--n-phi", type=int, default=128, dest="n_phi")
        sp.add_argument("--dt", type=float, default=None,
                        help="time step; default 0.5*delta_phi/omega")

    def add_io(sp):
        sp.add_argument("--t", default="0", help="comma-separated times; accepts T/4 etc.")
        sp.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
        sp.add_argument("--out", default=None, help="output file or directory")

    sp = sub.add_parser("eval", help="evaluate W at a phase point")
    add_state(sp)
    sp.add_argument("--x", type=float, default=0.0)
    sp.add_argument("--p", type=float, default=0.0)
    sp.add_argument("--t", default="0")
    sp.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")

    sp = sub.add_parser("grid", help="sample W on a polar grid and export")
    add_state(sp)
    add_grid(sp)
    add_io(sp)

    sp = sub.add_parser("check", help="run verification suites")
    sp.add_argument("--suite", default="all",
                    help="suite name or 'all' (known: %s)" % ", ".join(verify.SUITES))
    sp.add_argument("--tol", type=float, default=None,
                    help="override the absolute tolerance of every check that takes one")
    sp.add_argument("--out", default=None, help="write the JSON report here")

    sp = sub.add_parser("evolve", help="advect a sampled field and compare to the exact rotation")
    add_state(sp)
    add_grid(sp)
    add_io(sp)

    sp = sub.add_parser("nodes", help="print node and antinode angles")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")

    sp = sub.add_parser("figures", help="export the six standing-wave demonstration grids")
    add_grid(sp)
    sp.add_argument("--format", choices=("csv", "json"), default="csv", dest="fmt")
    sp.add_argument("--out", default=None, help="output directory")

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("n", "ell", "A", "C", "m", "omega", "hbar", "alpha", "rho_max",
                 "n_rho", "n_phi", "dt", "fmt", "out", "tol", "suite", "x", "p"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    if hasattr(args, "t"):
        cfg.times = tuple(tok for tok in str(args.t).split(",") if tok.strip())
    return cfg


def _grid_from(cfg: RunConfig, params: OscillatorParams) -> GridSpec:
    dt = cfg.dt
    if dt is None:
        dt = 0.5 * (2.0 * math.pi / cfg.n_phi) / params.omega
    return GridSpec(rho_max=cfg.rho_max, n_rho=cfg.n_rho, n_phi=cfg.n_phi, dt=dt)


def _extra_meta(cfg: RunConfig) -> dict:
    extra = {"n": cfg.n}
    if cfg.ell is not None:
        extra.update(ell=cfg.ell, A=cfg.A, C=cfg.C)
    return extra


def _export_path(cfg: RunConfig, stem: str) -> str:
    out = cfg.out_dir()
    root, ext = os.path.splitext(out)
    if ext.lower() in (".csv", ".json"):
        os.makedirs(os.path.dirname(out) or ".", exist_ok=True)
        return out
    os.makedirs(out, exist_ok=True)
    return os.path.join(out, f"{stem}.{cfg.fmt}")


def _cmd_eval(cfg: RunConfig) -> int:
    params = cfg.params()
    W = cfg.field(params)
    times = cfg.parsed_times(params)
    values = [float(W(cfg.x, cfg.p, t)) for t in times]
    if cfg.fmt == "json":
        print(json.dumps({"x": cfg.x, "p": cfg.p, "t": times, "W": values}))
    else:
        print("t,W")
        for t, v in zip(times, values):
            print(f"{t:.17g},{v:.17g}")
    return 0


def _cmd_grid(cfg: RunConfig) -> int:
    params = cfg.params()
    W = cfg.field(params)
    grid = _grid_from(cfg, params)
    times = cfg.parsed_times(params)
    multi = len(times) > 1
    for idx, t in enumerate(times):
        fld = sample_field(W, grid, t, params)
        stem = f"field_t{idx}" if multi else "field"
        path = _export_path(cfg, stem)
        if multi and os.path.splitext(cfg.out_dir())[1].lower() in (".csv", ".json"):
            root, ext = os.path.splitext(path)
            path = f"{root}_t{idx}{ext}"
        export_field(fld, params, cfg.fmt, path, extra=_extra_meta(cfg))
        print(path)
    return 0


def _cmd_check(cfg: RunConfig) -> int:
    names = tuple(tok.strip() for tok in cfg.suite.split(",") if tok.strip())
    report = verify.run_suite(names or ("all",), tol_override=cfg.tol)
    for line in report.lines():
        print(line)
    if cfg.out:
        os.makedirs(os.path.dirname(cfg.out) or ".", exist_ok=True)
        with open(cfg.out, "w", encoding="ascii") as fh:
            json.dump(report.to_dict(), fh, indent=1)
            fh.write("\n")
        print(f"report written to {cfg.out}")
    return 0 if report.passed else 1


def _cmd_evolve(cfg: RunConfig) -> int:
    params = cfg.params()
    W = cfg.field(params)
    grid = _grid_from(cfg, params)
    start = sample_field(W, grid, 0.0, params)
    snapshot0 = lambda x, p: W(x, p, 0.0)
    for idx, t in enumerate(cfg.parsed_times(params)):
        evolved = evolve_fd(start, params, t)
        exact = propagate_exact(snapshot0, params, t)
        target = sample_field(lambda x, p, _t: exact(x, p), grid, t, params)
        err = float(np.max(np.abs(evolved.values - target.values)))
        print(f"t={t:.17g} steps={evolved.meta['steps']} max|fd-exact|={err:.6e}")
        if cfg.out:
            path = _export_path(cfg, f"evolved_t{idx}")
            export_field(evolved, params, cfg.fmt, path, extra=_extra_meta(cfg))
            print(path)
    return 0


def _cmd_nodes(cfg: RunConfig) -> int:
    spec = StandingWaveSpec(ell=cfg.ell, A=cfg.A, C=cfg.C)
    nodes = [float(v) for v in node_angles(spec)]
    anti = [float(v) for v in antinode_angles(spec)]
    if cfg.fmt == "json":
        print(json.dumps({"ell": cfg.ell, "nodes": nodes, "antinodes": anti}))
    else:
        print("nodes: " + " ".join(f"{v:.17g}" for v in nodes))
        print("antinodes: " + " ".join(f"{v:.17g}" for v in anti))
    return 0


def _cmd_figures(cfg: RunConfig) -> int:
    params = cfg.params()
    spec = StandingWaveSpec(ell=3, A=2.0, C=5.0)
    grid = GridSpec(rho_max=cfg.rho_max, n_rho=cfg.n_rho, n_phi=cfg.n_phi)
    period = spec.period(params.omega)
    out = cfg.out or os.environ.get("PHASEWAVE_OUT") or "."
    os.makedirs(out, exist_ok=True)
    for n in (0, 5):
        W = standing_wave_field(params, n, spec)
        for tag, t in (("0", 0.0), ("T4", period / 4.0), ("T2", period / 2.0)):
            fld = sample_field(W, grid, t, params)
            path = os.path.join(out, f"wigner_n{n}_t{tag}.{cfg.fmt}")
            export_field(fld, params, cfg.fmt, path,
                         extra={"n": n, "ell": 3, "A": 2.0, "C": 5.0})
            print(path)
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "check": _cmd_check,
    "evolve": _cmd_evolve,
    "nodes": _cmd_nodes,
    "figures": _cmd_figures,
}


def run(cfg: RunConfig) -> int:
    """Dispatch a validated configuration; returns the process exit status."""
    try:
        return _COMMANDS[cfg.command](cfg)
    except (ValueError, ConfigurationError) as exc:
        print(f"phasewave: error: {exc}", file=sys.stderr)
        return 2
    except AccuracyError as exc:
        print(f"phasewave: accuracy error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"phasewave: i/o error: {exc}", file=sys.stderr)
        return 1


def main(argv=None) -> None:
    args = build_parser().parse_args(argv)
    sys.exit(run(config_from_args(args)))
