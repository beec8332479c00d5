"""Command-line front end: ``point``, ``sweep``, ``critical`` and ``verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 I/O error.  Flags override values read from ``--config`` (``key=value``
lines, ``#`` comments).
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .channel import InputState, channel_coefficients
from .critical import feasibility_zero_T, max_teleportation_temperature
from .errors import ParameterError
from .metrics import fidelity_closed, input_concurrence, output_concurrence_closed
from .spin_model import ModelParams
from .sweep import Axis, SweepSpec, critical_csv, fmt, sweep_csv
from .verify import run_verification

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

DEFAULTS = {
    "J": 1.0, "lambda": 1.0, "B": 0.0, "b": 0.0, "T": 1.0,
    "theta": math.pi / 4, "phi": 0.0, "seed": 42, "jobs": 1,
    "out": None, "x": "B:0:4:81", "y": "T:0.02:2:60", "points": 200,
}
_FLOAT_KEYS = ("J", "lambda", "B", "b", "T", "theta", "phi")
_INT_KEYS = ("seed", "jobs", "points")


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def read_config(path: str) -> dict:
    cfg = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}", EXIT_IO) from exc
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value", EXIT_USAGE)
        key, value = (part.strip() for part in line.split("=", 1))
        cfg[key] = value
    return cfg


def resolve(args: argparse.Namespace) -> dict:
    """Merge built-in defaults < config file < command-line flags."""
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(read_config(args.config))
    for key, value in vars(args).items():
        if value is not None and key not in ("command", "config"):
            merged[key] = value
    try:
        for key in _FLOAT_KEYS:
            merged[key] = float(merged[key])
        for key in _INT_KEYS:
            merged[key] = int(merged[key])
    except (TypeError, ValueError) as exc:
        raise CliError(f"bad numeric value: {exc}", EXIT_USAGE) from exc
    return merged


def _model(cfg: dict, with_T: bool = True) -> ModelParams:
    return ModelParams(cfg["J"], cfg["lambda"], cfg["B"], cfg["b"], cfg["T"] if with_T else None)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {out}: {exc}", EXIT_IO) from exc


def cmd_point(cfg: dict) -> int:
    p = _model(cfg)
    s = InputState(cfg["theta"], cfg["phi"])
    co = channel_coefficients(p)
    rep = feasibility_zero_T(p.J, p.lam, p.B, p.b)
    tmax = max_teleportation_temperature(p.J, p.lam, p.B, p.b)
    lines = [f"E{i}={fmt(e)}" for i, e in enumerate(p.energies(), 1)]
    lines += [
        f"Z={fmt(co.Z)}",
        f"a1={fmt(co.a1)}", f"a2={fmt(co.a2)}", f"a3={fmt(co.a3)}", f"a4={fmt(co.a4)}",
        f"C_in={fmt(input_concurrence(s))}",
        f"C_out={fmt(output_concurrence_closed(p, s))}",
        f"F={fmt(fidelity_closed(p, s).value)}",
        f"margin={fmt(rep.margin)}",
        f"feasible_zero_T={int(rep.feasible_at_zero_T)}",
        f"B_c={fmt(rep.B_c)}",
        f"b_c={fmt(rep.b_c)}",
        f"T_max={fmt(tmax.value)}",
    ]
    _emit("\n".join(lines) + "\n", cfg["out"])
    return EXIT_OK


def cmd_sweep(cfg: dict) -> int:
    fixed = {k: cfg[k] for k in _FLOAT_KEYS}
    spec = SweepSpec(Axis.parse(str(cfg["x"])), Axis.parse(str(cfg["y"])), fixed)
    _emit(sweep_csv(spec, jobs=cfg["jobs"]), cfg["out"])
    return EXIT_OK


def _grid(text: str) -> list[float]:
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise CliError(f"bad grid {text!r}: {exc}", EXIT_USAGE) from exc


def cmd_critical(cfg: dict) -> int:
    _model(cfg, with_T=False)
    if cfg.get("B_grid") is not None and cfg.get("b_grid") is not None:
        raise CliError("give only one of --B-grid and --b-grid", EXIT_USAGE)
    if cfg.get("B_grid") is not None:
        vary, grid = "B", _grid(cfg["B_grid"])
    else:
        vary = "b"
        grid = _grid(cfg["b_grid"]) if cfg.get("b_grid") is not None else [cfg["b"]]
    _emit(critical_csv(cfg["J"], cfg["lambda"], vary, grid, B=cfg["B"], b=cfg["b"]), cfg["out"])
    return EXIT_OK


def cmd_verify(cfg: dict) -> int:
    results = run_verification(cfg["points"], cfg["seed"], corrupt=cfg.get("corrupt") or 0.0)
    lines = [f"points={cfg['points']} seed={cfg['seed']}"]
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status} {r.name}: max_deviation={r.max_deviation:.3e} tolerance={r.tolerance:.0e}")
        if not r.passed:
            ok = False
            p, s = r.worst_point
            lines.append(f"  worst point: J={p.J!r} lambda={p.lam!r} B={p.B!r} b={p.b!r} "
                         f"T={p.T!r} theta={s.theta!r} phi={s.phi!r}")
    _emit("\n".join(lines) + "\n", cfg["out"])
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("model and input")
    g.add_argument("--J", type=float, help="exchange coupling (nonzero)")
    g.add_argument("--lambda", dest="lambda", type=float, help="anisotropy (> 0)")
    g.add_argument("--B", type=float, help="uniform field")
    g.add_argument("--b", type=float, help="field inhomogeneity")
    g.add_argument("--T", type=float, help="temperature (> 0)")
    g.add_argument("--theta", type=float, help="input amplitude angle in [0, pi/2] (radians)")
    g.add_argument("--phi", type=float, help="input phase in [0, 2pi) (radians)")
    o = common.add_argument_group("run")
    o.add_argument("--out", help="output file (default stdout)")
    o.add_argument("--config", help="key=value config file; flags take precedence")
    o.add_argument("--seed", type=int, help="random seed for verify")
    o.add_argument("--jobs", type=int, help="worker processes for sweep")

    parser = argparse.ArgumentParser(
        prog="xxzteleport",
        description="Teleportation through a thermal two-qubit XXZ chain.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("point", parents=[common], help="evaluate one parameter point")
    sp = sub.add_parser("sweep", parents=[common], help="2-D sweep to CSV")
    sp.add_argument("--x", help="x axis as NAME:START:STOP:STEPS (NAME in B,b,T,theta,lambda,J)")
    sp.add_argument("--y", help="y axis as NAME:START:STOP:STEPS")
    cp = sub.add_parser("critical", parents=[common], help="critical fields and T_max to CSV")
    cp.add_argument("--B-grid", dest="B_grid", help="comma-separated B values (b held fixed)")
    cp.add_argument("--b-grid", dest="b_grid", help="comma-separated b values (B held fixed)")
    vp = sub.add_parser("verify", parents=[common], help="closed forms vs matrix oracles")
    vp.add_argument("--points", type=int, help="number of random points (default 200)")
    vp.add_argument("--corrupt", type=float, help=argparse.SUPPRESS)
    return parser


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "critical": cmd_critical, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve(args)
        return COMMANDS[args.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParameterError as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
