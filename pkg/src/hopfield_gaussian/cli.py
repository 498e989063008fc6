"""Command-line front end.

Subcommands: diagonalize, point, sweep, dynamics, verify.  Numeric output
uses fixed 12-significant-digit formatting so repeated runs are
byte-identical.  A JSON config file can pre-set any flag; explicit flags
win.
"""

from __future__ import annotations

import argparse
import json
import sys

from .dynamics import (
    TRAJECTORY_HEADER,
    SecondMoments,
    collective_rates,
    evolve_trajectory,
    trajectory_rows,
)
from .model import InstabilityError, ModelParams
from .scenarios import Axis, SweepSpec, resolve_scenario, scenario_names
from .states import Environment, format_covariance
from .sweep import (
    CSV_HEADER,
    diagonalize_params,
    run_point,
    state_covariance,
    sweep_csv,
)

_MODEL_DEFAULTS = {
    "wa": 1.0,
    "wb": 1.0,
    "lambda": None,
    "lambda1": None,
    "lambda2": None,
    "diamag": "auto",
}
_ENV_DEFAULTS = {"temp": 0.0, "gamma-a": 0.01, "gamma-b": 0.01}


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--wa", type=float, default=None, help="cavity frequency (default 1)")
    p.add_argument("--wb", type=float, default=None, help="matter frequency (default 1)")
    p.add_argument(
        "--lambda",
        dest="lam",
        type=float,
        default=None,
        help="single coupling strength (sets both interaction terms)",
    )
    p.add_argument("--lambda1", type=float, default=None, help="mode-mixing coupling")
    p.add_argument("--lambda2", type=float, default=None, help="mode-squeezing coupling")
    p.add_argument(
        "--diamag",
        default=None,
        help="diamagnetic coefficient: 'auto' (lambda^2/wb), 'zero', or a value",
    )
    p.add_argument("--config", default=None, help="JSON file of flag defaults")


def _add_env_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--temp", type=float, default=None, help="reservoir temperature")
    p.add_argument("--gamma-a", type=float, default=None, help="cavity Ohmic slope")
    p.add_argument("--gamma-b", type=float, default=None, help="matter Ohmic slope")


def _add_output_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", default="-", help="output path, '-' for stdout")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    # accept both dashed and underscored keys
    return {str(k).replace("_", "-"): v for k, v in cfg.items()}


def _effective(cli_value, cfg: dict, key: str, default):
    if cli_value is not None:
        return cli_value
    if key in cfg:
        return cfg[key]
    return default


def _resolve_params(args, cfg: dict) -> ModelParams:
    wa = float(_effective(args.wa, cfg, "wa", _MODEL_DEFAULTS["wa"]))
    wb = float(_effective(args.wb, cfg, "wb", _MODEL_DEFAULTS["wb"]))
    lam = _effective(args.lam, cfg, "lambda", None)
    l1 = _effective(args.lambda1, cfg, "lambda1", None)
    l2 = _effective(args.lambda2, cfg, "lambda2", None)
    if lam is not None and (l1 is not None or l2 is not None):
        raise ValueError("give either --lambda or --lambda1/--lambda2, not both")
    if lam is not None:
        l1 = l2 = float(lam)
    else:
        l1 = float(l1) if l1 is not None else 0.0
        l2 = float(l2) if l2 is not None else 0.0
    diamag = _effective(args.diamag, cfg, "diamag", _MODEL_DEFAULTS["diamag"])
    if diamag == "auto":
        if l1 != l2:
            raise ValueError("--diamag auto needs equal mixing and squeezing couplings")
        dval = l1 * l1 / wb
    elif diamag == "zero":
        dval = 0.0
    else:
        dval = float(diamag)
    return ModelParams(wa, wb, l1, l2, dval)


def _resolve_env(args, cfg: dict) -> Environment:
    return Environment(
        temperature=float(_effective(args.temp, cfg, "temp", _ENV_DEFAULTS["temp"])),
        gamma_a=float(_effective(args.gamma_a, cfg, "gamma-a", _ENV_DEFAULTS["gamma-a"])),
        gamma_b=float(_effective(args.gamma_b, cfg, "gamma-b", _ENV_DEFAULTS["gamma-b"])),
    )


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def cmd_diagonalize(args) -> int:
    cfg = _load_config(args.config)
    params = _resolve_params(args, cfg)
    try:
        basis = diagonalize_params(params)
    except InstabilityError as exc:
        print(f"unstable: {exc}", file=sys.stderr)
        return 2
    lines = [
        f"omega_U = {_fmt(basis.omega_upper)}",
        f"omega_L = {_fmt(basis.omega_lower)}",
        f"theta = {_fmt(basis.theta) if basis.theta is not None else 'n/a'}",
    ]
    for label, coeffs in (("U", basis.coeffs_upper), ("L", basis.coeffs_lower)):
        w, x, y, z = coeffs
        lines.append(
            f"branch {label}: w={_fmt(w)} x={_fmt(x)} y={_fmt(y)} z={_fmt(z)}"
        )
    nu, nl = basis.bogoliubov_norms()
    lines.append(f"norm_residuals = {_fmt(abs(nu - 1))} {_fmt(abs(nl - 1))}")
    lines.append(f"orthogonality_residual = {_fmt(basis.orthogonality_residual())}")
    _write("\n".join(lines) + "\n", args.output)
    return 0


def cmd_point(args) -> int:
    cfg = _load_config(args.config)
    params = _resolve_params(args, cfg)
    env = _resolve_env(args, cfg)
    if args.dump_cov is not None:
        try:
            gamma = state_covariance(params, env, args.state)
        except InstabilityError as exc:
            print(f"unstable: {exc}", file=sys.stderr)
            return 2
        text = format_covariance(gamma)
        if args.dump_cov == "-":
            sys.stdout.write(text)
        else:
            with open(args.dump_cov, "w", newline="\n") as fh:
                fh.write(text)
            row = run_point(params, env, args.state)
            _write(CSV_HEADER + "\n" + row.to_csv() + "\n", args.output)
        return 0
    row = run_point(params, env, args.state)
    _write(CSV_HEADER + "\n" + row.to_csv() + "\n", args.output)
    return 0


def _parse_axis(text: str) -> Axis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ValueError("axis format is name:start:stop:count")
    name, start, stop, count = parts
    return Axis.linspace(name, float(start), float(stop), int(count))


def cmd_sweep(args) -> int:
    cfg = _load_config(args.config)
    env = _resolve_env(args, cfg)
    axes = tuple(_parse_axis(a) for a in args.axis or ())
    if args.scenario and args.scenario != "custom":
        spec = resolve_scenario(args.scenario)
        fixed = dict(spec.fixed)
        for key, value in (
            ("wa", args.wa),
            ("wb", args.wb),
            ("lambda", args.lam),
            ("T", args.temp),
        ):
            if value is not None:
                fixed[key] = float(value)
        spec = SweepSpec(
            scenario=spec.scenario,
            axes=axes or spec.axes,
            fixed=fixed,
            diamag_mode=_override_diamag(spec.diamag_mode, args.diamag),
            state=args.state or spec.state,
            coupling=args.coupling or spec.coupling,
            description=spec.description,
        )
    else:
        if not axes:
            raise ValueError("a custom sweep needs at least one --axis")
        fixed = {
            "wa": float(_effective(args.wa, cfg, "wa", 1.0)),
            "wb": float(_effective(args.wb, cfg, "wb", 1.0)),
            "lambda": float(_effective(args.lam, cfg, "lambda", 0.0) or 0.0),
            "T": env.temperature,
        }
        spec = SweepSpec(
            scenario="custom",
            axes=axes,
            fixed=fixed,
            diamag_mode=_override_diamag("auto", args.diamag),
            state=args.state or "thermal",
            coupling=args.coupling or "full",
        )
    _write(sweep_csv(spec, env, workers=args.workers), args.output)
    return 0


def _override_diamag(base, flag):
    if flag is None:
        return base
    if flag in ("auto", "zero"):
        return flag
    return float(flag)


def cmd_dynamics(args) -> int:
    cfg = _load_config(args.config)
    params = _resolve_params(args, cfg)
    env = _resolve_env(args, cfg)
    try:
        basis = diagonalize_params(params)
    except InstabilityError as exc:
        print(f"unstable: {exc}", file=sys.stderr)
        return 2
    rates = collective_rates(basis, env)
    points = evolve_trajectory(
        SecondMoments.vacuum(),
        rates,
        basis,
        t_final=args.t_final,
        dt=args.dt,
        stride=args.stride,
    )
    _write("\n".join([TRAJECTORY_HEADER, *trajectory_rows(points)]) + "\n", args.output)
    return 0


def cmd_verify(args) -> int:
    from .verify import run_verification

    report, ok = run_verification(args.check or None)
    sys.stdout.write(report)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfield-gaussian",
        description="Entanglement and EPR steering of two ultrastrongly "
        "coupled bosonic modes in a common thermal reservoir.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagonalize", help="normal-mode frequencies and coefficients")
    _add_model_flags(p)
    _add_output_flag(p)
    p.set_defaults(func=cmd_diagonalize)

    p = sub.add_parser("point", help="correlation measures at one parameter point")
    _add_model_flags(p)
    _add_env_flags(p)
    p.add_argument("--state", choices=("ground", "thermal"), default="ground")
    p.add_argument(
        "--dump-cov",
        default=None,
        metavar="PATH",
        help="write the covariance matrix to PATH ('-' prints it instead of the row)",
    )
    _add_output_flag(p)
    p.set_defaults(func=cmd_point)

    p = sub.add_parser("sweep", help="grid sweep producing CSV")
    _add_model_flags(p)
    _add_env_flags(p)
    p.add_argument(
        "--scenario",
        default=None,
        help=f"named preset: {', '.join(scenario_names())}, or custom",
    )
    p.add_argument(
        "--axis",
        action="append",
        metavar="name:start:stop:count",
        help="swept axis (repeatable, at most twice)",
    )
    p.add_argument("--state", choices=("ground", "thermal"), default=None)
    p.add_argument(
        "--coupling",
        choices=("full", "squeeze-only", "mix-only"),
        default=None,
        help="which interaction terms the swept coupling drives",
    )
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    _add_output_flag(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("dynamics", help="second-moment relaxation trajectory")
    _add_model_flags(p)
    _add_env_flags(p)
    p.add_argument("--t-final", type=float, default=50.0)
    p.add_argument("--dt", type=float, default=None, help="step (default auto)")
    p.add_argument("--stride", type=int, default=1, help="record every n-th step")
    _add_output_flag(p)
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument(
        "--check",
        action="append",
        type=int,
        metavar="N",
        help="run only check N (repeatable)",
    )
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
