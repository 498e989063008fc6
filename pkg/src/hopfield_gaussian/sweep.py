"""Point evaluation and deterministic grid sweeps emitting CSV rows.

A sweep walks its grid in row-major axis order, evaluates every point
independently (optionally on a worker pool) and prints rows in grid
order with a fixed 12-significant-digit float format, so the byte output
is reproducible across runs and worker counts.  Dynamically unstable
points become rows with empty measure fields and stable=false.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass

from .measures import correlation_report
from .model import (
    DegenerateSpectrumError,
    InstabilityError,
    ModelParams,
    PolaritonBasis,
    bogoliubov_diagonalize,
    build_dynamical_matrix,
    hopfield_basis,
)
from .scenarios import FULL, MIX_ONLY, SQUEEZE_ONLY, SweepSpec
from .states import (
    CovarianceMatrix,
    Environment,
    ground_state_covariance_generic,
    steady_state_covariance,
)

__all__ = [
    "CSV_HEADER",
    "ResultRow",
    "diagonalize_params",
    "state_covariance",
    "run_point",
    "run_sweep",
    "sweep_csv",
    "spec_to_params",
]

CSV_HEADER = (
    "lambda,wa,wb,T,omega_U,omega_L,E_N,G_ab,G_ba,"
    "mu_a,mu_b,mu_ab,N_a,N_b,class,stable"
)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


@dataclass(frozen=True)
class ResultRow:
    """One evaluated grid point; measure fields are None when unstable."""

    lam: float
    wa: float
    wb: float
    temperature: float
    omega_upper: float | None
    omega_lower: float | None
    e_n: float | None = None
    g_ab: float | None = None
    g_ba: float | None = None
    mu_a: float | None = None
    mu_b: float | None = None
    mu_ab: float | None = None
    n_a: float | None = None
    n_b: float | None = None
    classification: str | None = None
    stable: bool = True

    def to_csv(self) -> str:
        cells = [_fmt(self.lam), _fmt(self.wa), _fmt(self.wb), _fmt(self.temperature)]
        for v in (
            self.omega_upper,
            self.omega_lower,
            self.e_n,
            self.g_ab,
            self.g_ba,
            self.mu_a,
            self.mu_b,
            self.mu_ab,
            self.n_a,
            self.n_b,
        ):
            cells.append("" if v is None else _fmt(v))
        cells.append(self.classification or "")
        cells.append("true" if self.stable else "false")
        return ",".join(cells)


def diagonalize_params(params: ModelParams) -> PolaritonBasis:
    """Closed form when available, numeric eigensolver otherwise."""
    if params.is_single_coupling and params.coupling > 0:
        try:
            return hopfield_basis(params)
        except DegenerateSpectrumError:
            pass
    return bogoliubov_diagonalize(
        build_dynamical_matrix(params), allow_degenerate=True
    )


def state_covariance(
    params: ModelParams, env: Environment | None, state_kind: str
) -> CovarianceMatrix:
    """Bare-basis covariance of the requested state at one parameter point."""
    basis = diagonalize_params(params)
    if state_kind == "ground":
        return ground_state_covariance_generic(basis)
    if state_kind == "thermal":
        temperature = env.temperature if env is not None else 0.0
        return steady_state_covariance(basis, temperature)
    raise ValueError("state_kind must be 'ground' or 'thermal'")


def run_point(
    params: ModelParams, env: Environment | None, state_kind: str
) -> ResultRow:
    """Full pipeline for one point; instability becomes a flagged row."""
    swept_lam = max(params.lambda1, params.lambda2)
    temperature = env.temperature if (env and state_kind == "thermal") else 0.0
    try:
        basis = diagonalize_params(params)
        gamma = (
            ground_state_covariance_generic(basis)
            if state_kind == "ground"
            else steady_state_covariance(basis, temperature)
        )
    except InstabilityError:
        return ResultRow(
            lam=swept_lam,
            wa=params.omega_a,
            wb=params.omega_b,
            temperature=temperature,
            omega_upper=None,
            omega_lower=None,
            stable=False,
        )
    report = correlation_report(gamma)
    return ResultRow(
        lam=swept_lam,
        wa=params.omega_a,
        wb=params.omega_b,
        temperature=temperature,
        omega_upper=basis.omega_upper,
        omega_lower=basis.omega_lower,
        e_n=report.e_n,
        g_ab=report.g_ab,
        g_ba=report.g_ba,
        mu_a=report.mu_a,
        mu_b=report.mu_b,
        mu_ab=report.mu_ab,
        n_a=report.n_a,
        n_b=report.n_b,
        classification=report.classification.value,
        stable=True,
    )


def spec_to_params(spec: SweepSpec, point: dict) -> tuple[ModelParams, float]:
    """Materialize one grid point of a sweep into model parameters."""
    values = dict(spec.fixed)
    values.update(point)
    wa = float(values.get("wa", 1.0))
    wb = float(values.get("wb", 1.0))
    lam = float(values.get("lambda", 0.0))
    temperature = float(values.get("T", 0.0))
    if spec.coupling == FULL:
        l1 = l2 = lam
    elif spec.coupling == SQUEEZE_ONLY:
        l1, l2 = 0.0, lam
    elif spec.coupling == MIX_ONLY:
        l1, l2 = lam, 0.0
    else:
        raise ValueError(f"unknown coupling structure {spec.coupling!r}")
    if spec.diamag_mode == "auto":
        if l1 != l2:
            raise ValueError(
                "diamag 'auto' is defined only for the full (lambda1 = lambda2) coupling"
            )
        diamag = lam * lam / wb
    elif spec.diamag_mode == "zero":
        diamag = 0.0
    else:
        diamag = float(spec.diamag_mode)
    return ModelParams(wa, wb, l1, l2, diamag), temperature


def _eval_task(task) -> str:
    spec, point, gamma_a, gamma_b = task
    params, temperature = spec_to_params(spec, point)
    env = Environment(temperature, gamma_a, gamma_b)
    return run_point(params, env, spec.state).to_csv()


def run_sweep(
    spec: SweepSpec,
    env: Environment | None = None,
    workers: int = 1,
) -> list[str]:
    """Evaluate the whole grid; returns CSV rows in deterministic order."""
    gamma_a = env.gamma_a if env else 0.01
    gamma_b = env.gamma_b if env else 0.01
    tasks = [(spec, point, gamma_a, gamma_b) for point in spec.grid()]
    if workers <= 1:
        return [_eval_task(t) for t in tasks]
    with multiprocessing.Pool(processes=workers) as pool:
        return pool.map(_eval_task, tasks, chunksize=max(1, len(tasks) // (4 * workers)))


def sweep_csv(spec: SweepSpec, env: Environment | None = None, workers: int = 1) -> str:
    """Header plus rows, every line newline-terminated."""
    rows = run_sweep(spec, env, workers)
    return "\n".join([CSV_HEADER, *rows]) + "\n"
