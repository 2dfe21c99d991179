"""Runners behind the service endpoints.

Each runner is a pure synchronous function from a request model to a
response model; the FastAPI layer only does transport.  Rows are emitted
pair-major, SNR-minor, so output order is deterministic no matter how a
runner schedules its work internally.
"""

import math
import time

from ..capacity import (
    ChannelConfig,
    capacity,
    capacity_low_snr,
    capacity_lower_bound,
    db_to_linear,
)
from ..haar_mc import eigenvalue_density_check, mc_capacity_grid
from .schemas import (
    BenchRequest,
    BenchResponse,
    BenchRow,
    DensityRequest,
    DensityResponse,
    SweepRequest,
    SweepResponse,
    SweepRow,
    ValidateRequest,
    ValidateResponse,
    ValidateRow,
)

__all__ = [
    "ChecksumMismatch",
    "DegenerateSampling",
    "run_bench",
    "run_density",
    "run_sweep",
    "run_validate",
    "snr_grid",
]

_SE_FLOOR = 1e-12
_Z_LIMIT = 5.0


class ChecksumMismatch(RuntimeError):
    """The two analytic forms disagreed during a benchmark run."""


class DegenerateSampling(RuntimeError):
    """Monte Carlo spread collapsed to zero while disagreeing with analytic."""


def snr_grid(start: float, stop: float, step: float) -> list[float]:
    """Inclusive dB grid start, start+step, ...; robust to float step error."""
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(n)]


def run_sweep(req: SweepRequest) -> SweepResponse:
    grid = snr_grid(req.snr_db_start, req.snr_db_stop, req.snr_db_step)
    rhos = [db_to_linear(s) for s in grid]
    columns: list[str] = []
    for method in req.methods:
        columns.append(method)
        if method == "mc":
            columns.append("mc_stderr")
    rows = []
    for mt, mr in req.pairs:
        config = ChannelConfig(m=req.m, m_t=mt, m_r=mr)
        per_method: dict[str, list[float]] = {}
        for method in req.methods:
            if method in ("sum", "cd"):
                per_method[method] = [
                    capacity(config, rho, req.nodes, form=method) for rho in rhos
                ]
            elif method == "lb":
                per_method[method] = [
                    capacity_lower_bound(config, rho, req.nodes, reflect=True)
                    for rho in rhos
                ]
            elif method == "lowsnr":
                per_method[method] = [capacity_low_snr(config, rho) for rho in rhos]
            else:
                estimates = mc_capacity_grid(
                    config, rhos, n_samples=req.mc_samples, seed=req.seed
                )
                per_method["mc"] = [e.mean for e in estimates]
                per_method["mc_stderr"] = [e.std_error for e in estimates]
        for i, snr_db in enumerate(grid):
            rows.append(
                SweepRow(
                    m=req.m,
                    m_t=mt,
                    m_r=mr,
                    snr_db=snr_db,
                    values={c: per_method[c][i] for c in columns},
                )
            )
    return SweepResponse(method_columns=columns, rows=rows)


def run_bench(req: BenchRequest) -> BenchResponse:
    grid = snr_grid(req.snr_db_start, req.snr_db_stop, req.snr_db_step)
    rhos = [db_to_linear(s) for s in grid]
    rows = []
    for mt, mr in req.pairs:
        config = ChannelConfig(m=req.m, m_t=mt, m_r=mr)
        checksum = {}
        per_eval = {}
        timed = {}
        for form in ("sum", "cd"):
            # Warmup evaluates the whole grid once, so quadrature rules are
            # cached before the clock starts and rule build time is excluded.
            vals = [capacity(config, rho, req.nodes, form=form) for rho in rhos]
            checksum[form] = sum(vals) / len(vals)
        for form in ("sum", "cd"):
            t0 = time.perf_counter()
            for _ in range(req.reps):
                for rho in rhos:
                    capacity(config, rho, req.nodes, form=form)
            timed[form] = time.perf_counter() - t0
            per_eval[form] = timed[form] / (req.reps * len(rhos))
        rel = abs(checksum["sum"] - checksum["cd"]) / max(abs(checksum["cd"]), 1e-300)
        if rel > 1e-9:
            raise ChecksumMismatch(
                f"sum/cd checksums diverge for (m={req.m}, m_t={mt}, m_r={mr}): "
                f"{checksum['sum']!r} vs {checksum['cd']!r} "
                f"(relative {rel:.3e}); benchmark invalid"
            )
        speedup = per_eval["sum"] / per_eval["cd"]
        for form in ("sum", "cd"):
            rows.append(
                BenchRow(
                    m=req.m,
                    m_t=mt,
                    m_r=mr,
                    form=form,
                    n_evals=req.reps * len(rhos),
                    per_eval_seconds=per_eval[form],
                    checksum=checksum[form],
                    speedup=speedup,
                )
            )
    return BenchResponse(rows=rows)


def run_validate(req: ValidateRequest) -> ValidateResponse:
    grid = snr_grid(req.snr_db_start, req.snr_db_stop, req.snr_db_step)
    rhos = [db_to_linear(s) for s in grid]
    rows = []
    max_abs_z = 0.0
    for mt, mr in req.pairs:
        config = ChannelConfig(m=req.m, m_t=mt, m_r=mr)
        estimates = mc_capacity_grid(
            config, rhos, n_samples=req.mc_samples, seed=req.seed
        )
        for snr_db, rho, est in zip(grid, rhos, estimates):
            analytic = capacity(config, rho, req.nodes)
            diff = analytic - est.mean
            if est.std_error < _SE_FLOOR and abs(diff) > 1e-9:
                raise DegenerateSampling(
                    f"std_error {est.std_error} with |analytic - mc| = "
                    f"{abs(diff):.3e} at (m={req.m}, m_t={mt}, m_r={mr}, "
                    f"snr_db={snr_db}); sampling did not converge"
                )
            z = diff / max(est.std_error, _SE_FLOOR)
            max_abs_z = max(max_abs_z, abs(z))
            rows.append(
                ValidateRow(
                    m=req.m,
                    m_t=mt,
                    m_r=mr,
                    snr_db=snr_db,
                    analytic=analytic,
                    mc_mean=est.mean,
                    mc_std_error=est.std_error,
                    z=z,
                )
            )
    return ValidateResponse(
        rows=rows, max_abs_z=max_abs_z, passed=max_abs_z <= _Z_LIMIT
    )


def run_density(req: DensityRequest) -> DensityResponse:
    config = ChannelConfig(m=req.m, m_t=req.m_t, m_r=req.m_r)
    check = eigenvalue_density_check(
        config, n_samples=req.n_samples, seed=req.seed, n_bins=req.n_bins
    )
    return DensityResponse(
        bin_edges=check.bin_edges.tolist(),
        empirical=check.empirical.tolist(),
        expected=check.expected.tolist(),
        max_abs_deviation=check.max_abs_deviation,
        max_sigma_deviation=check.max_sigma_deviation,
        n_eigenvalues=check.n_eigenvalues,
        normalization=check.normalization,
    )
