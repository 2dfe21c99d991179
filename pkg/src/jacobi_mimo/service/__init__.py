from .app import app, create_app
from .runs import (
    ChecksumMismatch,
    DegenerateSampling,
    run_bench,
    run_density,
    run_sweep,
    run_validate,
    snr_grid,
)
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
    "BenchRequest",
    "BenchResponse",
    "BenchRow",
    "ChecksumMismatch",
    "DegenerateSampling",
    "DensityRequest",
    "DensityResponse",
    "SweepRequest",
    "SweepResponse",
    "SweepRow",
    "ValidateRequest",
    "ValidateResponse",
    "ValidateRow",
    "app",
    "create_app",
    "run_bench",
    "run_density",
    "run_sweep",
    "run_validate",
    "snr_grid",
]
