"""HTTP surface for the capacity library.

One POST endpoint per runner plus a health probe.  Request validation is
pydantic's; computation errors that indicate a broken run (checksum
mismatch, degenerate sampling) surface as HTTP 500 with the diagnostic
in the detail field.
"""

from fastapi import FastAPI, HTTPException

from .runs import (
    ChecksumMismatch,
    DegenerateSampling,
    run_bench,
    run_density,
    run_sweep,
    run_validate,
)
from .schemas import (
    BenchRequest,
    BenchResponse,
    DensityRequest,
    DensityResponse,
    SweepRequest,
    SweepResponse,
    ValidateRequest,
    ValidateResponse,
)

__all__ = ["app", "create_app"]


def create_app() -> FastAPI:
    app = FastAPI(title="jacobi-mimo", version="0.1.0")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/sweep", response_model=SweepResponse)
    def sweep(req: SweepRequest) -> SweepResponse:
        return run_sweep(req)

    @app.post("/bench", response_model=BenchResponse)
    def bench(req: BenchRequest) -> BenchResponse:
        try:
            return run_bench(req)
        except ChecksumMismatch as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc

    @app.post("/validate", response_model=ValidateResponse)
    def validate(req: ValidateRequest) -> ValidateResponse:
        try:
            return run_validate(req)
        except DegenerateSampling as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from exc

    @app.post("/density", response_model=DensityResponse)
    def density(req: DensityRequest) -> DensityResponse:
        return run_density(req)

    return app


app = create_app()
