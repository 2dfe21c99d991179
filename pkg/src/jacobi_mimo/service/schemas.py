"""Request and response models for the capacity service."""

from typing import Literal

from pydantic import BaseModel, Field, model_validator

Method = Literal["sum", "cd", "lb", "lowsnr", "mc"]

_MAX_SEED = 2**64


class _SnrGridMixin(BaseModel):
    snr_db_start: float = 0.0
    snr_db_stop: float = 30.0
    snr_db_step: float = Field(default=1.0, gt=0.0)

    @model_validator(mode="after")
    def _check_range(self):
        if self.snr_db_stop < self.snr_db_start:
            raise ValueError(
                f"snr_db_stop ({self.snr_db_stop}) must be >= "
                f"snr_db_start ({self.snr_db_start})"
            )
        return self


def _check_pairs(m: int, pairs: list[tuple[int, int]]) -> None:
    for mt, mr in pairs:
        if not (1 <= mt <= m and 1 <= mr <= m):
            raise ValueError(f"pair {mt}:{mr} is invalid for m={m}")


class SweepRequest(_SnrGridMixin):
    m: int = Field(ge=1)
    pairs: list[tuple[int, int]] = Field(min_length=1)
    methods: list[Method] = Field(default=["cd"], min_length=1)
    mc_samples: int = Field(default=100_000, ge=1)
    seed: int = Field(default=0, ge=0, lt=_MAX_SEED)
    nodes: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check(self):
        _check_pairs(self.m, self.pairs)
        if len(set(self.methods)) != len(self.methods):
            raise ValueError(f"duplicate methods in {self.methods}")
        return self


class SweepRow(BaseModel):
    m: int
    m_t: int
    m_r: int
    snr_db: float
    values: dict[str, float]


class SweepResponse(BaseModel):
    method_columns: list[str]
    rows: list[SweepRow]


class BenchRequest(_SnrGridMixin):
    m: int = Field(ge=1)
    pairs: list[tuple[int, int]] = Field(min_length=1)
    reps: int = Field(default=3, ge=1)
    nodes: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check(self):
        _check_pairs(self.m, self.pairs)
        return self


class BenchRow(BaseModel):
    m: int
    m_t: int
    m_r: int
    form: Literal["sum", "cd"]
    n_evals: int
    per_eval_seconds: float
    checksum: float
    speedup: float


class BenchResponse(BaseModel):
    rows: list[BenchRow]


class ValidateRequest(_SnrGridMixin):
    m: int = Field(ge=1)
    pairs: list[tuple[int, int]] = Field(min_length=1)
    mc_samples: int = Field(default=100_000, ge=2)
    seed: int = Field(default=0, ge=0, lt=_MAX_SEED)
    nodes: int | None = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check(self):
        _check_pairs(self.m, self.pairs)
        return self


class ValidateRow(BaseModel):
    m: int
    m_t: int
    m_r: int
    snr_db: float
    analytic: float
    mc_mean: float
    mc_std_error: float
    z: float


class ValidateResponse(BaseModel):
    rows: list[ValidateRow]
    max_abs_z: float
    passed: bool


class DensityRequest(BaseModel):
    m: int = Field(ge=1)
    m_t: int = Field(ge=1)
    m_r: int = Field(ge=1)
    n_samples: int = Field(default=20_000, ge=1)
    seed: int = Field(default=0, ge=0, lt=_MAX_SEED)
    n_bins: int = Field(default=20, ge=1)

    @model_validator(mode="after")
    def _check(self):
        _check_pairs(self.m, [(self.m_t, self.m_r)])
        if self.m_t + self.m_r > self.m:
            raise ValueError(
                f"density check needs m_t + m_r <= m, got "
                f"{self.m_t} + {self.m_r} > {self.m}"
            )
        return self


class DensityResponse(BaseModel):
    bin_edges: list[float]
    empirical: list[float]
    expected: list[float]
    max_abs_deviation: float
    max_sigma_deviation: float
    n_eigenvalues: int
    normalization: float
