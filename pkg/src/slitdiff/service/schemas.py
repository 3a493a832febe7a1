"""Request and response schemas shared by the HTTP service and the CLI.

The CLI builds these models locally and either executes them in-process
or posts them to a running service; both paths validate identically.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..config import reference_parameter_map

_REFERENCE = reference_parameter_map()

ModelName = Literal["quantum-coherent", "quantum-decoherent", "classical"]
NormalizationName = Literal["raw", "peak-one"]


class ParameterSet(BaseModel):
    """Flat physical parameter map; defaults are the reference configuration."""

    model_config = ConfigDict(extra="forbid")

    slit_width_a: float = Field(default=_REFERENCE["slit_width_a"], gt=0)
    slit_length_b: float = Field(default=_REFERENCE["slit_length_b"], gt=0)
    separation_d: float = Field(default=_REFERENCE["separation_d"], gt=0)
    thickness_c: float = Field(default=_REFERENCE["thickness_c"], gt=0)
    wavelength: float = Field(default=_REFERENCE["wavelength"], gt=0)
    amplitude_a1: float = Field(default=_REFERENCE["amplitude_a1"])
    amplitude_a2: float = Field(default=_REFERENCE["amplitude_a2"])
    screen_distance: float = Field(default=_REFERENCE["screen_distance"], gt=0)
    c1: float = Field(default=_REFERENCE["c1"])
    c2: float = Field(default=_REFERENCE["c2"])
    coherence_lambda: float = Field(default=_REFERENCE["coherence_lambda"], ge=0, le=1)


class ScanRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", protected_namespaces=())

    parameters: ParameterSet = Field(default_factory=ParameterSet)
    model: ModelName = "quantum-decoherent"
    beta_min: float = -0.01
    beta_max: float = 0.01
    beta_step: float = Field(default=1.0e-5, gt=0)
    sin_alpha: float = Field(default=0.0, gt=-1, lt=1)
    truncation_m: int = Field(default=64, ge=1)
    truncation_n: int = Field(default=64, ge=1)
    normalization: NormalizationName = "peak-one"

    @model_validator(mode="after")
    def _check_grid(self) -> "ScanRequest":
        if not self.beta_min < self.beta_max:
            raise ValueError("beta_min must be below beta_max")
        return self


class CurvePayload(BaseModel):
    sin_beta: list[float]
    intensity: list[float]

    @model_validator(mode="after")
    def _check_lengths(self) -> "CurvePayload":
        if len(self.sin_beta) != len(self.intensity):
            raise ValueError("sin_beta and intensity must have equal length")
        return self


class Provenance(BaseModel):
    """Complete resolved inputs of a run, embedded in every JSON artifact."""

    model_config = ConfigDict(protected_namespaces=())

    model: str
    parameters: ParameterSet
    truncation_m: int
    truncation_n: int
    normalization: str
    n_samples: int
    beta_min: float | None = None
    beta_max: float | None = None
    beta_step: float | None = None


class ScanResponse(BaseModel):
    curve: CurvePayload
    provenance: Provenance


class DatasetPayload(BaseModel):
    sin_beta: list[float]
    intensity: list[float]
    label: str = "data"

    @model_validator(mode="after")
    def _check_lengths(self) -> "DatasetPayload":
        if len(self.sin_beta) != len(self.intensity):
            raise ValueError("sin_beta and intensity must have equal length")
        return self


class CompareRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scan: ScanRequest = Field(default_factory=ScanRequest)
    data: DatasetPayload


class CompareResponse(BaseModel):
    rmse: float
    max_abs_residual: float
    n_points: int
    provenance: Provenance


class FitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    parameters: ParameterSet = Field(default_factory=ParameterSet)
    data: DatasetPayload
    free: list[str] = Field(min_length=1)
    initial: dict[str, float] = Field(default_factory=dict)
    bounds: dict[str, tuple[float, float]] = Field(default_factory=dict)
    truncation_m: int = Field(default=64, ge=1)
    truncation_n: int = Field(default=64, ge=1)
    max_iterations: int = Field(default=2000, ge=1)


class FitResponse(BaseModel):
    fitted_params: dict[str, float]
    rmse: float
    max_abs_residual: float
    iterations: int
    converged: bool
    unidentifiable: list[str]
    notes: list[str]
    provenance: Provenance
