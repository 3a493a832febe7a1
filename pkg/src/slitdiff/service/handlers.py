"""Request execution shared by the HTTP endpoints and the local CLI path."""

from __future__ import annotations

import numpy as np

from ..config import beta_grid, realize_parameters
from ..errors import ConfigError
from ..experiment import ExperimentDataset, compare, fit_parameters
from ..intensity import NORMALIZATION_RAW, IntensityCurve, scan_curve
from .schemas import (
    CompareRequest,
    CompareResponse,
    CurvePayload,
    DatasetPayload,
    FitRequest,
    FitResponse,
    ParameterSet,
    Provenance,
    ScanRequest,
    ScanResponse,
)


def _dataset_from_payload(payload: DatasetPayload) -> ExperimentDataset:
    return ExperimentDataset(
        sin_beta=np.asarray(payload.sin_beta, dtype=float),
        intensity=np.asarray(payload.intensity, dtype=float),
        label=payload.label,
    )


def reference_parameters_payload() -> ParameterSet:
    return ParameterSet()


def run_scan(request: ScanRequest) -> ScanResponse:
    geometry, setup, weights, coherence = realize_parameters(
        request.parameters.model_dump()
    )
    grid = beta_grid(request.beta_min, request.beta_max, request.beta_step)
    try:
        curve = scan_curve(
            request.model,
            geometry,
            setup,
            weights,
            coherence,
            grid,
            sin_alpha=request.sin_alpha,
            truncation=(request.truncation_m, request.truncation_n),
            normalization=request.normalization,
        )
    except ValueError as exc:
        # Inconsistent grid or parameter combinations are request errors.
        raise ConfigError(str(exc)) from exc
    return ScanResponse(
        curve=CurvePayload(
            sin_beta=curve.sin_beta.tolist(), intensity=curve.intensity.tolist()
        ),
        provenance=Provenance(
            model=request.model,
            parameters=request.parameters,
            truncation_m=request.truncation_m,
            truncation_n=request.truncation_n,
            normalization=request.normalization,
            n_samples=len(curve),
            beta_min=request.beta_min,
            beta_max=request.beta_max,
            beta_step=request.beta_step,
        ),
    )


def run_compare(request: CompareRequest) -> CompareResponse:
    dataset = _dataset_from_payload(request.data)
    scan_response = run_scan(request.scan)
    # Rebuild as a raw curve; compare() normalizes both sides itself.
    curve = IntensityCurve(
        sin_beta=np.asarray(scan_response.curve.sin_beta),
        intensity=np.asarray(scan_response.curve.intensity),
        normalization=NORMALIZATION_RAW,
    )
    report = compare(curve, dataset)
    return CompareResponse(
        rmse=report.rmse,
        max_abs_residual=report.max_abs_residual,
        n_points=len(dataset),
        provenance=scan_response.provenance,
    )


def run_fit(request: FitRequest) -> FitResponse:
    dataset = _dataset_from_payload(request.data)
    geometry, setup, weights, coherence = realize_parameters(
        request.parameters.model_dump()
    )
    try:
        report = fit_parameters(
            dataset,
            request.free,
            geometry,
            setup,
            weights,
            coherence,
            initial=request.initial,
            bounds={k: tuple(v) for k, v in request.bounds.items()},
            truncation=(request.truncation_m, request.truncation_n),
            max_iterations=request.max_iterations,
        )
    except ValueError as exc:
        # Bad free/initial/bounds selections are request errors.
        raise ConfigError(str(exc)) from exc
    return FitResponse(
        fitted_params={k: float(v) for k, v in report.fitted_params.items()},
        rmse=report.rmse,
        max_abs_residual=report.max_abs_residual,
        iterations=report.iterations,
        converged=report.converged,
        unidentifiable=list(report.unidentifiable),
        notes=list(report.notes),
        provenance=Provenance(
            model="quantum-decoherent",
            parameters=request.parameters,
            truncation_m=request.truncation_m,
            truncation_n=request.truncation_n,
            normalization="peak-one",
            n_samples=len(dataset),
        ),
    )
