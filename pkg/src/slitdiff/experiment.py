"""Measured-data ingestion, model/data comparison, and parameter fitting.

Measured fringe scans arrive as two-column text (sin_beta, intensity)
in arbitrary units. Comparison is always done in peak-one normalized
form: both curves are rescaled to unit maximum and the model is
linearly interpolated onto the data abscissae. The fit wraps the same
residual in a derivative-free simplex search over a chosen subset of
the physical parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .diffraction import slit_amplitude_scan
from .errors import DataError, NumericalError
from .intensity import IntensityCurve
from .model import (
    ApertureGeometry,
    CoherenceModel,
    OpticalSetup,
    SuperpositionWeights,
)

__all__ = [
    "ExperimentDataset",
    "FitReport",
    "FIT_PARAMETER_NAMES",
    "load_dataset",
    "synthetic_dataset",
    "compare",
    "fit_parameters",
]

FIT_PARAMETER_NAMES = ("A1", "A2", "c1", "c2", "lambda_t")

_DEFAULT_BOUNDS = {
    "A1": (1.0e-6, 1.0e6),
    "A2": (1.0e-6, 1.0e6),
    "c1": (0.0, 1.0),
    "c2": (0.0, 1.0),
    "lambda_t": (0.0, 1.0),
}


@dataclass(frozen=True)
class ExperimentDataset:
    """A measured intensity scan: sin(beta) abscissae and non-negative values."""

    sin_beta: np.ndarray
    intensity: np.ndarray
    label: str = "data"

    def __post_init__(self) -> None:
        sin_beta = np.array(self.sin_beta, dtype=float)
        intensity = np.array(self.intensity, dtype=float)
        if sin_beta.ndim != 1 or intensity.ndim != 1 or sin_beta.size != intensity.size:
            raise DataError("dataset columns must be 1-d and of equal length")
        if sin_beta.size < 3:
            raise DataError(f"dataset needs at least 3 points, got {sin_beta.size}")
        if not (np.all(np.isfinite(sin_beta)) and np.all(np.isfinite(intensity))):
            raise DataError("dataset values must be finite")
        if np.any(intensity < 0.0):
            raise DataError("dataset intensities must be non-negative")
        order = np.argsort(sin_beta, kind="stable")
        sin_beta = sin_beta[order]
        intensity = intensity[order]
        if np.any(np.diff(sin_beta) == 0.0):
            raise DataError("dataset abscissae must be distinct")
        sin_beta.setflags(write=False)
        intensity.setflags(write=False)
        object.__setattr__(self, "sin_beta", sin_beta)
        object.__setattr__(self, "intensity", intensity)

    def __len__(self) -> int:
        return int(self.sin_beta.size)

    @property
    def points(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.sin_beta.tolist(), self.intensity.tolist()))


@dataclass(frozen=True)
class FitReport:
    """Outcome of a comparison or fit, in peak-one normalized units."""

    rmse: float
    max_abs_residual: float
    fitted_params: dict
    iterations: int
    converged: bool = True
    unidentifiable: tuple = ()
    notes: tuple = ()

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rmse) and math.isfinite(self.max_abs_residual)):
            raise NumericalError("fit residuals must be finite")
        if self.rmse < 0.0 or self.max_abs_residual < 0.0:
            raise ValueError("residual statistics must be non-negative")
        if self.rmse > self.max_abs_residual * (1.0 + 1.0e-12) + 1.0e-300:
            raise ValueError("rmse cannot exceed the maximum absolute residual")

    def to_json_dict(self) -> dict:
        return {
            "rmse": self.rmse,
            "max_abs_residual": self.max_abs_residual,
            "fitted_params": dict(self.fitted_params),
            "iterations": self.iterations,
            "converged": self.converged,
            "unidentifiable": list(self.unidentifiable),
            "notes": list(self.notes),
        }


def load_dataset(source, label: str = "data") -> ExperimentDataset:
    """Parse a two-column text table into a dataset.

    ``source`` is either the text content itself or an open text stream.
    Columns may be separated by commas or whitespace; blank lines and
    ``#`` comments are skipped, and a single leading non-numeric header
    row is tolerated.
    """
    text = source.read() if hasattr(source, "read") else source
    if not isinstance(text, str):
        raise DataError("dataset source must be text or a text stream")

    rows: list[tuple[float, float]] = []
    saw_content = False
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise DataError(
                f"line {lineno}: expected 2 columns (sin_beta, intensity), got {len(parts)}"
            )
        try:
            pair = (float(parts[0]), float(parts[1]))
        except ValueError:
            if not saw_content:
                # Header row such as "sin_beta,intensity".
                saw_content = True
                continue
            raise DataError(f"line {lineno}: non-numeric value in {line!r}") from None
        saw_content = True
        rows.append(pair)

    if len(rows) < 3:
        raise DataError(f"dataset needs at least 3 data rows, found {len(rows)}")
    array = np.array(rows, dtype=float)
    return ExperimentDataset(sin_beta=array[:, 0], intensity=array[:, 1], label=label)


def synthetic_dataset(
    curve: IntensityCurve, label: str = "synthetic", stride: int = 1
) -> ExperimentDataset:
    """Turn a model curve into a dataset, optionally subsampled."""
    if stride < 1:
        raise ValueError("stride must be at least 1")
    return ExperimentDataset(
        sin_beta=curve.sin_beta[::stride],
        intensity=curve.intensity[::stride],
        label=label,
    )


def _normalized_or_raise(values: np.ndarray, what: str) -> np.ndarray:
    peak = float(values.max())
    if peak <= 0.0:
        raise DataError(f"{what} has no positive values to normalize against")
    return values / peak


def compare(model_curve: IntensityCurve, data: ExperimentDataset) -> FitReport:
    """Residual statistics of a model curve against a dataset.

    Both sides are peak-one normalized, then the model is linearly
    interpolated onto the data abscissae. The model grid must cover the
    data range; extrapolation would silently flatten the curve.
    """
    normalized = model_curve.normalized()
    if (
        data.sin_beta[0] < normalized.sin_beta[0]
        or data.sin_beta[-1] > normalized.sin_beta[-1]
    ):
        raise DataError(
            "model grid "
            f"[{normalized.sin_beta[0]:g}, {normalized.sin_beta[-1]:g}] does not cover "
            f"data range [{data.sin_beta[0]:g}, {data.sin_beta[-1]:g}]"
        )
    data_values = _normalized_or_raise(data.intensity, f"dataset {data.label!r}")
    model_values = np.interp(data.sin_beta, normalized.sin_beta, normalized.intensity)
    residual = model_values - data_values
    return FitReport(
        rmse=float(np.sqrt(np.mean(residual ** 2))),
        max_abs_residual=float(np.max(np.abs(residual))),
        fitted_params={},
        iterations=0,
    )


def _decode_free(x: np.ndarray, order: list[str], baseline: dict) -> dict:
    """Map optimizer coordinates back to the full parameter dictionary."""
    params = dict(baseline)
    for name, value in zip(order, x):
        params[name] = float(value)
    if "c1" in order:
        params["c2"] = math.sqrt(max(0.0, 1.0 - params["c1"] ** 2))
    elif "c2" in order:
        params["c1"] = math.sqrt(max(0.0, 1.0 - params["c2"] ** 2))
    return params


def fit_parameters(
    data: ExperimentDataset,
    free,
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    weights: SuperpositionWeights,
    coherence: CoherenceModel,
    *,
    initial: dict | None = None,
    bounds: dict | None = None,
    truncation=(64, 64),
    sin_alpha: float = 0.0,
    max_iterations: int = 2000,
) -> FitReport:
    """Fit a subset of the decoherent-model parameters to a dataset.

    ``free`` selects from A1, A2, c1, c2, lambda_t. The passed setup,
    weights and coherence provide the fixed values and the default
    starting point; ``initial`` overrides starting values and ``bounds``
    the box constraints, both keyed by parameter name.

    Weights stay on the unit circle: freeing c1 (or c2) moves the other
    along c1^2 + c2^2 = 1, so the pair counts as one degree of freedom.
    The slit amplitudes scale the two arms homogeneously, and the data
    is normalized, so with both A1 and A2 free only their ratio is
    determined; the report flags them as unidentifiable in that case.
    """
    free = list(dict.fromkeys(free))
    if not free:
        raise ValueError("free must name at least one parameter")
    unknown = [name for name in free if name not in FIT_PARAMETER_NAMES]
    if unknown:
        raise ValueError(
            f"unknown fit parameters {unknown}; choose from {FIT_PARAMETER_NAMES}"
        )
    initial = dict(initial or {})
    bounds = dict(bounds or {})
    for mapping, what in ((initial, "initial"), (bounds, "bounds")):
        stray = [name for name in mapping if name not in free]
        if stray:
            raise ValueError(f"{what} contains non-free parameters {stray}")

    baseline = {
        "A1": setup.amplitude_a1,
        "A2": setup.amplitude_a2,
        "c1": weights.c1,
        "c2": weights.c2,
        "lambda_t": coherence.lambda_t,
    }

    # The weight pair is a single coordinate; prefer c1 when both appear.
    order = [name for name in ("A1", "A2", "lambda_t") if name in free]
    if "c1" in free or "c2" in free:
        order.append("c1" if "c1" in free else "c2")

    x0 = np.array([float(initial.get(name, baseline[name])) for name in order])
    box = [tuple(bounds.get(name, _DEFAULT_BOUNDS[name])) for name in order]
    for name, (low, high) in zip(order, box):
        if not (math.isfinite(low) and math.isfinite(high) and low < high):
            raise ValueError(f"bounds for {name} must be a finite (low, high) pair")

    # Amplitudes enter each arm linearly, so the screen amplitudes are
    # computed once at unit drive and rescaled inside the objective.
    unit_setup = OpticalSetup(
        wavelength_lambda=setup.wavelength_lambda,
        amplitude_a1=1.0,
        amplitude_a2=1.0,
        screen_distance_l=setup.screen_distance_l,
    )
    phi1_unit, phi2_unit = slit_amplitude_scan(
        geometry, unit_setup, data.sin_beta, sin_alpha=sin_alpha, truncation=truncation
    )
    abs1 = np.abs(phi1_unit) ** 2
    abs2 = np.abs(phi2_unit) ** 2
    cross = (np.conj(phi1_unit) * phi2_unit).real
    data_values = _normalized_or_raise(data.intensity, f"dataset {data.label!r}")

    def model_values(params: dict) -> np.ndarray:
        term1 = (params["c1"] * params["A1"]) ** 2 * abs1
        term2 = (params["c2"] * params["A2"]) ** 2 * abs2
        mix = (
            2.0
            * params["c1"]
            * params["c2"]
            * params["A1"]
            * params["A2"]
            * params["lambda_t"]
            * cross
        )
        # The (1 + alpha_sq) prefactor cancels under peak normalization.
        return term1 + term2 + mix

    def objective(x: np.ndarray) -> float:
        curve = model_values(_decode_free(x, order, baseline))
        peak = curve.max()
        if not np.isfinite(peak) or peak <= 0.0:
            return 1.0e6
        residual = curve / peak - data_values
        return float(np.sqrt(np.mean(residual ** 2)))

    result = minimize(
        objective,
        x0,
        method="Nelder-Mead",
        bounds=box,
        options={
            "maxiter": max_iterations,
            "maxfev": 4 * max_iterations,
            "xatol": 1.0e-10,
            "fatol": 1.0e-14,
        },
    )

    fitted_full = _decode_free(np.asarray(result.x, dtype=float), order, baseline)
    reported = {name: fitted_full[name] for name in free}
    if "c1" in free or "c2" in free:
        # Report both weights; the partner moved along the constraint.
        reported["c1"] = fitted_full["c1"]
        reported["c2"] = fitted_full["c2"]

    final_curve = model_values(fitted_full)
    residual = final_curve / final_curve.max() - data_values

    notes: list[str] = []
    unidentifiable: tuple = ()
    if "A1" in free and "A2" in free:
        unidentifiable = ("A1", "A2")
        notes.append(
            "A1 and A2 jointly rescale the curve; only their ratio is determined"
        )
    elif "A1" in free or "A2" in free:
        notes.append(
            "a single free amplitude is determined only relative to the fixed one"
        )
    if not result.success:
        notes.append(f"optimizer did not converge: {result.message}")

    return FitReport(
        rmse=float(np.sqrt(np.mean(residual ** 2))),
        max_abs_residual=float(np.max(np.abs(residual))),
        fitted_params=reported,
        iterations=int(result.nit),
        converged=bool(result.success),
        unidentifiable=unidentifiable,
        notes=tuple(notes),
    )
