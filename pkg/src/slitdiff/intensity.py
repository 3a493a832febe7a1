"""On-screen intensity models, curve scans, and fringe statistics.

Three models share one curve interface:

* ``quantum-coherent``: the squared modulus of the weighted coherent sum
  of the two slit amplitudes.
* ``quantum-decoherent``: the same two amplitudes combined with a cross
  term damped by the coherence degree lambda_t, so fringe minima stay
  above zero for lambda_t < 1.
* ``classical``: the Fraunhofer two-slit formula, a sinc^2 envelope
  times cos^2 fringes with exact zeros.

Raw curves carry model units; peak-one normalization rescales the
maximum to exactly 1 for unit-free comparison with measured data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .model import (
    ApertureGeometry,
    CoherenceModel,
    OpticalSetup,
    SuperpositionWeights,
)
from .diffraction import slit_amplitude_scan

__all__ = [
    "MODEL_QUANTUM_COHERENT",
    "MODEL_QUANTUM_DECOHERENT",
    "MODEL_CLASSICAL",
    "MODELS",
    "NORMALIZATIONS",
    "IntensityCurve",
    "VisibilityReport",
    "coherent_intensity",
    "decoherent_intensity",
    "classical_intensity",
    "scan_curve",
    "fringe_visibility",
    "curve_csv_text",
    "truncation_shift",
]

MODEL_QUANTUM_COHERENT = "quantum-coherent"
MODEL_QUANTUM_DECOHERENT = "quantum-decoherent"
MODEL_CLASSICAL = "classical"
MODELS = (MODEL_QUANTUM_COHERENT, MODEL_QUANTUM_DECOHERENT, MODEL_CLASSICAL)

NORMALIZATION_RAW = "raw"
NORMALIZATION_PEAK_ONE = "peak-one"
NORMALIZATIONS = (NORMALIZATION_RAW, NORMALIZATION_PEAK_ONE)


def coherent_intensity(phi):
    """|phi|^2 for a combined complex amplitude (scalar or array)."""
    result = np.abs(np.asarray(phi)) ** 2
    return result if result.ndim else float(result)


def decoherent_intensity(phi1, phi2, weights: SuperpositionWeights, coherence: CoherenceModel):
    """Two-path intensity with the cross term damped by the coherence degree.

    I = (1 + alpha_sq) * (c1^2 |phi1|^2 + c2^2 |phi2|^2
        + 2 c1 c2 lambda_t Re(conj(phi1) phi2))

    At lambda_t = 1 this is exactly twice the coherent intensity of the
    weighted sum; at lambda_t = 0 the paths add incoherently.
    """
    phi1 = np.asarray(phi1, dtype=complex)
    phi2 = np.asarray(phi2, dtype=complex)
    cross = (np.conj(phi1) * phi2).real
    bracket = (
        weights.c1 ** 2 * np.abs(phi1) ** 2
        + weights.c2 ** 2 * np.abs(phi2) ** 2
        + 2.0 * weights.c1 * weights.c2 * coherence.lambda_t * cross
    )
    result = (1.0 + coherence.alpha_sq) * bracket
    return result if result.ndim else float(result)


def classical_intensity(geometry: ApertureGeometry, setup: OpticalSetup, sin_beta):
    """Fraunhofer double-slit intensity, normalized to 4 at sin_beta = 0.

    The unit-amplitude formula 4 sinc^2(pi a sin_beta / lambda)
    cos^2(pi d sin_beta / lambda); its zeros are exact.
    """
    sin_beta = np.asarray(sin_beta, dtype=float)
    envelope_arg = geometry.slit_width_a * sin_beta / setup.wavelength_lambda
    fringe_arg = geometry.separation_d * sin_beta / setup.wavelength_lambda
    result = 4.0 * np.sinc(envelope_arg) ** 2 * np.cos(math.pi * fringe_arg) ** 2
    return result if result.ndim else float(result)


@dataclass(frozen=True)
class IntensityCurve:
    """A sampled intensity curve over strictly increasing sin(beta) values."""

    sin_beta: np.ndarray
    intensity: np.ndarray
    normalization: str = NORMALIZATION_RAW

    def __post_init__(self) -> None:
        sin_beta = np.array(self.sin_beta, dtype=float)
        intensity = np.array(self.intensity, dtype=float)
        if sin_beta.ndim != 1 or intensity.ndim != 1 or sin_beta.size != intensity.size:
            raise ValueError("sin_beta and intensity must be 1-d arrays of equal length")
        if sin_beta.size == 0:
            raise ValueError("curve must contain at least one sample")
        if not (np.all(np.isfinite(sin_beta)) and np.all(np.isfinite(intensity))):
            raise NumericalError("curve samples must be finite")
        if sin_beta.size > 1 and not np.all(np.diff(sin_beta) > 0.0):
            raise ValueError("sin_beta values must be strictly increasing")
        if np.any(intensity < 0.0):
            raise ValueError("intensities must be non-negative")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
        if self.normalization == NORMALIZATION_PEAK_ONE and intensity.max() != 1.0:
            raise ValueError("a peak-one curve must have maximum exactly 1")
        sin_beta.setflags(write=False)
        intensity.setflags(write=False)
        object.__setattr__(self, "sin_beta", sin_beta)
        object.__setattr__(self, "intensity", intensity)

    def __len__(self) -> int:
        return int(self.sin_beta.size)

    @property
    def samples(self) -> tuple[tuple[float, float], ...]:
        return tuple(zip(self.sin_beta.tolist(), self.intensity.tolist()))

    def normalized(self) -> "IntensityCurve":
        """Peak-one rescaling; a no-op on curves already normalized."""
        if self.normalization == NORMALIZATION_PEAK_ONE:
            return self
        peak = float(self.intensity.max())
        if peak <= 0.0:
            raise NumericalError("cannot peak-normalize an all-zero curve")
        scaled = self.intensity / peak
        # Guard against rounding in the division: pin the peak samples to 1.
        scaled = np.where(self.intensity == peak, 1.0, scaled)
        return IntensityCurve(self.sin_beta, scaled, NORMALIZATION_PEAK_ONE)


@dataclass(frozen=True)
class VisibilityReport:
    """Fringe contrast (i_max - i_min) / (i_max + i_min) of a curve's centre."""

    i_max: float
    i_min: float
    visibility: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.i_max) and math.isfinite(self.i_min)):
            raise ValueError("visibility extrema must be finite")
        if self.i_min < 0.0 or self.i_max < self.i_min:
            raise ValueError("extrema must satisfy 0 <= i_min <= i_max")
        if not 0.0 <= self.visibility <= 1.0:
            raise ValueError("visibility must lie in [0, 1]")


def scan_curve(
    model: str,
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    weights: SuperpositionWeights | None,
    coherence: CoherenceModel | None,
    beta_grid,
    *,
    sin_alpha: float = 0.0,
    truncation=(64, 64),
    normalization: str = NORMALIZATION_PEAK_ONE,
) -> IntensityCurve:
    """Sample one intensity model over a grid of sin(beta) values.

    The quantum models need ``weights`` (and the decoherent one also
    ``coherence``); the classical model ignores both.
    """
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}, got {model!r}")
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    beta_grid = np.asarray(beta_grid, dtype=float)
    if beta_grid.ndim != 1 or beta_grid.size == 0:
        raise ValueError("beta_grid must be a non-empty 1-d array")
    if beta_grid.size > 1 and not np.all(np.diff(beta_grid) > 0.0):
        raise ValueError("beta_grid must be strictly increasing")

    if model == MODEL_CLASSICAL:
        values = classical_intensity(geometry, setup, beta_grid)
    else:
        if weights is None:
            raise ValueError(f"{model} requires superposition weights")
        phi1, phi2 = slit_amplitude_scan(
            geometry, setup, beta_grid, sin_alpha=sin_alpha, truncation=truncation
        )
        if model == MODEL_QUANTUM_COHERENT:
            values = coherent_intensity(weights.c1 * phi1 + weights.c2 * phi2)
        else:
            if coherence is None:
                raise ValueError(f"{model} requires a coherence degree")
            values = decoherent_intensity(phi1, phi2, weights, coherence)
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise NumericalError("intensity scan produced non-finite values")
    # Clip parasitic negatives from floating cancellation (|. | ~ 1e-30).
    values = np.where(values < 0.0, 0.0, values)
    curve = IntensityCurve(beta_grid, values, NORMALIZATION_RAW)
    if normalization == NORMALIZATION_PEAK_ONE:
        curve = curve.normalized()
    return curve


def _refine_extremum(x: np.ndarray, y: np.ndarray, index: int) -> float:
    """Quadratic refinement of a grid extremum through its two neighbours."""
    if index == 0 or index == len(y) - 1:
        return float(y[index])
    x0, x1, x2 = x[index - 1 : index + 2]
    y0, y1, y2 = y[index - 1 : index + 2]
    coeffs = np.polyfit([x0, x1, x2], [y0, y1, y2], 2)
    if coeffs[0] == 0.0:
        return float(y1)
    vertex = -coeffs[1] / (2.0 * coeffs[0])
    lo, hi = (x0, x2) if x0 < x2 else (x2, x0)
    if not lo <= vertex <= hi:
        return float(y1)
    return float(np.polyval(coeffs, vertex))


def fringe_visibility(curve: IntensityCurve) -> VisibilityReport:
    """Contrast between the central maximum and the first adjacent minimum.

    The central maximum is the global maximum closest to sin_beta = 0;
    the minimum is the nearest local minimum on either side of it. Both
    extrema are refined with a parabola through the neighbouring samples,
    and the refined minimum is clamped at zero, so curves with exact
    zeros report visibility exactly 1.
    """
    x = curve.sin_beta
    y = curve.intensity
    if len(curve) < 5:
        raise ValueError("visibility needs at least 5 samples around the centre")
    peak = float(y.max())
    if peak <= 0.0:
        raise ValueError("visibility is undefined for an all-zero curve")
    near_peak = np.flatnonzero(y >= peak * (1.0 - 1.0e-12))
    center = int(near_peak[np.argmin(np.abs(x[near_peak]))])
    if center == 0 or center == len(y) - 1:
        raise ValueError("central maximum must be interior to the curve")

    def first_minimum(start: int, step: int) -> int | None:
        i = start + step
        while 0 < i < len(y) - 1:
            if y[i] < y[i - 1] and y[i] <= y[i + 1]:
                return i
            i += step
        return None

    candidates = [m for m in (first_minimum(center, 1), first_minimum(center, -1)) if m is not None]
    if not candidates:
        raise ValueError("no local minimum adjacent to the central maximum")
    minimum = min(candidates, key=lambda i: abs(i - center))

    i_max = max(_refine_extremum(x, y, center), peak)
    i_min = max(_refine_extremum(x, y, minimum), 0.0)
    i_min = min(i_min, i_max)
    visibility = (i_max - i_min) / (i_max + i_min)
    return VisibilityReport(i_max=i_max, i_min=i_min, visibility=min(max(visibility, 0.0), 1.0))


def curve_csv_text(curve: IntensityCurve) -> str:
    """CSV rendering with 12 significant digits in scientific notation."""
    lines = ["sin_beta,intensity"]
    for sb, value in zip(curve.sin_beta, curve.intensity):
        lines.append(f"{sb:.11e},{value:.11e}")
    return "\n".join(lines) + "\n"


def truncation_shift(
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    weights: SuperpositionWeights,
    coherence: CoherenceModel,
    beta_grid,
    truncation=(64, 64),
    *,
    model: str = MODEL_QUANTUM_DECOHERENT,
    sin_alpha: float = 0.0,
) -> float:
    """L-infinity change of the normalized curve when both mode counts double.

    A direct convergence probe: scan at ``truncation`` and at twice it,
    peak-normalize both, return max |difference| over the grid.
    """
    m_count, n_count = truncation
    base = scan_curve(
        model, geometry, setup, weights, coherence, beta_grid,
        sin_alpha=sin_alpha, truncation=(m_count, n_count),
        normalization=NORMALIZATION_PEAK_ONE,
    )
    doubled = scan_curve(
        model, geometry, setup, weights, coherence, beta_grid,
        sin_alpha=sin_alpha, truncation=(2 * m_count, 2 * n_count),
        normalization=NORMALIZATION_PEAK_ONE,
    )
    return float(np.max(np.abs(doubled.intensity - base.intensity)))
