"""Far-field propagation of the slit field to the observation screen.

The on-screen amplitude of one slit is a surface integral of the exit
field and its normal derivative over the aperture. For the modal
expansion that integral factorizes into closed-form one-dimensional
aperture integrals per harmonic, so the amplitude reduces to a double
mode sum that costs microseconds per screen point instead of a
two-dimensional quadrature.

Conventions: the screen direction enters through q = k sin(alpha) and
p = k sin(beta); the obliquity factor cos(theta) and the full range R
come with the observation point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalError
from .model import (
    LEFT,
    SLITS,
    ApertureGeometry,
    DiffractionPoint,
    OpticalSetup,
    SuperpositionWeights,
    require_propagating_pair,
    require_slit,
)
from .modes import _validate_truncation, wavenumber_table

__all__ = [
    "SlitAmplitude",
    "aperture_integral_x",
    "aperture_integral_y",
    "slit_amplitude",
    "slit_amplitude_scan",
    "superpose",
]

# Width of the switch window around the aperture-integral resonances
# u = +-(h pi / L), as a fraction of pi / L. Inside the window the
# generic closed form loses digits to cancellation and an exact
# rewrite in terms of sinc takes over.
RESONANCE_WINDOW_FRACTION = 1.0e-6


@dataclass(frozen=True)
class SlitAmplitude:
    """Complex on-screen amplitude contributed by one slit at one point."""

    value: complex
    slit: str
    point: DiffractionPoint


def _require_harmonic(harmonic) -> int:
    if not isinstance(harmonic, (int, np.integer)) or harmonic < 1:
        raise ValueError(f"harmonic must be a positive integer, got {harmonic!r}")
    return int(harmonic)


def _phase_sine_integral(u, length: float, harmonic: int):
    """Closed form of the phased mode integral over one aperture axis.

    Evaluates integral_0^L exp(-i u x) sin(h pi x / L) dx. The generic
    expression w (1 - (-1)^h exp(-i u L)) / (w^2 - u^2) with w = h pi / L
    has removable singularities at u = +-w; within a narrow window around
    either resonance an algebraically equivalent sinc form is used, which
    stays exact through the limit u -> +-w.
    """
    u = np.asarray(u, dtype=float)
    w = harmonic * math.pi / length
    window = RESONANCE_WINDOW_FRACTION * math.pi / length
    eps_plus = u - w
    eps_minus = u + w
    near_plus = np.abs(eps_plus) < window
    near_minus = np.abs(eps_minus) < window

    denominator = (w - u) * (w + u)
    safe = np.where(near_plus | near_minus, 1.0, denominator)
    # Numerator 1 - (-1)^h exp(-i u L): the sign flips with the harmonic's parity.
    parity = 1.0 if harmonic % 2 else -1.0
    generic = w * (1.0 + parity * np.exp(-1j * u * length)) / safe

    # Near u = +w the numerator simplifies to 2i exp(-i eps L / 2) sin(eps L / 2)
    # with eps = u - w, independent of the harmonic's parity; likewise at -w.
    # Each limit form is only read inside its own window, where its
    # denominator is near 2w; mask it elsewhere to avoid spurious overflow.
    half = 0.5 * length
    denom_plus = np.where(near_plus, w + u, 2.0 * w)
    denom_minus = np.where(near_minus, w - u, 2.0 * w)
    limit_plus = (
        -1j * (w * length / denom_plus) * np.exp(-1j * eps_plus * half)
        * np.sinc(eps_plus * half / math.pi)
    )
    limit_minus = (
        1j * (w * length / denom_minus) * np.exp(-1j * eps_minus * half)
        * np.sinc(eps_minus * half / math.pi)
    )
    result = np.where(near_plus, limit_plus, generic)
    result = np.where(near_minus, limit_minus, result)
    return result if result.ndim else complex(result)


def aperture_integral_x(length_b: float, harmonic, q):
    """Aperture integral along x: integral_0^b exp(-i q x) sin(N pi x / b) dx.

    ``q`` may be a scalar or an array of transverse wavenumbers.
    """
    if not (math.isfinite(length_b) and length_b > 0.0):
        raise ValueError(f"length_b must be positive, got {length_b!r}")
    return _phase_sine_integral(q, length_b, _require_harmonic(harmonic))


def aperture_integral_y(geometry: ApertureGeometry, harmonic, p, which_slit: str):
    """Aperture integral along y over one slit for the harmonic's mode function.

    The slit offset from the symmetry axis contributes the phase factor
    exp(+-i p d / 2); the mirror relation between the two slits makes the
    right-slit integral the complex conjugate of the left one for real p.
    """
    require_slit(which_slit)
    h = _require_harmonic(harmonic)
    half_gap = geometry.separation_d / 2.0
    p = np.asarray(p, dtype=float)
    if which_slit == LEFT:
        return -np.exp(1j * p * half_gap) * _phase_sine_integral(
            -p, geometry.slit_width_a, h
        )
    return -np.exp(-1j * p * half_gap) * _phase_sine_integral(
        p, geometry.slit_width_a, h
    )


def _mode_sums(
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    which_slit: str,
    sin_alpha: float,
    truncation: tuple[int, int],
):
    """Per-y-harmonic partial sums over the x-harmonics.

    Everything that does not depend on sin(beta) is folded into two
    vectors indexed by the y-harmonic: s0 collects the plain mode weights
    and s1 the weights multiplied by i k_z (the exit-face normal
    derivative). A screen scan then only recombines these with the
    y-integrals per point.
    """
    m_count, n_count = truncation
    amplitude = setup.amplitude(which_slit)
    harmonics_y = 2 * np.arange(m_count) + 1
    harmonics_x = 2 * np.arange(n_count) + 1
    k_z = wavenumber_table(geometry, setup, m_count, n_count)
    q = setup.wavenumber * sin_alpha
    x_integrals = np.array(
        [aperture_integral_x(geometry.slit_length_b, int(h), q) for h in harmonics_x]
    )
    coeff = 16.0 * amplitude / (np.outer(harmonics_y, harmonics_x) * math.pi ** 2)
    weights = coeff * np.exp(1j * k_z * geometry.thickness_c) * x_integrals[None, :]
    s0 = weights.sum(axis=1)
    s1 = (1j * k_z * weights).sum(axis=1)
    return harmonics_y, s0, s1


def _amplitude_values(
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    which_slit: str,
    sin_beta: np.ndarray,
    sin_alpha: float,
    cos_theta: np.ndarray,
    range_r: np.ndarray,
    truncation: tuple[int, int],
) -> np.ndarray:
    """Vectorized far-field amplitude of one slit over screen points."""
    k = setup.wavenumber
    harmonics_y, s0, s1 = _mode_sums(geometry, setup, which_slit, sin_alpha, truncation)
    p = k * sin_beta
    y_integrals = np.stack(
        [aperture_integral_y(geometry, int(h), p, which_slit) for h in harmonics_y]
    )  # (M, P)
    inner = y_integrals.T @ s1 + (1j * k - 1.0 / range_r) * cos_theta * (
        y_integrals.T @ s0
    )
    prefactor = (
        -np.exp(1j * k * range_r)
        / (4.0 * math.pi * range_r)
        * np.exp(-1j * k * cos_theta * geometry.thickness_c)
    )
    return prefactor * inner


def slit_amplitude(
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    which_slit: str,
    point: DiffractionPoint,
    truncation=(64, 64),
) -> SlitAmplitude:
    """On-screen amplitude of one slit at a single observation point.

    The result is the aperture surface integral of the truncated slit
    field against the outgoing far-field kernel, evaluated in closed form
    mode by mode. Evanescent modes enter with their decayed exit values.
    """
    require_slit(which_slit)
    require_propagating_pair(geometry, setup)
    truncation = _validate_truncation(truncation)
    values = _amplitude_values(
        geometry,
        setup,
        which_slit,
        np.array([point.sin_beta]),
        point.sin_alpha,
        np.array([point.cos_theta]),
        np.array([point.range_r]),
        truncation,
    )
    value = complex(values[0])
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise NumericalError("slit amplitude is not finite")
    return SlitAmplitude(value=value, slit=which_slit, point=point)


def slit_amplitude_scan(
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    sin_beta: np.ndarray,
    sin_alpha: float = 0.0,
    truncation=(64, 64),
) -> tuple[np.ndarray, np.ndarray]:
    """Amplitudes of both slits over a grid of sin(beta) values.

    Returns the pair (left, right) of complex arrays. The observation
    points sit on the plane z = l, so the range and obliquity follow
    from the direction sines exactly as in
    :meth:`DiffractionPoint.from_sin_beta`.
    """
    require_propagating_pair(geometry, setup)
    truncation = _validate_truncation(truncation)
    sin_beta = np.asarray(sin_beta, dtype=float)
    if np.any(sin_alpha ** 2 + sin_beta ** 2 >= 1.0):
        raise ValueError("sin_alpha^2 + sin_beta^2 must stay below 1 on the grid")
    cos_theta = np.sqrt(1.0 - sin_alpha ** 2 - sin_beta ** 2)
    range_r = setup.screen_distance_l / cos_theta
    results = []
    for slit in SLITS:
        values = _amplitude_values(
            geometry, setup, slit, sin_beta, sin_alpha, cos_theta, range_r, truncation
        )
        if not np.all(np.isfinite(values.real) & np.isfinite(values.imag)):
            raise NumericalError("slit amplitude scan produced non-finite values")
        results.append(values)
    return results[0], results[1]


def superpose(
    phi1: SlitAmplitude, phi2: SlitAmplitude, weights: SuperpositionWeights
) -> complex:
    """Weighted coherent sum c1 * phi1 + c2 * phi2 at a common point."""
    if phi1.point != phi2.point:
        raise ValueError("cannot superpose amplitudes at different observation points")
    return weights.c1 * phi1.value + weights.c2 * phi2.value
