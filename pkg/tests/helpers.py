"""Independent numerical oracles shared by the test modules.

Everything here deliberately avoids the closed forms under test: the
1-D integrals go through adaptive quadrature on the raw integrands, and
the far-field amplitude goes through a dense Gauss-Legendre surface
integral with a finite-difference normal derivative.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import quad

from slitdiff.model import LEFT, ApertureGeometry, DiffractionPoint, OpticalSetup
from slitdiff.modes import slit_field_on_grid


def x_integral_quadrature(u: float, length: float, harmonic: int) -> complex:
    """Adaptive quadrature of integral_0^L exp(-i u x) sin(h pi x / L) dx."""
    w = harmonic * np.pi / length
    real, _ = quad(
        lambda x: np.cos(u * x) * np.sin(w * x), 0.0, length,
        limit=400, epsabs=1.0e-14, epsrel=1.0e-11,
    )
    imag, _ = quad(
        lambda x: -np.sin(u * x) * np.sin(w * x), 0.0, length,
        limit=400, epsabs=1.0e-14, epsrel=1.0e-11,
    )
    return complex(real, imag)


def y_integral_quadrature(
    geometry: ApertureGeometry, harmonic: int, p: float, which_slit: str
) -> complex:
    """Adaptive quadrature of the y aperture integral over the actual slit.

    Integrates exp(-i p y) against the slit's own mode function on its
    own y-interval, fixing the offset phases independently of the
    closed-form implementation.
    """
    y_low, y_high = geometry.slit_y_interval(which_slit)
    half = geometry.separation_d / 2.0
    width = geometry.slit_width_a

    if which_slit == LEFT:
        def mode(y):
            return np.sin(harmonic * np.pi * (half + y) / width)
    else:
        def mode(y):
            return np.sin(harmonic * np.pi * (half - y) / width)

    real, _ = quad(
        lambda y: np.cos(p * y) * mode(y), y_low, y_high,
        limit=400, epsabs=1.0e-14, epsrel=1.0e-11,
    )
    imag, _ = quad(
        lambda y: -np.sin(p * y) * mode(y), y_low, y_high,
        limit=400, epsabs=1.0e-14, epsrel=1.0e-11,
    )
    return complex(real, imag)


def kirchhoff_surface_integral(
    geometry: ApertureGeometry,
    setup: OpticalSetup,
    which_slit: str,
    point: DiffractionPoint,
    truncation=(64, 64),
    nodes: int = 512,
    fd_step: float = 2.0e-12,
) -> complex:
    """Brute-force far-field amplitude: quadrature of the exit-face integral.

    The exit field and its normal derivative are sampled on a tensor
    Gauss-Legendre grid; the derivative comes from a one-sided
    second-order finite difference into the slit. The exit-face normal
    points back into the slit, so -d/dz enters the kernel.
    """
    k = setup.wavenumber
    q = k * point.sin_alpha
    p = k * point.sin_beta
    y_low, y_high = geometry.slit_y_interval(which_slit)

    gauss_x, gauss_w = np.polynomial.legendre.leggauss(nodes)
    x_nodes = 0.5 * geometry.slit_length_b * (gauss_x + 1.0)
    x_weights = 0.5 * geometry.slit_length_b * gauss_w
    y_nodes = y_low + 0.5 * (y_high - y_low) * (gauss_x + 1.0)
    y_weights = 0.5 * (y_high - y_low) * gauss_w

    depth = geometry.thickness_c
    f0 = slit_field_on_grid(geometry, setup, which_slit, x_nodes, y_nodes, depth, truncation)
    f1 = slit_field_on_grid(
        geometry, setup, which_slit, x_nodes, y_nodes, depth - fd_step, truncation
    )
    f2 = slit_field_on_grid(
        geometry, setup, which_slit, x_nodes, y_nodes, depth - 2.0 * fd_step, truncation
    )
    dfdz = (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * fd_step)

    phase = np.exp(-1j * p * y_nodes)[:, None] * np.exp(-1j * q * x_nodes)[None, :]
    integrand = phase * (-dfdz - (1j * k - 1.0 / point.range_r) * point.cos_theta * f0)
    total = y_weights @ integrand @ x_weights
    prefactor = (
        -np.exp(1j * k * point.range_r)
        / (4.0 * np.pi * point.range_r)
        * np.exp(-1j * k * point.cos_theta * depth)
    )
    return complex(prefactor * total)


def square_wave_l2_tail(m_count: int, n_count: int) -> float:
    """Parseval prediction for the flat-field reconstruction L2 error.

    The uniform aperture field decomposes over the product mode basis
    with weights proportional to 1/((2m+1)(2n+1)); the captured energy
    fraction per axis is s(T) = sum_{m<T} (2m+1)^-2 / (pi^2/8), and the
    relative L2 error of the (M, N)-truncated series is
    sqrt(1 - s(M) s(N)).
    """

    def captured(count: int) -> float:
        harmonics = 2.0 * np.arange(count) + 1.0
        return float(np.sum(harmonics ** -2) / (np.pi ** 2 / 8.0))

    return float(np.sqrt(1.0 - captured(m_count) * captured(n_count)))
