"""Core physical types for the double-slit model.

All quantities are SI (metres for lengths, radians implicit in wave
numbers). Screen directions enter as direction sines, which is the
natural variable for far-field formulas: a point at lateral offsets
(x, y) on a screen a distance l behind the slits has
sin(alpha) = x / R and sin(beta) = y / R with R the full range.

The slit pair is symmetric about y = 0. The left slit occupies
y in [-d/2 - a, -d/2], the right slit y in [d/2, d/2 + a]; both span
x in [0, b] and the screen thickness z in [0, c].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LEFT = "left"
RIGHT = "right"
SLITS = (LEFT, RIGHT)

# Tolerance on |c1^2 + c2^2 - 1| for superposition weights.
WEIGHT_NORM_TOL = 1.0e-3


def _require_positive(value: float, name: str) -> None:
    if not (math.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be finite and strictly positive, got {value!r}")


def _require_finite(value: float, name: str) -> None:
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")


def require_slit(which_slit: str) -> str:
    if which_slit not in SLITS:
        raise ValueError(f"which_slit must be one of {SLITS}, got {which_slit!r}")
    return which_slit


@dataclass(frozen=True)
class ApertureGeometry:
    """Two identical rectangular slits in an opaque screen of finite thickness.

    Parameters
    ----------
    slit_width_a:
        Width of each slit along y.
    slit_length_b:
        Extent of each slit along x.
    separation_d:
        Gap between the two inner slit edges.
    thickness_c:
        Screen thickness along the propagation axis z.
    """

    slit_width_a: float
    slit_length_b: float
    separation_d: float
    thickness_c: float

    def __post_init__(self) -> None:
        _require_positive(self.slit_width_a, "slit_width_a")
        _require_positive(self.slit_length_b, "slit_length_b")
        _require_positive(self.separation_d, "separation_d")
        _require_positive(self.thickness_c, "thickness_c")

    def slit_y_interval(self, which_slit: str) -> tuple[float, float]:
        """The [low, high] range of y covered by the given slit."""
        require_slit(which_slit)
        half = self.separation_d / 2.0
        if which_slit == LEFT:
            return (-half - self.slit_width_a, -half)
        return (half, half + self.slit_width_a)


@dataclass(frozen=True)
class OpticalSetup:
    """Illumination and observation parameters.

    ``amplitude_a1`` drives the left slit and ``amplitude_a2`` the right
    one; unequal values model an asymmetrically lit pair. The observation
    screen sits a distance ``screen_distance_l`` behind the slit exit.
    """

    wavelength_lambda: float
    amplitude_a1: float
    amplitude_a2: float
    screen_distance_l: float

    def __post_init__(self) -> None:
        _require_positive(self.wavelength_lambda, "wavelength_lambda")
        _require_positive(self.screen_distance_l, "screen_distance_l")
        _require_finite(self.amplitude_a1, "amplitude_a1")
        _require_finite(self.amplitude_a2, "amplitude_a2")

    @property
    def wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength_lambda

    def amplitude(self, which_slit: str) -> float:
        require_slit(which_slit)
        return self.amplitude_a1 if which_slit == LEFT else self.amplitude_a2


def require_propagating_pair(geometry: ApertureGeometry, setup: OpticalSetup) -> None:
    """Reject setups where not even the lowest slit mode propagates.

    The widest transverse mode fits half a wavelength across the slit
    width, so propagation through the screen requires lambda < 2 a.
    """
    if setup.wavelength_lambda >= 2.0 * geometry.slit_width_a:
        raise ValueError(
            "wavelength_lambda must be below twice slit_width_a for the slits "
            f"to transmit ({setup.wavelength_lambda!r} >= {2.0 * geometry.slit_width_a!r})"
        )


@dataclass(frozen=True)
class SuperpositionWeights:
    """Coefficients of the two single-slit amplitudes in the combined state."""

    c1: float
    c2: float

    def __post_init__(self) -> None:
        _require_finite(self.c1, "c1")
        _require_finite(self.c2, "c2")
        norm = self.c1 * self.c1 + self.c2 * self.c2
        if abs(norm - 1.0) > WEIGHT_NORM_TOL:
            raise ValueError(
                f"weights must satisfy c1^2 + c2^2 = 1 within {WEIGHT_NORM_TOL}, "
                f"got {norm!r}"
            )


@dataclass(frozen=True)
class CoherenceModel:
    """Degree of mutual coherence between the two slit paths.

    ``lambda_t`` runs from 0 (fully decohered, no cross term) to 1
    (fully coherent). The derived ``alpha_sq`` is the weight of the
    incoherent admixture that produces this value of ``lambda_t`` when
    a pure superposition is mixed with an equal-population background:
    lambda_t = 2 alpha / (1 + alpha^2) has no real solution above 1,
    and inverting at fixed mixing form gives alpha^2 = lambda_t / (2 - lambda_t).
    """

    lambda_t: float

    def __post_init__(self) -> None:
        _require_finite(self.lambda_t, "lambda_t")
        if not 0.0 <= self.lambda_t <= 1.0:
            raise ValueError(f"lambda_t must lie in [0, 1], got {self.lambda_t!r}")

    @property
    def alpha_sq(self) -> float:
        return self.lambda_t / (2.0 - self.lambda_t)


@dataclass(frozen=True)
class ModeIndex:
    """Index (m, n) of one transverse slit mode.

    Only odd harmonics appear in the expansion of a uniformly lit slit;
    the actual harmonic numbers are 2m + 1 along y and 2n + 1 along x.
    """

    m: int
    n: int

    def __post_init__(self) -> None:
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise ValueError("mode indices must be integers")
        if self.m < 0 or self.n < 0:
            raise ValueError(f"mode indices must be non-negative, got ({self.m}, {self.n})")

    @property
    def harmonic_y(self) -> int:
        return 2 * self.m + 1

    @property
    def harmonic_x(self) -> int:
        return 2 * self.n + 1


@dataclass(frozen=True)
class DiffractionPoint:
    """One observation point on the far screen, in direction-sine form.

    ``range_r`` is the full distance from the slit exit to the point;
    ``cos_theta`` is the obliquity factor of the propagation direction.
    The three direction components must form a unit vector.
    """

    sin_alpha: float
    sin_beta: float
    cos_theta: float
    range_r: float

    def __post_init__(self) -> None:
        _require_finite(self.sin_alpha, "sin_alpha")
        _require_finite(self.sin_beta, "sin_beta")
        _require_positive(self.range_r, "range_r")
        s2 = self.sin_alpha ** 2 + self.sin_beta ** 2
        if s2 > 1.0:
            raise ValueError(
                f"sin_alpha^2 + sin_beta^2 must not exceed 1, got {s2!r}"
            )
        if self.cos_theta < 0.0:
            raise ValueError("cos_theta must be non-negative (forward half-space)")
        if abs(self.cos_theta ** 2 + s2 - 1.0) > 1.0e-9:
            raise ValueError("direction cosines must form a unit vector")

    @classmethod
    def from_sin_beta(
        cls, sin_beta: float, setup: OpticalSetup, sin_alpha: float = 0.0
    ) -> "DiffractionPoint":
        """Point at the given direction sines on the screen plane z = l."""
        s2 = sin_alpha * sin_alpha + sin_beta * sin_beta
        if s2 >= 1.0:
            raise ValueError(
                "sin_alpha^2 + sin_beta^2 must be below 1 for a finite screen point"
            )
        cos_theta = math.sqrt(1.0 - s2)
        return cls(
            sin_alpha=sin_alpha,
            sin_beta=sin_beta,
            cos_theta=cos_theta,
            range_r=setup.screen_distance_l / cos_theta,
        )

    @classmethod
    def from_screen_offset(
        cls, offset_s: float, setup: OpticalSetup, sin_alpha: float = 0.0
    ) -> "DiffractionPoint":
        """Point a lateral distance ``offset_s`` along y from the screen centre.

        The range is taken in the y-z plane, range_r = sqrt(l^2 + s^2),
        and sin_beta = s / range_r. A nonzero ``sin_alpha`` tilts the
        direction out of plane; the combination must stay physical.
        """
        _require_finite(offset_s, "offset_s")
        _require_finite(sin_alpha, "sin_alpha")
        range_r = math.hypot(setup.screen_distance_l, offset_s)
        sin_beta = offset_s / range_r
        s2 = sin_alpha * sin_alpha + sin_beta * sin_beta
        if s2 > 1.0:
            raise ValueError("sin_alpha^2 + sin_beta^2 must not exceed 1")
        return cls(
            sin_alpha=sin_alpha,
            sin_beta=sin_beta,
            cos_theta=math.sqrt(1.0 - s2),
            range_r=range_r,
        )


def reference_parameters() -> tuple[ApertureGeometry, OpticalSetup, SuperpositionWeights, CoherenceModel]:
    """The near-infrared benchmark configuration used throughout the tests.

    Slits 130 um wide, 4.4 mm long and 85 um deep, separated by 400 um,
    lit at 916 nm with slightly unequal slit amplitudes, observed 4 m away.
    """
    geometry = ApertureGeometry(
        slit_width_a=1.3e-4,
        slit_length_b=4.4e-3,
        separation_d=4.0e-4,
        thickness_c=8.5e-5,
    )
    setup = OpticalSetup(
        wavelength_lambda=9.16e-7,
        amplitude_a1=160.9,
        amplitude_a2=159.3,
        screen_distance_l=4.0,
    )
    weights = SuperpositionWeights(c1=0.715, c2=0.699)
    coherence = CoherenceModel(lambda_t=0.873)
    return geometry, setup, weights, coherence
