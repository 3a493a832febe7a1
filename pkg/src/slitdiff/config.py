"""Flat key-value parameter files and run configuration.

A parameter file holds ``key = value`` lines (one per line, ``#``
comments allowed) overriding any subset of the physical parameters;
unspecified keys keep the built-in reference values. This keeps run
configs small: most runs vary one or two knobs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .intensity import MODELS, NORMALIZATIONS
from .model import (
    ApertureGeometry,
    CoherenceModel,
    OpticalSetup,
    SuperpositionWeights,
    reference_parameters,
    require_propagating_pair,
)

__all__ = [
    "PARAMETER_KEYS",
    "RunConfig",
    "reference_parameter_map",
    "parse_parameter_text",
    "realize_parameters",
    "beta_grid",
]

PARAMETER_KEYS = (
    "slit_width_a",
    "slit_length_b",
    "separation_d",
    "thickness_c",
    "wavelength",
    "amplitude_a1",
    "amplitude_a2",
    "screen_distance",
    "c1",
    "c2",
    "coherence_lambda",
)


def reference_parameter_map() -> dict[str, float]:
    """The built-in reference configuration as a flat parameter map."""
    geometry, setup, weights, coherence = reference_parameters()
    return {
        "slit_width_a": geometry.slit_width_a,
        "slit_length_b": geometry.slit_length_b,
        "separation_d": geometry.separation_d,
        "thickness_c": geometry.thickness_c,
        "wavelength": setup.wavelength_lambda,
        "amplitude_a1": setup.amplitude_a1,
        "amplitude_a2": setup.amplitude_a2,
        "screen_distance": setup.screen_distance_l,
        "c1": weights.c1,
        "c2": weights.c2,
        "coherence_lambda": coherence.lambda_t,
    }


def parse_parameter_text(text: str) -> dict[str, float]:
    """Parse ``key = value`` lines into a full parameter map.

    Unknown keys, repeated keys, and non-numeric values are rejected
    with the offending line number; missing keys fall back to the
    reference values.
    """
    values = reference_parameter_map()
    seen: set[str] = set()
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value_text = line.partition("=")
        key = key.strip()
        if key not in PARAMETER_KEYS:
            raise ConfigError(
                f"line {lineno}: unknown parameter {key!r}; valid keys: "
                + ", ".join(PARAMETER_KEYS)
            )
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate parameter {key!r}")
        seen.add(key)
        try:
            values[key] = float(value_text.strip())
        except ValueError:
            raise ConfigError(
                f"line {lineno}: value for {key!r} is not a number: {value_text.strip()!r}"
            ) from None
    return values


def realize_parameters(
    parameters: dict,
) -> tuple[ApertureGeometry, OpticalSetup, SuperpositionWeights, CoherenceModel]:
    """Build the physical objects from a flat parameter map.

    Any violated physical invariant surfaces as a ConfigError naming
    the underlying constraint.
    """
    unknown = [key for key in parameters if key not in PARAMETER_KEYS]
    if unknown:
        raise ConfigError(f"unknown parameter keys {unknown}")
    values = reference_parameter_map()
    values.update({key: float(parameters[key]) for key in parameters})
    try:
        geometry = ApertureGeometry(
            slit_width_a=values["slit_width_a"],
            slit_length_b=values["slit_length_b"],
            separation_d=values["separation_d"],
            thickness_c=values["thickness_c"],
        )
        setup = OpticalSetup(
            wavelength_lambda=values["wavelength"],
            amplitude_a1=values["amplitude_a1"],
            amplitude_a2=values["amplitude_a2"],
            screen_distance_l=values["screen_distance"],
        )
        weights = SuperpositionWeights(c1=values["c1"], c2=values["c2"])
        coherence = CoherenceModel(lambda_t=values["coherence_lambda"])
        require_propagating_pair(geometry, setup)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return geometry, setup, weights, coherence


@dataclass(frozen=True)
class RunConfig:
    """Everything one scan run needs, in plain values."""

    parameters: dict
    model: str
    beta_min: float
    beta_max: float
    beta_step: float
    truncation_m: int
    truncation_n: int
    output_path: str
    normalization: str

    def __post_init__(self) -> None:
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.normalization not in NORMALIZATIONS:
            raise ConfigError(
                f"normalization must be one of {NORMALIZATIONS}, got {self.normalization!r}"
            )
        if not self.beta_min < self.beta_max:
            raise ConfigError("beta_min must be below beta_max")
        if not self.beta_step > 0.0:
            raise ConfigError("beta_step must be positive")
        if self.truncation_m < 1 or self.truncation_n < 1:
            raise ConfigError("truncation counts must be at least 1")


def beta_grid(beta_min: float, beta_max: float, beta_step: float) -> np.ndarray:
    """Uniform grid from beta_min in steps of beta_step, not exceeding beta_max.

    The endpoint is included when it lands on the step lattice within
    floating tolerance.
    """
    if not beta_min < beta_max:
        raise ConfigError("beta_min must be below beta_max")
    if not beta_step > 0.0:
        raise ConfigError("beta_step must be positive")
    count = int(np.floor((beta_max - beta_min) / beta_step * (1.0 + 1.0e-12))) + 1
    grid = beta_min + beta_step * np.arange(count)
    return grid[grid <= beta_max + 1.0e-12 * max(abs(beta_min), abs(beta_max), beta_step)]
