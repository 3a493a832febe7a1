"""Double-slit diffraction simulator.

Computes on-screen intensity three ways (coherent and decoherent slit-mode
expansions propagated by an aperture surface integral, plus the classical
Fraunhofer formula), extracts fringe statistics, and compares or fits the
models against measured fringe scans.
"""

__version__ = "0.1.0"

from .errors import ConfigError, DataError, NumericalError, SlitDiffError
from .model import (
    LEFT,
    RIGHT,
    SLITS,
    ApertureGeometry,
    CoherenceModel,
    DiffractionPoint,
    ModeIndex,
    OpticalSetup,
    SuperpositionWeights,
    reference_parameters,
)
from .modes import (
    LongitudinalWavenumber,
    ModeCoefficients,
    fourier_coefficients,
    longitudinal_wavenumber,
    reconstruction_l2_error,
    slit_field_on_grid,
    slit_wavefunction,
)
from .diffraction import (
    SlitAmplitude,
    aperture_integral_x,
    aperture_integral_y,
    slit_amplitude,
    slit_amplitude_scan,
    superpose,
)
from .intensity import (
    MODELS,
    IntensityCurve,
    VisibilityReport,
    classical_intensity,
    coherent_intensity,
    curve_csv_text,
    decoherent_intensity,
    fringe_visibility,
    scan_curve,
    truncation_shift,
)
from .experiment import (
    ExperimentDataset,
    FitReport,
    compare,
    fit_parameters,
    load_dataset,
    synthetic_dataset,
)
from .config import (
    PARAMETER_KEYS,
    RunConfig,
    beta_grid,
    parse_parameter_text,
    realize_parameters,
    reference_parameter_map,
)

__all__ = [
    "__version__",
    "SlitDiffError",
    "ConfigError",
    "DataError",
    "NumericalError",
    "LEFT",
    "RIGHT",
    "SLITS",
    "ApertureGeometry",
    "OpticalSetup",
    "SuperpositionWeights",
    "CoherenceModel",
    "ModeIndex",
    "DiffractionPoint",
    "reference_parameters",
    "ModeCoefficients",
    "LongitudinalWavenumber",
    "fourier_coefficients",
    "longitudinal_wavenumber",
    "slit_wavefunction",
    "slit_field_on_grid",
    "reconstruction_l2_error",
    "SlitAmplitude",
    "aperture_integral_x",
    "aperture_integral_y",
    "slit_amplitude",
    "slit_amplitude_scan",
    "superpose",
    "MODELS",
    "IntensityCurve",
    "VisibilityReport",
    "coherent_intensity",
    "decoherent_intensity",
    "classical_intensity",
    "scan_curve",
    "fringe_visibility",
    "curve_csv_text",
    "truncation_shift",
    "ExperimentDataset",
    "FitReport",
    "load_dataset",
    "synthetic_dataset",
    "compare",
    "fit_parameters",
    "PARAMETER_KEYS",
    "RunConfig",
    "reference_parameter_map",
    "parse_parameter_text",
    "realize_parameters",
    "beta_grid",
]
