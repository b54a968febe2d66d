"""Steady-state optics of a four-level atom in a magnetic field with a
coherent control laser: susceptibilities, magneto-optical rotation,
crossed-polarizer transmission and Doppler averaging."""

from .doppler import DopplerConfig, doppler_average, shifted_params
from .errors import (
    GainWarning,
    GeometryUnsupported,
    MorswitchError,
    QuadratureNotConverged,
    SingularSystem,
    StepTooLarge,
    UndefinedBaseline,
)
from .lindblad import (
    DensityMatrix,
    Liouvillian,
    build_hamiltonian,
    build_liouvillian,
    steady_state,
    time_evolve,
)
from .params import SystemParams
from .polarimetry import (
    DeltaGrid,
    MediumConfig,
    SpectrumRecord,
    SwitchMetrics,
    enhancement_factor,
    rotation_angle,
    spectrum,
    switch_metrics,
    transmission_ty,
)
from .susceptibility import (
    SusceptibilityPair,
    chi_minus_closed,
    chi_numeric,
    chi_plus_closed,
)

__version__ = "0.1.0"
