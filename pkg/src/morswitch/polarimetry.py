"""Observables of the probe after the cell: rotation angle, crossed-analyzer
transmission, spectra, control-field enhancement and switch metrics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .doppler import DopplerConfig, doppler_average
from .errors import GainWarning, MorswitchError, NumericalError, UndefinedBaseline
from .params import SystemParams
from .susceptibility import DEFAULT_PROBE_EPS, SusceptibilityPair, chi_closed, chi_numeric

GAIN_TOLERANCE = 1e-9
BASELINE_FLOOR = 1e-300


@dataclass(frozen=True)
class MediumConfig:
    alpha_l: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha_l) and self.alpha_l >= 0):
            raise ValueError(f"alpha_l must be finite and >= 0, got {self.alpha_l!r}")


@dataclass(frozen=True)
class DeltaGrid:
    delta_min: float
    delta_max: float
    steps: int

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("grid needs at least one point")
        if self.delta_max < self.delta_min:
            raise ValueError("delta_max must be >= delta_min")

    def values(self):
        if self.steps == 1:
            return np.array([float(self.delta_min)])
        return np.linspace(self.delta_min, self.delta_max, self.steps)


@dataclass(frozen=True)
class SpectrumRecord:
    delta: float
    chi_plus: complex
    chi_minus: complex
    theta_rad: float
    t_y: float


@dataclass(frozen=True)
class SwitchMetrics:
    peak_ty: float
    delta_at_peak: float
    extinction_off: float


def rotation_angle(chis: SusceptibilityPair, m: MediumConfig) -> float:
    """theta = (alpha_l/4) Re(chi- - chi+), in radians.

    With this prefactor a non-absorbing medium gives T_y = sin(theta)**2.
    """
    return float(m.alpha_l / 4.0 * (chis.chi_minus - chis.chi_plus).real)


def transmission_ty(chis: SusceptibilityPair, m: MediumConfig) -> float:
    """Fraction of the x-polarized input passing a y analyzer.

    Warns with ``GainWarning`` if either Im(chi) is below -1e-9, in which
    case the value may legitimately exceed 1.
    """
    if min(chis.chi_plus.imag, chis.chi_minus.imag) < -GAIN_TOLERANCE:
        warnings.warn(f"amplifying medium: {chis}", GainWarning, stacklevel=2)
    half = 0.5j * m.alpha_l
    return float(0.25 * abs(np.exp(half * chis.chi_plus) - np.exp(half * chis.chi_minus)) ** 2)


def susceptibilities(
    p: SystemParams,
    doppler: DopplerConfig | None = None,
    numeric: bool = False,
    probe_eps: float = DEFAULT_PROBE_EPS,
) -> SusceptibilityPair:
    """chi+- at one parameter point, homogeneous or Doppler averaged.

    Closed forms are used unless ``numeric`` is set or the control has a
    sigma+ part (G2 != 0), which only the full solver handles.
    """
    closed = not numeric and p.G2 == 0
    if doppler is not None:
        return doppler_average(p, doppler, use_closed_forms=closed, probe_eps=probe_eps)
    if closed:
        return chi_closed(p)
    return chi_numeric(p, probe_eps)


def _record(p, m, doppler, numeric, probe_eps):
    try:
        chis = susceptibilities(p, doppler, numeric, probe_eps)
    except MorswitchError as exc:
        raise NumericalError(p.delta, exc) from exc
    return SpectrumRecord(
        delta=float(p.delta),
        chi_plus=chis.chi_plus,
        chi_minus=chis.chi_minus,
        theta_rad=rotation_angle(chis, m),
        t_y=transmission_ty(chis, m),
    )


def spectrum(
    p: SystemParams,
    m: MediumConfig,
    doppler: DopplerConfig | None,
    grid: DeltaGrid,
    numeric: bool = False,
    probe_eps: float = DEFAULT_PROBE_EPS,
) -> list[SpectrumRecord]:
    """One record per probe detuning on the uniform grid, ascending in delta.

    ``p.delta`` is ignored. Failures are re-raised as ``NumericalError``
    carrying the offending delta.
    """
    return [
        _record(p.replace(delta=float(delta)), m, doppler, numeric, probe_eps)
        for delta in grid.values()
    ]


def enhancement_factor(
    p: SystemParams,
    m: MediumConfig,
    doppler: DopplerConfig | None = None,
    delta: float | None = None,
    numeric: bool = False,
    probe_eps: float = DEFAULT_PROBE_EPS,
) -> float:
    """T_y with the control as given over T_y with G1 = G2 = 0, at one delta.

    Returns +inf and warns ``UndefinedBaseline`` when the control-off
    transmission is below 1e-300.
    """
    if delta is not None:
        p = p.replace(delta=float(delta))
    on = _record(p, m, doppler, numeric, probe_eps).t_y
    off_params = p.without_control()
    if off_params == p:
        off = on
    else:
        off = _record(off_params, m, doppler, numeric, probe_eps).t_y
    if off <= BASELINE_FLOOR:
        warnings.warn(
            f"control-off transmission {off!r} at delta={p.delta!r} underflows",
            UndefinedBaseline,
            stacklevel=2,
        )
        return math.inf
    return on / off


def switch_metrics(
    p: SystemParams,
    m: MediumConfig,
    doppler: DopplerConfig | None,
    grid: DeltaGrid,
    numeric: bool = False,
    probe_eps: float = DEFAULT_PROBE_EPS,
) -> SwitchMetrics:
    records = spectrum(p, m, doppler, grid, numeric, probe_eps)
    # argmax returns the first maximum, i.e. the smallest delta
    best = records[int(np.argmax([r.t_y for r in records]))]
    off_params = p.without_control().replace(delta=best.delta)
    if off_params == p.replace(delta=best.delta):
        extinction_off = best.t_y
    else:
        extinction_off = _record(off_params, m, doppler, numeric, probe_eps).t_y
    return SwitchMetrics(peak_ty=best.t_y, delta_at_peak=best.delta, extinction_off=extinction_off)
