"""Normalized probe susceptibilities chi+ (sigma+ component) and chi- (sigma-).

Normalization: a bare resonant line has chi = i. Closed forms hold for a
sigma- control (G2 = 0) in the weak-probe limit; ``chi_numeric`` extracts
the same quantities from the full steady state and works for any control
polarization.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lindblad import steady_state
from .params import G, L1, L2, SystemParams

DEFAULT_PROBE_EPS = 1e-4


@dataclass(frozen=True)
class SusceptibilityPair:
    chi_plus: complex
    chi_minus: complex

    def __iter__(self):
        yield self.chi_plus
        yield self.chi_minus


def chi_minus_lineshape(delta, Omega, gamma):
    """i*gamma / (gamma + i(delta - Omega)); broadcasts over numpy arrays."""
    return 1j * gamma / (gamma + 1j * (delta - Omega))


def chi_plus_lineshape(delta, Delta, Omega, G1_abs2, gamma, Gamma_sum):
    """Autler-Townes dressed sigma+ response; broadcasts over numpy arrays.

    ``G1_abs2`` must be a scalar. Without control the two-photon factor
    cancels and the bare line is evaluated with the same expression as
    chi-, so chi+(Omega) and chi-(-Omega) agree bit for bit.
    """
    if G1_abs2 == 0:
        return chi_minus_lineshape(delta, -Omega, gamma)
    two_photon = Gamma_sum + 1j * (Delta + delta)
    return 1j * gamma * two_photon / (G1_abs2 + (gamma + 1j * (delta + Omega)) * two_photon)


def chi_minus_closed(p: SystemParams) -> complex:
    """chi- for the |g>-|2> line; blind to the sigma- control."""
    return complex(chi_minus_lineshape(p.delta, p.Omega, p.gamma2))


def chi_plus_closed(p: SystemParams) -> complex:
    return complex(
        chi_plus_lineshape(p.delta, p.Delta, p.Omega, abs(p.G1) ** 2, p.gamma1, p.Gamma1 + p.Gamma2)
    )


def chi_closed(p: SystemParams) -> SusceptibilityPair:
    return SusceptibilityPair(chi_plus_closed(p), chi_minus_closed(p))


def chi_numeric(p: SystemParams, probe_eps: float = DEFAULT_PROBE_EPS) -> SusceptibilityPair:
    """Weak-probe susceptibilities from the numeric steady state.

    The probe couplings of ``p`` are replaced by ``g1 = g2 = probe_eps``
    and chi+ = gamma1*rho_1g/g1, chi- = gamma2*rho_2g/g2. The leading
    saturation error is O(probe_eps**2).

    Raises
    ------
    ValueError
        If ``probe_eps`` is outside [1e-6, 1e-2].
    SingularSystem
        Propagated from the steady-state solve.
    """
    if not 1e-6 <= probe_eps <= 1e-2:
        raise ValueError(f"probe_eps must lie in [1e-6, 1e-2], got {probe_eps!r}")
    rho = steady_state(p.replace(g1=probe_eps, g2=probe_eps))
    return SusceptibilityPair(
        complex(p.gamma1 * rho[L1, G] / probe_eps),
        complex(p.gamma2 * rho[L2, G] / probe_eps),
    )
