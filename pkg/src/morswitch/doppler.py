"""Thermal velocity averaging of chi+ and chi-.

The velocity distribution is a 1-D Maxwellian in kv,
f(kv) = exp(-(kv/D)**2) / (D*sqrt(pi)), with probe and control
wavenumbers taken equal. The probe travels along +z.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_hermite

from .errors import GeometryUnsupported, QuadratureNotConverged
from .params import SystemParams
from .susceptibility import (
    DEFAULT_PROBE_EPS,
    SusceptibilityPair,
    chi_closed,
    chi_minus_lineshape,
    chi_numeric,
    chi_plus_lineshape,
)

GEOMETRIES = ("counter", "co")
METHODS = ("adaptive-simpson", "gauss-hermite")

GH_TOLERANCE = 1e-8
GH_MAX_ESCALATION = 4
SIMPSON_RANGE = 8.0
SIMPSON_MAX_LEVELS = 60


@dataclass(frozen=True)
class DopplerConfig:
    width: float = 100.0
    geometry: str = "counter"
    quadrature_nodes: int = 201
    method: str = "adaptive-simpson"
    tolerance: float = 1e-10

    def __post_init__(self):
        if not (math.isfinite(self.width) and self.width >= 0):
            raise ValueError(f"Doppler width must be finite and >= 0, got {self.width!r}")
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"geometry must be one of {GEOMETRIES}, got {self.geometry!r}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.quadrature_nodes < 11:
            raise ValueError("quadrature_nodes must be >= 11")
        if self.method == "adaptive-simpson" and self.quadrature_nodes % 2 == 0:
            raise ValueError("adaptive-simpson needs an odd number of initial nodes")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")


def _control_sign(geometry):
    if geometry == "counter":
        return 1.0
    if geometry == "co":
        return -1.0
    raise ValueError(f"unknown geometry {geometry!r}")


def shifted_params(p: SystemParams, kv: float, geometry: str) -> SystemParams:
    """Parameters seen by an atom with Doppler shift ``kv``.

    The probe detuning becomes delta - kv. A counter-propagating control
    sees Delta + kv, leaving the two-photon detuning Delta + delta
    unchanged; a co-propagating control sees Delta - kv.
    """
    s = _control_sign(geometry)
    return p.replace(delta=p.delta - kv, Delta=p.Delta + s * kv)


def _closed_integrand(p, geometry):
    if p.G2 != 0:
        raise GeometryUnsupported("closed forms need a pure sigma- control (G2 = 0)")
    s = _control_sign(geometry)
    G1_abs2 = abs(p.G1) ** 2
    Gamma_sum = p.Gamma1 + p.Gamma2

    def f(kv):
        delta = p.delta - kv
        Delta = p.Delta + s * kv
        return np.stack([
            chi_plus_lineshape(delta, Delta, p.Omega, G1_abs2, p.gamma1, Gamma_sum),
            chi_minus_lineshape(delta, p.Omega, p.gamma2),
        ])

    return f


def _numeric_integrand(p, geometry, probe_eps):
    def f(kv):
        out = np.empty((2, kv.size), dtype=complex)
        for j, x in enumerate(kv):
            out[:, j] = tuple(chi_numeric(shifted_params(p, float(x), geometry), probe_eps))
        return out

    return f


def gauss_hermite_average(f, width, nodes):
    """Single Gauss-Hermite estimate of <f(kv)> over the Maxwellian."""
    t, w = roots_hermite(nodes)
    return f(width * t) @ w / math.sqrt(math.pi)


def _gauss_hermite(f, width, nodes):
    n = nodes
    current = gauss_hermite_average(f, width, n)
    while True:
        refined = gauss_hermite_average(f, width, 2 * n)
        diff = float(np.max(np.abs(refined - current)))
        if diff <= GH_TOLERANCE:
            return refined
        if 2 * n >= GH_MAX_ESCALATION * nodes:
            raise QuadratureNotConverged(
                f"Gauss-Hermite with {n} and {2 * n} nodes differ by {diff:.3g} "
                f"at Doppler width {width:g}; use adaptive-simpson"
            )
        n, current = 2 * n, refined


def adaptive_simpson(f, a, b, tol, initial_points):
    """Integrate a vector-valued ``f`` over [a, b] by adaptive Simpson.

    ``f`` maps a 1-D array of abscissae to an array of shape (m, n).
    Panels are refined breadth-first; a panel is accepted once its
    Richardson error estimate is below its width-proportional share of
    ``tol``. Accepted contributions are summed in a fixed order, so the
    result is bit-reproducible.
    """
    n_panels = max(1, (initial_points - 1) // 2)
    edges = np.linspace(a, b, 2 * n_panels + 1)
    values = f(edges)
    left, mid, right = edges[:-2:2], edges[1:-1:2], edges[2::2]
    fl, fm, fr = values[:, :-2:2], values[:, 1:-1:2], values[:, 2::2]
    density = tol / (b - a)
    total = np.zeros(values.shape[0], dtype=values.dtype)
    for _ in range(SIMPSON_MAX_LEVELS):
        h = right - left
        lm = 0.5 * (left + mid)
        rm = 0.5 * (mid + right)
        quarter = f(np.concatenate([lm, rm]))
        flm, frm = quarter[:, : lm.size], quarter[:, lm.size:]
        coarse = h / 6.0 * (fl + 4.0 * fm + fr)
        fine = h / 12.0 * (fl + 4.0 * flm + 2.0 * fm + 4.0 * frm + fr)
        err = np.max(np.abs(fine - coarse), axis=0) / 15.0
        done = err <= density * h
        total = total + np.sum((fine + (fine - coarse) / 15.0)[:, done], axis=1)
        todo = ~done
        if not todo.any():
            return total
        left = np.concatenate([left[todo], mid[todo]])
        right = np.concatenate([mid[todo], right[todo]])
        mid, fl, fm, fr = (
            np.concatenate([lm[todo], rm[todo]]),
            np.concatenate([fl[:, todo], fm[:, todo]], axis=1),
            np.concatenate([flm[:, todo], frm[:, todo]], axis=1),
            np.concatenate([fm[:, todo], fr[:, todo]], axis=1),
        )
    raise QuadratureNotConverged(
        f"adaptive Simpson did not reach tol={tol:g} after {SIMPSON_MAX_LEVELS} levels"
    )


def _simpson(f, p, d):
    D = d.width
    norm = 1.0 / (D * math.sqrt(math.pi))

    def weighted(kv):
        w = norm * np.exp(-((kv / D) ** 2))
        return np.vstack([f(kv) * w, w])

    # initial panels must resolve the narrowest homogeneous line
    linewidth = min(p.gamma1, p.gamma2, p.Gamma1, p.Gamma2)
    span = 2.0 * SIMPSON_RANGE * D
    points = max(d.quadrature_nodes, 2 * math.ceil(span / linewidth) + 1)
    result = adaptive_simpson(weighted, -SIMPSON_RANGE * D, SIMPSON_RANGE * D, d.tolerance, points)
    mass = result[-1].real
    if abs(mass - 1.0) > 100 * d.tolerance:
        raise QuadratureNotConverged(f"velocity distribution integrates to {mass!r}, not 1")
    return result[:-1]


def doppler_average(
    p: SystemParams,
    d: DopplerConfig,
    use_closed_forms: bool = True,
    probe_eps: float = DEFAULT_PROBE_EPS,
) -> SusceptibilityPair:
    """<chi+-> over the thermal distribution.

    With ``d.width == 0`` the homogeneous values are returned unchanged.

    Raises
    ------
    GeometryUnsupported
        Closed forms requested with G2 != 0.
    QuadratureNotConverged
        Gauss-Hermite fails its N-vs-2N check after escalating to 4N nodes,
        or adaptive Simpson exhausts its refinement depth.
    """
    if use_closed_forms:
        f = _closed_integrand(p, d.geometry)
    else:
        f = _numeric_integrand(p, d.geometry, probe_eps)
    if d.width == 0:
        if use_closed_forms:
            return chi_closed(p)
        return chi_numeric(p, probe_eps)
    if d.method == "gauss-hermite":
        avg = _gauss_hermite(f, d.width, d.quadrature_nodes)
    else:
        avg = _simpson(f, p, d)
    return SusceptibilityPair(complex(avg[0]), complex(avg[1]))
