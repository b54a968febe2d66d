"""Atomic and field parameters of the four-level (g, 1, 2, e) scheme.

All frequencies are in units of the probe-coherence decay rate gamma.
Stored rates are half the population decay rates, so the g-1 and g-2
coherences relax at ``gamma1`` and ``gamma2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .errors import InvalidParams

#: level index of each basis state
G, L1, L2, E = 0, 1, 2, 3
LEVELS = ("g", "1", "2", "e")


@dataclass(frozen=True)
class SystemParams:
    """Parameters of the cascade g <-> {1, 2} <-> e.

    ``g1`` and ``g2`` are the probe half-Rabi couplings on g-1 (sigma+)
    and g-2 (sigma-); ``G1`` and ``G2`` are the control half-Rabi
    couplings on 1-e (sigma-) and 2-e (sigma+). ``Omega`` is half the
    Zeeman splitting; ``delta`` and ``Delta`` are the probe and control
    detunings from the centre of levels 1 and 2.
    """

    gamma1: float = 1.0
    gamma2: float = 1.0
    Gamma1: float = 1.0
    Gamma2: float = 1.0
    Omega: float = 0.0
    delta: float = 0.0
    Delta: float = 0.0
    g1: complex = 0.0
    g2: complex = 0.0
    G1: complex = 0.0
    G2: complex = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not _isfinite(value):
                raise InvalidParams(f"{f.name} must be finite, got {value!r}")
        for name in ("gamma1", "gamma2", "Gamma1", "Gamma2", "Omega", "delta", "Delta"):
            if isinstance(getattr(self, name), complex):
                raise InvalidParams(f"{name} must be real")
        for name in ("gamma1", "gamma2", "Gamma1", "Gamma2"):
            if not getattr(self, name) > 0:
                raise InvalidParams(f"{name} must be > 0, got {getattr(self, name)!r}")

    def replace(self, **changes) -> "SystemParams":
        return replace(self, **changes)

    def without_control(self) -> "SystemParams":
        return replace(self, G1=0.0, G2=0.0)

    def max_magnitude(self) -> float:
        """Largest absolute value over all fields (sets the integration step)."""
        return max(abs(getattr(self, f.name)) for f in fields(self))


def _isfinite(value) -> bool:
    if isinstance(value, complex):
        return math.isfinite(value.real) and math.isfinite(value.imag)
    try:
        return math.isfinite(value)
    except TypeError:
        return False
