import math

import pytest

from morswitch import SystemParams
from morswitch.errors import InvalidParams


def test_defaults_match_unit_rates():
    p = SystemParams()
    assert (p.gamma1, p.gamma2, p.Gamma1, p.Gamma2) == (1.0, 1.0, 1.0, 1.0)
    assert p.G1 == p.G2 == p.g1 == p.g2 == 0


@pytest.mark.parametrize("field", ["gamma1", "gamma2", "Gamma1", "Gamma2"])
@pytest.mark.parametrize("value", [0.0, -1.0])
def test_rates_must_be_positive(field, value):
    with pytest.raises(InvalidParams, match=field):
        SystemParams(**{field: value})


@pytest.mark.parametrize("field", ["Omega", "delta", "G1", "g2"])
def test_non_finite_rejected(field):
    with pytest.raises(InvalidParams):
        SystemParams(**{field: math.inf})
    with pytest.raises(InvalidParams):
        SystemParams(**{field: math.nan})


def test_detunings_must_be_real():
    with pytest.raises(InvalidParams):
        SystemParams(delta=1 + 1j)


def test_complex_couplings_allowed_and_negative_detunings():
    p = SystemParams(G1=3 + 4j, g1=1j, delta=-7.0, Omega=-2.0)
    assert abs(p.G1) == 5.0
    assert p.max_magnitude() == 7.0


def test_without_control_keeps_everything_else():
    p = SystemParams(Omega=5, delta=1, Delta=2, G1=30, G2=4, g1=0.1)
    off = p.without_control()
    assert off.G1 == off.G2 == 0
    assert off.replace(G1=30, G2=4) == p
