import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from morswitch import SystemParams
from morswitch.lindblad import DensityMatrix, time_evolve
from morswitch.params import G, L1, L2
from morswitch.susceptibility import (
    chi_closed,
    chi_minus_closed,
    chi_numeric,
    chi_plus_closed,
    chi_plus_lineshape,
)


def rel(a, b):
    return abs(a - b) / abs(b)


# chi_minus_closed

def test_chi_minus_on_resonance():
    assert chi_minus_closed(SystemParams(Omega=4.0, delta=4.0)) == 1j


def test_chi_minus_one_linewidth_off():
    assert chi_minus_closed(SystemParams(delta=1.0)) == pytest.approx(0.5 + 0.5j, abs=1e-15)


def test_chi_minus_far_wing():
    assert abs(chi_minus_closed(SystemParams(delta=1000.0))) <= 1e-3


def test_chi_minus_ignores_control():
    base = SystemParams(Omega=2.0, delta=-1.0)
    for G1, Delta in [(0, 0), (5, 3), (100, -40)]:
        assert chi_minus_closed(base.replace(G1=G1, Delta=Delta)) == chi_minus_closed(base)


# chi_plus_closed

def test_chi_plus_without_control_is_two_level_mirror():
    p = SystemParams(Omega=3.0, delta=1.5, Delta=7.0)
    assert chi_plus_closed(p) == pytest.approx(1j / (1 + 1j * (1.5 + 3.0)), rel=1e-15)


def test_chi_plus_strong_control_reference_value():
    # i * 1 * 2 / (100 + 1*2) evaluated by hand
    p = SystemParams(G1=10.0)
    assert chi_plus_closed(p) == pytest.approx(2j / 102, rel=1e-14)
    assert chi_plus_closed(p).imag == pytest.approx(0.0196078431372549, rel=1e-12)


def test_chi_plus_independent_complex_arithmetic():
    # expand the rational form into real and imaginary parts by hand
    g, Gs, Om, De, d, G1 = 1.3, 1.7, 2.0, -3.0, 0.4, 6.0
    a, b = Gs, De + d                      # numerator i*g*(a + i b)
    c = G1**2 + g * a - (d + Om) * b       # denominator real part
    e = g * b + (d + Om) * a               # denominator imaginary part
    num = complex(-g * b, g * a)
    expected = num * complex(c, -e) / (c * c + e * e)
    p = SystemParams(gamma1=g, Gamma1=0.5, Gamma2=1.2, Omega=Om, Delta=De, delta=d, G1=G1)
    assert chi_plus_closed(p) == pytest.approx(expected, rel=1e-13)


def test_autler_townes_splitting_scan():
    deltas = np.linspace(-20, 20, 4001)
    im = np.array([chi_plus_closed(SystemParams(G1=10.0, delta=d)).imag for d in deltas])
    centre = im[np.argmin(np.abs(deltas))]
    sidebands = im[np.argmin(np.abs(deltas - 10))], im[np.argmin(np.abs(deltas + 10))]
    assert min(sidebands) >= 10 * centre
    # the two sideband maxima straddle zero near +-|G1|
    peak_left = deltas[:2000][np.argmax(im[:2000])]
    peak_right = deltas[2001:][np.argmax(im[2001:])]
    assert peak_left == pytest.approx(-10, abs=1) and peak_right == pytest.approx(10, abs=1)


def test_lineshape_broadcasts():
    deltas = np.linspace(-5, 5, 11)
    vec = chi_plus_lineshape(deltas, 1.0, 2.0, 9.0, 1.0, 2.0)
    for d, v in zip(deltas, vec):
        assert v == pytest.approx(chi_plus_closed(SystemParams(delta=d, Delta=1.0, Omega=2.0, G1=3.0)), rel=1e-14)


# chi_numeric

def test_numeric_bare_resonance():
    chis = chi_numeric(SystemParams(Omega=3.0, delta=3.0), 1e-4)
    assert abs(chis.chi_minus - 1j) <= 1e-6


def test_numeric_matches_closed_forms_reference_point():
    p = SystemParams(Omega=50.0, delta=10.0, G1=30.0)
    num = chi_numeric(p, 1e-4)
    assert rel(num.chi_plus, chi_plus_closed(p)) <= 1e-6
    assert rel(num.chi_minus, chi_minus_closed(p)) <= 1e-6


def test_numeric_matches_closed_forms_random(rng):
    for _ in range(100):
        p = SystemParams(
            Omega=rng.uniform(0, 100), delta=rng.uniform(-200, 200),
            Delta=rng.uniform(-200, 200), G1=rng.uniform(0, 100),
        )
        num, ref = chi_numeric(p), chi_closed(p)
        assert rel(num.chi_plus, ref.chi_plus) <= 1e-6
        assert rel(num.chi_minus, ref.chi_minus) <= 1e-6


def test_numeric_elliptical_control_matches_rk4():
    p = SystemParams(Omega=2.0, delta=1.0, Delta=0.5, G1=10.0, G2=5.0)
    eps = 1e-4
    chis = chi_numeric(p, eps)
    rho = time_evolve(p.replace(g1=eps, g2=eps), DensityMatrix.pure(G), 200.0)
    assert abs(chis.chi_plus - p.gamma1 * rho[L1, G] / eps) <= 1e-8
    assert abs(chis.chi_minus - p.gamma2 * rho[L2, G] / eps) <= 1e-8
    # chi- now feels the sigma+ control
    assert abs(chis.chi_minus - chi_minus_closed(p)) > 1e-2


def test_probe_eps_bounds():
    with pytest.raises(ValueError):
        chi_numeric(SystemParams(), 1e-1)
    with pytest.raises(ValueError):
        chi_numeric(SystemParams(), 1e-8)


# invariants

@pytest.mark.parametrize("delta", [-60.0, -5.0, 0.0, 12.0, 50.0])
def test_chi_minus_control_independent(delta):
    base = SystemParams(Omega=50.0, delta=delta, Delta=3.0)
    ref_closed = chi_minus_closed(base)
    ref_num = chi_numeric(base).chi_minus
    for G1 in (0.0, 1.0, 10.0, 100.0):
        p = base.replace(G1=G1)
        assert rel(chi_minus_closed(p), ref_closed) <= 1e-8
        assert rel(chi_numeric(p).chi_minus, ref_num) <= 1e-8


@pytest.mark.parametrize("G1", [5.0, 10.0, 50.0])
def test_control_induced_birefringence_at_zero_field(G1):
    chis = chi_closed(SystemParams(Omega=0.0, G1=G1))
    assert abs(chis.chi_plus - chis.chi_minus) > 0.1


@given(st.floats(-300, 300), st.floats(-100, 100), st.floats(-50, 50))
def test_mirror_symmetry_without_control(delta, Omega, Delta):
    p = SystemParams(delta=delta, Omega=Omega, Delta=Delta)
    assert chi_plus_closed(p) == chi_minus_closed(p.replace(Omega=-Omega))


def test_passivity_closed_forms(rng):
    n = 10_000
    for _ in range(n):
        p = SystemParams(
            delta=rng.uniform(-200, 200), Delta=rng.uniform(-200, 200),
            Omega=rng.uniform(0, 100), G1=rng.uniform(0, 100),
        )
        chis = chi_closed(p)
        assert chis.chi_plus.imag >= -1e-12 and chis.chi_minus.imag >= -1e-12


def test_weak_probe_saturation_scales_quadratically():
    p = SystemParams(Omega=2.0, delta=-1.5, G1=3.0, Delta=1.0)
    eps = [1e-2, 1e-3, 1e-4]
    diffs = []
    for e in eps:
        a, b = chi_numeric(p, e), chi_numeric(p, e / 10)
        diffs.append(max(abs(a.chi_plus - b.chi_plus), abs(a.chi_minus - b.chi_minus)))
    assert diffs[0] / diffs[1] == pytest.approx(100, rel=0.05)
    assert diffs[1] / diffs[2] == pytest.approx(100, rel=0.05)
