"""Cross-module self-check run by ``morswitch validate``.

Each check compares an implementation path against an independent route
(closed forms, RK4 integration, the Faddeeva function) or asserts a
physical invariant.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import wofz

from . import lindblad
from .doppler import DopplerConfig, doppler_average, gauss_hermite_average
from .errors import MorswitchError
from .params import SystemParams
from .polarimetry import MediumConfig, transmission_ty
from .susceptibility import chi_closed, chi_minus_lineshape, chi_numeric


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {self.detail}"


def voigt_chi_minus(p: SystemParams, width: float) -> complex:
    """Thermal average of chi- through the Faddeeva function.

    <i g/(g + i(x - u))> over u ~ exp(-(u/D)^2) equals
    i g sqrt(pi)/D * w((-x + i g)/D) with x = delta - Omega.
    """
    x = p.delta - p.Omega
    return complex(1j * p.gamma2 * math.sqrt(math.pi) / width * wofz((-x + 1j * p.gamma2) / width))


def random_params(rng, G2=False, probe=None):
    """Parameters spanning the ranges the acceptance checks use."""
    return SystemParams(
        Omega=float(rng.uniform(0, 100)),
        delta=float(rng.uniform(-200, 200)),
        Delta=float(rng.uniform(-200, 200)),
        G1=float(rng.uniform(0, 100)),
        G2=float(rng.uniform(0, 100)) if G2 else 0.0,
        g1=probe if probe is not None else float(rng.uniform(0, 100)),
        g2=probe if probe is not None else float(rng.uniform(0, 100)),
    )


def random_hermitian(rng, n=lindblad.DIM):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (a + a.conj().T)


def _rel(a, b):
    return abs(a - b) / abs(b)


def check_hamiltonian(rng):
    worst = 0.0
    for _ in range(20):
        z = rng.normal(size=4) + 1j * rng.normal(size=4)
        p = SystemParams(Omega=1.3, delta=-0.4, Delta=2.1, g1=z[0], g2=z[1], G1=z[2], G2=z[3])
        H = lindblad.build_hamiltonian(p)
        worst = max(worst, float(np.max(np.abs(H - H.conj().T))))
    return CheckResult("hamiltonian_hermitian", worst == 0.0, f"max |H - H^dag| = {worst:.1e}")


def check_trace_preservation(rng):
    worst = 0.0
    for _ in range(100):
        p = random_params(rng, G2=True)
        rho = random_hermitian(rng)
        worst = max(worst, abs(np.trace(lindblad.build_liouvillian(p).apply(rho))))
    return CheckResult("liouvillian_trace_preservation", worst <= 1e-12,
                       f"max |d Tr(rho)/dt| = {worst:.1e} (tol 1e-12)")


def check_superoperator(rng):
    worst = 0.0
    for _ in range(20):
        p = random_params(rng, G2=True)
        rho = random_hermitian(rng)
        L = lindblad.build_liouvillian(p)
        worst = max(worst, float(np.max(np.abs(L.apply(rho) - lindblad.rhs(p, rho)))))
    return CheckResult("liouvillian_matches_master_equation", worst <= 1e-10,
                       f"max elementwise difference {worst:.1e} (tol 1e-10)")


def check_closed_forms(rng, n=50):
    worst = 0.0
    for _ in range(n):
        p = random_params(rng)
        num = chi_numeric(p, 1e-4)
        ref = chi_closed(p)
        worst = max(worst, _rel(num.chi_plus, ref.chi_plus), _rel(num.chi_minus, ref.chi_minus))
    return CheckResult("closed_form_vs_numeric", worst <= 1e-6,
                       f"max relative error {worst:.1e} over {n} sets (tol 1e-6)")


def check_dynamics(rng, n=5):
    worst = 0.0
    for _ in range(n):
        p = random_params(rng, G2=True, probe=0.1)
        evolved = lindblad.time_evolve(p, lindblad.DensityMatrix.pure(0), 500.0)
        worst = max(worst, float(np.max(np.abs(evolved.rho - lindblad.steady_state(p).rho))))
    return CheckResult("rk4_vs_steady_state", worst <= 1e-7,
                       f"max elementwise difference {worst:.1e} over {n} sets (tol 1e-7)")


def check_voigt():
    worst = 0.0
    for D in (0.5, 1.0, 10.0, 100.0):
        for offset in (0.0, D / 2, -D / 2, 2 * D, -2 * D):
            p = SystemParams(Omega=3.0, delta=3.0 + offset)
            avg = doppler_average(p, DopplerConfig(width=D, method="adaptive-simpson")).chi_minus
            worst = max(worst, abs(avg - voigt_chi_minus(p, D)))
    return CheckResult("voigt_identity", worst <= 1e-8,
                       f"max |<chi-> - Faddeeva| = {worst:.1e} (tol 1e-8)")


def check_gauss_hermite(nodes=201):
    # a smooth case: homogeneous width comparable to the Doppler width
    p = SystemParams(Omega=1.0, delta=0.5, G1=2.0)
    width = 1.0

    def f(kv):
        d = p.delta - kv
        return np.stack([chi_minus_lineshape(d, p.Omega, p.gamma2)])

    n_est = gauss_hermite_average(f, width, nodes)
    two_n = gauss_hermite_average(f, width, 2 * nodes)
    diff = float(np.max(np.abs(n_est - two_n)))
    return CheckResult("gauss_hermite_convergence", diff <= 1e-8,
                       f"|I(N={nodes}) - I(N={2 * nodes})| = {diff:.1e} (tol 1e-8)")


def check_physicality(rng, n=200):
    worst = {"herm": 0.0, "trace": 0.0, "eig": 0.0, "res": 0.0}
    for _ in range(n):
        p = random_params(rng, G2=True)
        rho = lindblad.steady_state(p)
        L = lindblad.build_liouvillian(p)
        worst["herm"] = max(worst["herm"], rho.hermiticity_error())
        worst["trace"] = max(worst["trace"], rho.trace_error())
        worst["eig"] = min(worst["eig"], rho.min_eigenvalue())
        worst["res"] = max(worst["res"], float(np.max(np.abs(L.apply(rho)))))
    ok = (worst["herm"] <= 1e-12 and worst["trace"] <= 1e-12
          and worst["eig"] >= -1e-10 and worst["res"] <= 1e-10)
    detail = (f"hermiticity {worst['herm']:.1e}, trace {worst['trace']:.1e}, "
              f"min eig {worst['eig']:.1e}, residual {worst['res']:.1e} over {n} states")
    return CheckResult("steady_state_physicality", ok, detail)


def check_transmission(rng, n=500):
    m = MediumConfig(300.0)
    lo, hi = math.inf, -math.inf
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        for _ in range(n):
            p = random_params(rng)
            t = transmission_ty(chi_closed(p), m)
            lo, hi = min(lo, t), max(hi, t)
        null = transmission_ty(chi_closed(SystemParams(delta=7.0, Delta=-3.0)), m)
    ok = lo >= 0.0 and hi <= 1.0 + 1e-12 and null == 0.0
    return CheckResult("transmission_bounds_and_null", ok,
                       f"T_y in [{lo:.3g}, {hi:.3g}], null-case T_y = {null!r}")


def run_validate(seed: int = 20240101, doppler_nodes: int = 201) -> list[CheckResult]:
    """Run every check; ``doppler_nodes`` sets the Gauss-Hermite node count probed."""
    rng = np.random.default_rng(seed)
    checks = [
        ("hamiltonian_hermitian", lambda: check_hamiltonian(rng)),
        ("liouvillian_trace_preservation", lambda: check_trace_preservation(rng)),
        ("liouvillian_matches_master_equation", lambda: check_superoperator(rng)),
        ("closed_form_vs_numeric", lambda: check_closed_forms(rng)),
        ("rk4_vs_steady_state", lambda: check_dynamics(rng)),
        ("voigt_identity", check_voigt),
        ("gauss_hermite_convergence", lambda: check_gauss_hermite(doppler_nodes)),
        ("steady_state_physicality", lambda: check_physicality(rng)),
        ("transmission_bounds_and_null", lambda: check_transmission(rng)),
    ]
    results = []
    for name, check in checks:
        try:
            results.append(check())
        except (MorswitchError, ArithmeticError, ValueError) as exc:
            results.append(CheckResult(name, False, f"raised {type(exc).__name__}: {exc}"))
    return results
