"""Master equation for the four-level scheme: Hamiltonian, Liouvillian,
steady state and an RK4 time-integration oracle.

Density matrices are 4x4 over the basis (g, 1, 2, e). Superoperators act
on the column-stacked vector, ``vec(rho)[i + 4*j] = rho[i, j]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import SingularSystem, StepTooLarge
from .params import E, G, L1, L2, SystemParams

DIM = 4
_EYE = np.eye(DIM, dtype=complex)
#: vec indices of the diagonal elements rho_gg, rho_11, rho_22, rho_ee
DIAGONAL = np.array([i + DIM * i for i in range(DIM)])

SINGULAR_CONDITION = 1e14
DIVERGENCE_BOUND = 10.0


def vec(rho):
    return np.asarray(rho, dtype=complex).reshape(-1, order="F")


def unvec(v):
    return np.asarray(v, dtype=complex).reshape(DIM, DIM, order="F")


def sigma(a, b):
    """Transition operator |a><b|."""
    op = np.zeros((DIM, DIM), dtype=complex)
    op[a, b] = 1.0
    return op


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (DIM, DIM):
            raise ValueError(f"density matrix must be {DIM}x{DIM}, got {rho.shape}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @classmethod
    def pure(cls, level):
        return cls(sigma(level, level))

    def __getitem__(self, index):
        return self.rho[index]

    def hermiticity_error(self):
        return float(np.max(np.abs(self.rho - self.rho.conj().T)))

    def trace_error(self):
        return float(abs(np.trace(self.rho) - 1.0))

    def min_eigenvalue(self):
        return float(np.min(np.linalg.eigvalsh(0.5 * (self.rho + self.rho.conj().T))))

    def populations(self):
        return np.real(np.diag(self.rho)).copy()


@dataclass(frozen=True, eq=False)
class Liouvillian:
    matrix: np.ndarray

    def apply(self, rho):
        """d(rho)/dt for a 4x4 array or DensityMatrix."""
        if isinstance(rho, DensityMatrix):
            rho = rho.rho
        return unvec(self.matrix @ vec(rho))


def build_hamiltonian(p: SystemParams) -> np.ndarray:
    """Rotating-frame Hamiltonian (hbar = 1).

    H = (delta+Omega)|1><1| + (delta-Omega)|2><2| + (delta+Delta)|e><e|
        - [g1|1><g| + g2|2><g| + G1|e><1| + G2|e><2| + h.c.]

    The coupling sign is what makes the weak-probe coherences
    rho_1g and rho_2g reproduce the closed-form susceptibilities.
    """
    H = np.zeros((DIM, DIM), dtype=complex)
    H[L1, L1] = p.delta + p.Omega
    H[L2, L2] = p.delta - p.Omega
    H[E, E] = p.delta + p.Delta
    couplings = np.zeros((DIM, DIM), dtype=complex)
    couplings[L1, G] = p.g1
    couplings[L2, G] = p.g2
    couplings[E, L1] = p.G1
    couplings[E, L2] = p.G2
    return H - couplings - couplings.conj().T


def collapse_operators(p: SystemParams):
    """Jump operators sqrt(2*rate)|lower><upper| for the four decay channels."""
    return [
        math.sqrt(2.0 * p.gamma1) * sigma(G, L1),
        math.sqrt(2.0 * p.gamma2) * sigma(G, L2),
        math.sqrt(2.0 * p.Gamma1) * sigma(L1, E),
        math.sqrt(2.0 * p.Gamma2) * sigma(L2, E),
    ]


def _commutator_superop(H):
    return -1j * (np.kron(_EYE, H) - np.kron(H.T, _EYE))


def _dissipator_superop(ops):
    D = np.zeros((DIM * DIM, DIM * DIM), dtype=complex)
    for c in ops:
        cdc = c.conj().T @ c
        D += np.kron(c.conj(), c) - 0.5 * np.kron(_EYE, cdc) - 0.5 * np.kron(cdc.T, _EYE)
    return D


def build_liouvillian(p: SystemParams) -> Liouvillian:
    L = _commutator_superop(build_hamiltonian(p)) + _dissipator_superop(collapse_operators(p))
    L.setflags(write=False)
    return Liouvillian(L)


def rhs(p: SystemParams, rho):
    """-i[H, rho] + D[rho] evaluated directly in matrix form (no superoperator)."""
    rho = np.asarray(rho, dtype=complex)
    H = build_hamiltonian(p)
    out = -1j * (H @ rho - rho @ H)
    for c in collapse_operators(p):
        cd = c.conj().T
        out += c @ rho @ cd - 0.5 * (cd @ c @ rho + rho @ cd @ c)
    return out


def steady_state(p: SystemParams) -> DensityMatrix:
    """Solve L vec(rho) = 0 with the rho_gg row replaced by Tr(rho) = 1.

    Raises
    ------
    SingularSystem
        If the condition number of the constrained system exceeds 1e14.
    """
    M = np.array(build_liouvillian(p).matrix)
    M[0, :] = 0.0
    M[0, DIAGONAL] = 1.0
    cond = np.linalg.cond(M)
    if not np.isfinite(cond) or cond > SINGULAR_CONDITION:
        raise SingularSystem(f"steady-state system is rank deficient (cond={cond:.3g})", cond)
    b = np.zeros(DIM * DIM, dtype=complex)
    b[0] = 1.0
    lu, piv = scipy.linalg.lu_factor(M, check_finite=False)
    rho = unvec(scipy.linalg.lu_solve((lu, piv), b, check_finite=False))
    # the solve leaves ~1e-17 antihermitian noise
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def default_step(p: SystemParams) -> float:
    return 0.01 / max(1.0, p.max_magnitude())


def rk4_propagator(L: np.ndarray, dt: float) -> np.ndarray:
    """One classical RK4 step for the linear system d(v)/dt = L v.

    For constant L the four RK4 stages collapse into the degree-4 Taylor
    polynomial of exp(L dt).
    """
    A = dt * L
    A2 = A @ A
    A3 = A2 @ A
    A4 = A3 @ A
    return np.eye(L.shape[0], dtype=complex) + A + A2 / 2.0 + A3 / 6.0 + A4 / 24.0


def time_evolve(p: SystemParams, rho0, t_final: float, dt: float | None = None) -> DensityMatrix:
    """Integrate the master equation from ``rho0`` to ``t_final`` with RK4.

    ``dt`` defaults to ``0.01 / max(1, max|param|)`` and is shrunk so that
    a whole number of steps lands on ``t_final``. The n steps are applied
    by binary powering of the one-step propagator, which is exactly the
    same linear map as stepping n times.
    """
    if isinstance(rho0, DensityMatrix):
        rho0 = rho0.rho
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    if dt is None:
        dt = default_step(p)
    if dt <= 0:
        raise ValueError("dt must be > 0")
    n_steps = math.ceil(t_final / dt - 1e-9) if t_final > 0 else 0
    v = vec(rho0)
    if n_steps == 0:
        return DensityMatrix(unvec(v))
    P = rk4_propagator(build_liouvillian(p).matrix, t_final / n_steps)
    elapsed = 0
    while n_steps:
        if n_steps & 1:
            v = P @ v
            if not np.all(np.isfinite(v)) or np.max(np.abs(v)) > DIVERGENCE_BOUND:
                raise StepTooLarge(
                    f"RK4 diverged after {elapsed + 1} propagator applications; reduce dt={dt:g}"
                )
            elapsed += 1
        n_steps >>= 1
        if n_steps:
            P = P @ P
            if not np.all(np.isfinite(P)):
                raise StepTooLarge(f"RK4 propagator overflowed; reduce dt={dt:g}")
    return DensityMatrix(unvec(v))
