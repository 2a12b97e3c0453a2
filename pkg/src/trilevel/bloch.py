"""Semiclassical three-level dynamics in the SU(3) Bloch representation.

Rotating-frame Hamiltonians are time independent, so the eight-component
Bloch vector obeys ``ds/dt = M s`` with a constant antisymmetric ``M``.
Units: hbar = 1, all couplings and detunings in rad/time.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .configuration import Configuration
from .su3 import GELL_MANN, SQRT3, expand, structure_constants


@dataclass(frozen=True)
class SemiclassicalParams:
    config: Configuration
    kappa1: float
    kappa2: float
    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "config", Configuration.parse(self.config))
        for name in ("kappa1", "kappa2", "delta1", "delta2"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @property
    def resonant(self):
        return self.delta1 == 0.0 and self.delta2 == 0.0


def rotating_frame_hamiltonian(p):
    """Time-independent RWA Hamiltonian of the chosen configuration."""
    k1, k2, d1, d2 = p.kappa1, p.kappa2, p.delta1, p.delta2
    if p.config is Configuration.LAMBDA:
        h = [[(d1 + d2) / 3, k2, k1],
             [k2, (d1 - 2 * d2) / 3, 0],
             [k1, 0, (d2 - 2 * d1) / 3]]
    elif p.config is Configuration.VEE:
        h = [[(2 * d1 - d2) / 3, 0, k1],
             [0, (2 * d2 - d1) / 3, k2],
             [k1, k2, -(d1 + d2) / 3]]
    else:
        h = [[(d1 + 2 * d2) / 3, k2, 0],
             [k2, (d1 - d2) / 3, k1],
             [0, k1, -(2 * d1 + d2) / 3]]
    return np.array(h, dtype=np.complex128)


def bloch_matrix(p):
    """8x8 Bloch generator, transcribed row by row (1-based rows in comments).

    Every printed matrix is antisymmetric as printed; no entries needed
    repair. The result equals ``generator_from_hamiltonian`` of the
    rotating-frame Hamiltonian.
    """
    k1, k2, d1, d2 = p.kappa1, p.kappa2, p.delta1, p.delta2
    r3 = SQRT3
    if p.config is Configuration.LAMBDA:
        m = [[0, d2, 0, 0, 0, 0, -k1, 0],
             [-d2, 0, 2 * k2, 0, 0, -k1, 0, 0],
             [0, -2 * k2, 0, 0, -k1, 0, 0, 0],
             [0, 0, 0, 0, d1, 0, k2, 0],
             [0, 0, k1, -d1, 0, -k2, 0, r3 * k1],
             [0, k1, 0, 0, k2, 0, d1 - d2, 0],
             [k1, 0, 0, -k2, 0, -(d1 - d2), 0, 0],
             [0, 0, 0, 0, -r3 * k1, 0, 0, 0]]
    elif p.config is Configuration.VEE:
        m = [[0, d1 - d2, 0, 0, -k2, 0, -k1, 0],
             [-(d1 - d2), 0, 0, k2, 0, -k1, 0, 0],
             [0, 0, 0, 0, -k1, 0, k2, 0],
             [0, -k2, 0, 0, d1, 0, 0, 0],
             [k2, 0, k1, -d1, 0, 0, 0, r3 * k1],
             [0, k1, 0, 0, 0, 0, d2, 0],
             [k1, 0, -k2, 0, 0, -d2, 0, r3 * k2],
             [0, 0, 0, 0, -r3 * k1, 0, -r3 * k2, 0]]
    else:
        m = [[0, d2, 0, 0, -k1, 0, 0, 0],
             [-d2, 0, 2 * k2, k1, 0, 0, 0, 0],
             [0, -2 * k2, 0, 0, 0, 0, k1, 0],
             [0, -k1, 0, 0, d1 + d2, 0, k2, 0],
             [k1, 0, 0, -(d1 + d2), 0, -k2, 0, 0],
             [0, 0, 0, 0, k2, 0, d1, 0],
             [0, 0, -k1, -k2, 0, -d1, 0, r3 * k1],
             [0, 0, 0, 0, 0, 0, -r3 * k1, 0]]
    return np.array(m, dtype=float)


def generator_from_hamiltonian(h):
    """Bloch generator ``M_ij = 2 sum_k f_ijk h_k`` of a Hermitian 3x3 ``h``.

    This is the flow of ``rho(t) = U^dag rho(0) U`` with ``U = exp(-i h t)``.
    """
    _, coeffs = expand(h)
    return 2 * np.einsum("ijk,k->ij", structure_constants().f, coeffs.real)


def _check_density(rho, atol=1e-10):
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (3, 3):
        raise ValueError(f"density matrix must be 3x3, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > atol:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > atol:
        raise ValueError(f"density matrix trace is {np.trace(rho).real:.6g}, expected 1")
    return rho


def bloch_from_density(rho):
    """Bloch components ``s_i = Tr(rho lambda_i)``."""
    rho = _check_density(rho)
    s = np.einsum("ab,kba->k", rho, GELL_MANN)
    return s.real.copy()


def density_from_bloch(s):
    s = np.asarray(s, dtype=float)
    if s.shape != (8,):
        raise ValueError(f"Bloch vector must have 8 components, got shape {s.shape}")
    return (np.eye(3) + 1.5 * np.einsum("k,kab->ab", s, GELL_MANN)) / 3


def density_from_amplitudes(c):
    """Pure-state density matrix from amplitudes in basis order (+, 0, -)."""
    c = np.asarray(c, dtype=np.complex128)
    return np.outer(c, c.conj())


def evolve_bloch(m, s0, t):
    """``s(t) = expm(M t) s0``; ``t`` may be a scalar or a 1-D array.

    For an array the result has shape ``(len(t), 8)``.
    """
    m = np.asarray(m, dtype=float)
    s0 = np.asarray(s0, dtype=float)
    times = np.asarray(t, dtype=float)
    if np.any(times < 0):
        raise ValueError("evolution time must be non-negative")
    if times.ndim == 0:
        return expm(m * float(times)) @ s0
    return np.array([expm(m * tk) @ s0 for tk in times])


def liouville_oracle(h, rho0, t):
    """Density matrix evolved by unitary conjugation.

    ``rho(t) = U^dag rho0 U`` with ``U = exp(-i h t)``: the convention under
    which the Bloch image follows ``bloch_matrix``.
    """
    h = np.asarray(h, dtype=np.complex128)
    if np.abs(h - h.conj().T).max() > 1e-12:
        raise ValueError("Hamiltonian is not Hermitian")
    u = expm(-1j * h * float(t))
    return u.conj().T @ np.asarray(rho0, dtype=np.complex128) @ u


def subset_sum(s, indices):
    """Sum of squared Bloch components over 1-based ``indices``.

    ``s`` may be a single vector or a stack of vectors (last axis of 8).
    """
    s = np.asarray(s)
    idx = [i - 1 for i in indices]
    return np.sum(s[..., idx] ** 2, axis=-1)


def _real_amplitudes(c_minus, c_zero, c_plus):
    vals = np.array([c_minus, c_zero, c_plus], dtype=np.complex128)
    if np.abs(vals.imag).max() > 0:
        raise ValueError("closed forms hold for real amplitudes only")
    return vals.real


def invariant_closed_forms(config, c_minus, c_zero, c_plus):
    """Values of the two resonant quadratic invariants for real amplitudes.

    Returns ``(three_sphere_sum, five_sphere_sum)`` for the subsets returned
    by the invariant search, derived from ``s_i = Tr(rho lambda_i)`` directly.
    The coupled "hub" level is ``|+>`` for lambda, ``|->`` for vee and
    ``|0>`` for cascade; the small sum is ``4 c_hub^2 (sum of the other two
    squares)`` except for vee, where all three pair products enter.
    """
    cm, c0, cp = _real_amplitudes(c_minus, c_zero, c_plus)
    config = Configuration.parse(config)
    total = 4 / 3 * (cm ** 2 + c0 ** 2 + cp ** 2) ** 2
    if config is Configuration.LAMBDA:
        small = 4 * cp ** 2 * (c0 ** 2 + cm ** 2)
    elif config is Configuration.VEE:
        # subset {2,4,6}: s2 vanishes for real amplitudes
        small = 4 * cm ** 2 * (cp ** 2 + c0 ** 2)
    else:
        small = 4 * c0 ** 2 * (cp ** 2 + cm ** 2)
    return small, total - small


def printed_invariant_closed_forms(config, c_minus, c_zero, c_plus):
    """The closed forms exactly as tabulated, kept for comparison only.

    Several of them disagree with the subset sums; see
    ``invariant_closed_forms`` for the expressions that hold.
    """
    cm, c0, cp = _real_amplitudes(c_minus, c_zero, c_plus)
    config = Configuration.parse(config)
    norm2 = (cm ** 2 + c0 ** 2 + cp ** 2) ** 2
    if config is Configuration.VEE:
        a = 4 * c0 ** 2 * cp ** 2 + 4 * cp ** 2 * cm ** 2
        b = 4 / 3 * norm2 - 3 * c0 ** 2 * cp ** 2 - 3 * cp ** 2 * cm ** 2
    else:
        a = 4 * cm ** 2 * c0 ** 2 + 4 * c0 ** 2 * cp ** 2
        b = 4 / 3 * norm2 - 3 * cm ** 2 * c0 ** 2 - 3 * c0 ** 2 * cp ** 2
    return a, b


#: Tabulated resonant invariant subsets (1-based component indices).
TABULATED_SUBSETS = {
    Configuration.LAMBDA: ((1, 4, 7), (2, 3, 5, 6, 8)),
    Configuration.VEE: ((1, 4, 6), (2, 3, 5, 7, 8)),
    Configuration.CASCADE: ((1, 5, 6), (2, 3, 4, 7, 8)),
}
