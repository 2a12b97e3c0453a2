"""Four-angle qutrit wavefunction and its Bloch-sphere equivalence.

The state is

    cos(t0/2)|->
    + sin(t0/2) sin(t1/2) sin(t2/2) e^{i phi} |0>
    + sin(t0/2) (cos(t1/2) + i sin(t1/2) cos(t2/2)) |+>

with ``t0, t1, t2`` in [0, pi]. Density matrices are returned in the
package basis order (+, 0, -).
"""
from dataclasses import dataclass
from math import pi, tau

import numpy as np

from .bloch import bloch_from_density, density_from_amplitudes
from .states import StateVector3

_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class QutritAngles:
    theta0: float
    theta1: float
    theta2: float
    phi: float = 0.0

    def __post_init__(self):
        for name in ("theta0", "theta1", "theta2"):
            value = float(getattr(self, name))
            if not -_ANGLE_TOL <= value <= pi + _ANGLE_TOL:
                raise ValueError(f"{name}={value} outside [0, pi]")
            object.__setattr__(self, name, min(max(value, 0.0), pi))
        phi = float(self.phi)
        if not np.isfinite(phi):
            raise ValueError("phi must be finite")
        phi %= tau
        # tiny negative phases round up to exactly tau
        object.__setattr__(self, "phi", 0.0 if phi == tau else phi)


def _as_angles(a):
    return a if isinstance(a, QutritAngles) else QutritAngles(*a)


def qutrit_wavefunction(a):
    a = _as_angles(a)
    h0, h1, h2 = a.theta0 / 2, a.theta1 / 2, a.theta2 / 2
    c_minus = np.cos(h0)
    c_zero = np.sin(h0) * np.sin(h1) * np.sin(h2) * np.exp(1j * a.phi)
    c_plus = np.sin(h0) * (np.cos(h1) + 1j * np.sin(h1) * np.cos(h2))
    return StateVector3(c_minus, c_zero, c_plus)


def qutrit_density(a):
    return density_from_amplitudes(qutrit_wavefunction(a).as_array())


def qutrit_bloch_norm(a):
    """Squared length of the Bloch vector of the qutrit state (4/3 when pure)."""
    s = bloch_from_density(qutrit_density(a))
    return float(s @ s)


def qubit_reduction(a):
    """The qutrit state at theta1 = theta2 = pi, which spans only |-> and |0>."""
    a = _as_angles(a)
    if abs(a.theta1 - pi) > _ANGLE_TOL or abs(a.theta2 - pi) > _ANGLE_TOL:
        raise ValueError("qubit reduction requires theta1 = theta2 = pi")
    return qutrit_wavefunction(a)


def printed_density_entries(a):
    """Tabulated closed-form density entries keyed by 1-based (row, col).

    Row/column 1 is |->, 2 is |0>, 3 is |+>. The tabulated entries equal
    ``conj(c_i) c_j``, i.e. the transpose of ``|q><q|`` in that ordering;
    ``(1, 1)`` is printed as ``cos^2(theta1/2)``.
    """
    a = _as_angles(a)
    h0, h1, h2 = a.theta0 / 2, a.theta1 / 2, a.theta2 / 2
    s0, c1, s1, c2, s2 = np.sin(h0), np.cos(h1), np.sin(h1), np.cos(h2), np.sin(h2)
    e = np.exp(1j * a.phi)
    t1, t2 = a.theta1, a.theta2
    out = {
        (1, 1): np.cos(h1) ** 2,
        (2, 2): s0 ** 2 * s1 ** 2 * s2 ** 2,
        (3, 3): 0.25 * (3 + np.cos(t1) + np.cos(t2) - np.cos(t1) * np.cos(t2)) * s0 ** 2,
        (1, 2): 0.5 * e * np.sin(a.theta0) * s1 * s2,
        (2, 3): np.conj(e) * s0 ** 2 * s1 * (c1 + 1j * s1 * c2) * s2,
        (1, 3): 0.5 * np.sin(a.theta0) * (c1 + 1j * s1 * c2),
    }
    for (i, j) in list(out):
        if i != j:
            out[(j, i)] = np.conj(out[(i, j)])
    return out
