"""Reduced atomic density matrix, atomic entropy and population inversions."""
from dataclasses import dataclass, field

import numpy as np

from .dressed import entangled_coefficients
from .kernels import density_series
from .su3 import shift_operators

_EIG_TOL = 1e-10


def reduced_atomic_density(state):
    """Trace out the field: ``rho[i, j] = sum_k c[i, k] conj(c[j, k])``.

    ``state`` is an :class:`~trilevel.states.EntangledState` or a raw array
    whose first axis is the atomic level.
    """
    c = getattr(state, "c", state)
    c = np.asarray(c, dtype=np.complex128).reshape(3, -1)
    return c @ c.conj().T


def _clamped_eigvals(rho):
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape[-2:] != (3, 3):
        raise ValueError("expected 3x3 density matrices")
    herm = np.abs(rho - np.swapaxes(rho.conj(), -1, -2)).max()
    if herm > _EIG_TOL:
        raise ValueError(f"density matrix is not Hermitian (residual {herm:.3g})")
    w = np.linalg.eigvalsh(rho)
    if w.min() < -_EIG_TOL:
        raise ValueError(f"density matrix has negative eigenvalue {w.min():.3g}")
    if w.max() > 1 + _EIG_TOL:
        raise ValueError(f"density matrix has eigenvalue {w.max():.3g} above 1")
    return np.clip(w, 0.0, 1.0)


def atomic_entropy(rho_a, base="e"):
    """Von Neumann entropy ``-sum p ln p`` of one or more 3x3 density matrices.

    Parameters
    ----------
    rho_a : array_like, shape (..., 3, 3)
    base : {"e", "2"}
        Logarithm base; natural by default.
    """
    if str(base) not in ("e", "2"):
        raise ValueError(f"entropy base must be 'e' or '2', got {base!r}")
    w = _clamped_eigvals(rho_a)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0, -w * np.log(w), 0.0)
    s = terms.sum(axis=-1)
    if str(base) == "2":
        s = s / np.log(2.0)
    return float(s) if np.ndim(s) == 0 else s


def _diag_ops():
    ops = shift_operators()
    return np.stack([np.diag(ops.t3).real, np.diag(ops.u3).real, np.diag(ops.v3).real])


def population_inversions(state_or_rho):
    """``(w12, w23, w13) = Tr(rho T3), Tr(rho U3), Tr(rho V3)``.

    Accepts an entangled state or reduced density matrices of shape
    ``(..., 3, 3)``; for a stack the three outputs are arrays.
    """
    if hasattr(state_or_rho, "c"):
        rho = reduced_atomic_density(state_or_rho)
    else:
        rho = np.asarray(state_or_rho)
    pops = np.diagonal(rho, axis1=-2, axis2=-1).real
    w = pops @ _diag_ops().T
    if w.ndim == 1:
        return tuple(float(x) for x in w)
    return w[..., 0], w[..., 1], w[..., 2]


@dataclass(frozen=True)
class ObservableSeries:
    times: np.ndarray
    entropy: np.ndarray
    w12: np.ndarray
    w23: np.ndarray
    w13: np.ndarray
    base: str = "e"
    norm_deficit: float = 0.0
    max_trace_error: float = 0.0
    warnings: tuple = field(default_factory=tuple)

    def __len__(self):
        return len(self.times)

    def channel(self, name):
        return {"w12": self.w12, "w23": self.w23, "w13": self.w13}[name]


def density_timeseries(p, atom0, field_state, times):
    """Reduced atomic density matrices on a time grid, plus the coefficient data."""
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) == 0:
        raise ValueError("time grid must be a non-empty 1-D array")
    if np.any(np.diff(times) < 0):
        raise ValueError("time grid must be monotone non-decreasing")
    if times[0] < 0:
        raise ValueError("times must be non-negative")
    coeffs = entangled_coefficients(p, atom0, field_state)
    A, B, D, src = coeffs.active()
    rho = density_series(A, B, D, src, coeffs.omega, times)
    return rho, coeffs


def simulate_observables(p, atom0, field_state, times, base="e"):
    """Entropy and inversions of the reduced atomic state along ``times``.

    Each density matrix is divided by its own trace, which keeps the
    populations inside [0, 1] to the last bit. The truncation deficit and
    the largest departure of the trace from ``1 - deficit`` are reported.
    """
    rho, coeffs = density_timeseries(p, atom0, field_state, times)
    trace = np.trace(rho, axis1=1, axis2=2).real
    norm0 = 1.0 - coeffs.norm_deficit
    trace_err = float(np.abs(trace / norm0 - 1).max())
    rho = rho / trace[:, None, None]
    entropy = atomic_entropy(rho, base=base)
    w12, w23, w13 = population_inversions(rho)
    return ObservableSeries(np.asarray(times, dtype=float), np.atleast_1d(entropy), w12, w23, w13,
                            str(base), coeffs.norm_deficit, trace_err, coeffs.warnings)
