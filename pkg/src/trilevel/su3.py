"""Gell-Mann matrices, SU(3) shift operators and structure constants."""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

SQRT3 = np.sqrt(3.0)


def _build_gell_mann():
    lam = np.zeros((8, 3, 3), dtype=np.complex128)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / SQRT3
    lam.setflags(write=False)
    return lam


#: All eight matrices stacked, ``GELL_MANN[i - 1]`` is lambda_i.
GELL_MANN = _build_gell_mann()


def gell_mann(i):
    """Return the Gell-Mann matrix lambda_i for ``1 <= i <= 8`` (a copy)."""
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)):
        raise TypeError(f"index must be an integer, got {type(i).__name__}")
    if not 1 <= i <= 8:
        raise ValueError(f"Gell-Mann index must be in 1..8, got {i}")
    return GELL_MANN[i - 1].copy()


@dataclass(frozen=True)
class ShiftOperatorSet:
    t_plus: np.ndarray
    t_minus: np.ndarray
    u_plus: np.ndarray
    u_minus: np.ndarray
    v_plus: np.ndarray
    v_minus: np.ndarray
    t3: np.ndarray
    u3: np.ndarray
    v3: np.ndarray


@lru_cache(maxsize=None)
def shift_operators():
    """Ladder operators T, U, V and their diagonal partners.

    ``T+ = |+><0|``, ``U+ = |0><-|``, ``V+ = |+><-|``.
    """
    lam = GELL_MANN
    ops = dict(
        t_plus=(lam[0] + 1j * lam[1]) / 2,
        t_minus=(lam[0] - 1j * lam[1]) / 2,
        u_plus=(lam[5] + 1j * lam[6]) / 2,
        u_minus=(lam[5] - 1j * lam[6]) / 2,
        v_plus=(lam[3] + 1j * lam[4]) / 2,
        v_minus=(lam[3] - 1j * lam[4]) / 2,
        t3=lam[2].copy(),
        u3=(SQRT3 * lam[7] - lam[2]) / 2,
        v3=(SQRT3 * lam[7] + lam[2]) / 2,
    )
    for op in ops.values():
        op.setflags(write=False)
    return ShiftOperatorSet(**ops)


@dataclass(frozen=True)
class StructureConstants:
    f: np.ndarray
    d: np.ndarray


@lru_cache(maxsize=None)
def structure_constants():
    """f_ijk and d_ijk from the trace formulas (0-based array indices)."""
    lam = GELL_MANN
    prod = np.einsum("iab,jbc->ijac", lam, lam)
    comm = prod - prod.transpose(1, 0, 2, 3)
    acomm = prod + prod.transpose(1, 0, 2, 3)
    f = np.einsum("ijab,kba->ijk", comm, lam) / 4j
    d = np.einsum("ijab,kba->ijk", acomm, lam) / 4
    f, d = f.real.copy(), d.real.copy()
    f[np.abs(f) < 1e-15] = 0.0
    d[np.abs(d) < 1e-15] = 0.0
    f.setflags(write=False)
    d.setflags(write=False)
    return StructureConstants(f=f, d=d)


def algebra_residuals():
    """Entrywise residuals of the commutation and anticommutation relations.

    Returns two (8, 8) arrays holding, for each pair (i, j), the largest
    absolute entry of ``[l_i, l_j] - 2i f_ijk l_k`` and of
    ``{l_i, l_j} - 4/3 delta_ij - 2 d_ijk l_k``.
    """
    sc = structure_constants()
    lam = GELL_MANN
    prod = np.einsum("iab,jbc->ijac", lam, lam)
    comm = prod - prod.transpose(1, 0, 2, 3)
    acomm = prod + prod.transpose(1, 0, 2, 3)
    comm_rhs = 2j * np.einsum("ijk,kab->ijab", sc.f, lam)
    acomm_rhs = (4 / 3) * np.einsum("ij,ab->ijab", np.eye(8), np.eye(3)) \
        + 2 * np.einsum("ijk,kab->ijab", sc.d, lam)
    return (np.abs(comm - comm_rhs).max(axis=(2, 3)),
            np.abs(acomm - acomm_rhs).max(axis=(2, 3)))


def expand(h):
    """Coefficients h_k of a 3x3 matrix in the Gell-Mann basis plus its trace part.

    Returns ``(h0, coeffs)`` with ``h = h0 * I + sum_k coeffs[k] * lambda_{k+1}``.
    """
    h = np.asarray(h)
    coeffs = np.einsum("kab,ba->k", GELL_MANN, h) / 2
    return np.trace(h) / 3, coeffs
