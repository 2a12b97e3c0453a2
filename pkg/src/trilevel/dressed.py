"""Dressed-state solution of the quantized three-level systems at resonance.

For a fixed initial number state the interaction couples exactly three bare
states, one per atomic level, so the dynamics reduces to a 3x3 block. Each
block has a "hub" level coupled to two "leaf" levels; its spectrum is
``(-Omega, 0, +Omega)``.

Block bases are always ordered by atomic level (+, 0, -). Photon numbers of
each basis state are given as shifts relative to the initial ``(m, n)``
(two-mode lambda and vee) or ``n`` (single-mode equidistant cascade).
"""
from dataclasses import dataclass
from math import pi

import numpy as np

from .configuration import MINUS, PLUS, ZERO, Configuration, Level

_LAMBDA, _VEE, _CASCADE = Configuration.LAMBDA, Configuration.VEE, Configuration.CASCADE
_LOWER, _MIDDLE, _UPPER = Level.LOWER, Level.MIDDLE, Level.UPPER


@dataclass(frozen=True)
class QuantizedParams:
    """Resonant quantized couplings; cascade requires ``g1 == g2``."""

    config: Configuration
    g1: float
    g2: float = None

    def __post_init__(self):
        object.__setattr__(self, "config", Configuration.parse(self.config))
        g2 = self.g1 if self.g2 is None else self.g2
        for name, value in (("g1", self.g1), ("g2", g2)):
            value = float(value)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.config is _CASCADE and self.g1 != self.g2:
            raise ValueError("equidistant cascade requires g1 == g2")

    @property
    def g(self):
        """Common cascade coupling."""
        if self.config is not _CASCADE:
            raise AttributeError("single coupling g is defined for cascade only")
        return self.g1


# Photon shifts (dm, dn) of the (+, 0, -) basis states of each block.
_SHIFTS = {
    (_LAMBDA, _LOWER): ((-1, 0), (-1, 1), (0, 0)),
    (_LAMBDA, _MIDDLE): ((0, -1), (0, 0), (1, -1)),
    (_LAMBDA, _UPPER): ((0, 0), (0, 1), (1, 0)),
    (_VEE, _LOWER): ((-1, 0), (0, -1), (0, 0)),
    (_VEE, _MIDDLE): ((-1, 1), (0, 0), (0, 1)),
    (_VEE, _UPPER): ((0, 0), (1, -1), (1, 0)),
    (_CASCADE, _LOWER): ((0, -2), (0, -1), (0, 0)),
    (_CASCADE, _MIDDLE): ((0, -1), (0, 0), (0, 1)),
    (_CASCADE, _UPPER): ((0, 0), (0, 1), (0, 2)),
}

_HUB = {_LAMBDA: PLUS, _VEE: MINUS, _CASCADE: ZERO}


def block_shifts(config, level):
    """Photon shifts ``((dm, dn), ...)`` of the block basis in order (+, 0, -)."""
    return _SHIFTS[(Configuration.parse(config), Level.parse(level))]


def _photons(p, m, n):
    if p.config is _CASCADE:
        if n is None:
            n, m = m, None
        if m is not None and np.any(np.asarray(m) != np.asarray(n)):
            raise ValueError("cascade uses a single photon number; pass n only")
        m = n
    if m is None or n is None:
        raise ValueError("lambda and vee blocks need both m and n")
    m, n = np.asarray(m), np.asarray(n)
    if not (np.issubdtype(m.dtype, np.integer) and np.issubdtype(n.dtype, np.integer)):
        raise TypeError("photon numbers must be integers")
    if np.any(m < 0) or np.any(n < 0):
        raise ValueError("photon numbers must be non-negative")
    return m, n


def _couplings(config, level, g1, g2, m, n):
    """Coupling of each basis state to the hub, in order (+, 0, -); the hub's own entry is 0."""
    sq = np.sqrt
    m = np.asarray(m, dtype=float)
    n = np.asarray(n, dtype=float)
    zero = np.zeros(np.broadcast(m, n).shape)
    if config is _LAMBDA:
        k = {_LOWER: (sq(n + 1), sq(m)), _MIDDLE: (sq(n), sq(m + 1)),
             _UPPER: (sq(n + 1), sq(m + 1))}[level]
        return (zero, g2 * k[0] + zero, g1 * k[1] + zero)
    if config is _VEE:
        k = {_LOWER: (sq(m), sq(n)), _MIDDLE: (sq(m), sq(n + 1)),
             _UPPER: (sq(m + 1), sq(n))}[level]
        return (g1 * k[0] + zero, g2 * k[1] + zero, zero)
    k = {_LOWER: (sq(n - 1), sq(n)), _MIDDLE: (sq(n), sq(n + 1)),
         _UPPER: (sq(n + 1), sq(n + 2))}[level]
    return (g1 * k[0] + zero, zero, g1 * k[1] + zero)


def block_is_physical(config, level, m, n):
    """False where the initial state has no photon-allowed coupling at all.

    Such a state (for example lambda lower with ``m = 0``) cannot evolve and
    its block would reference negative photon numbers.
    """
    config, level = Configuration.parse(config), Level.parse(level)
    with np.errstate(invalid="ignore"):
        c = _couplings(config, level, 1.0, 1.0, m, np.asarray(n))
    start = level.index
    hub = _HUB[config]
    if start == hub:
        return sum(np.nan_to_num(x) for x in c) > 0
    return np.nan_to_num(c[start]) > 0


def _check_physical(p, level, m, n):
    if not np.all(block_is_physical(p.config, level, m, n)):
        raise ValueError(
            f"initial state ({p.config.value}, {level.value}, m={m}, n={n}) is not "
            "coupled by any photon-allowed transition")


def number_state_hamiltonian(p, level, m=None, n=None):
    """Resonant interaction block in the number-state basis (order +, 0, -)."""
    level = Level.parse(level)
    m, n = _photons(p, m, n)
    _check_physical(p, level, m, n)
    c = _couplings(p.config, level, p.g1, p.g2, int(m), int(n))
    hub = _HUB[p.config]
    h = np.zeros((3, 3), dtype=np.complex128)
    for j in range(3):
        if j != hub:
            h[hub, j] = h[j, hub] = float(c[j])
    return h


def rabi_frequency(p, level, m=None, n=None):
    """Block Rabi frequency ``Omega`` (the positive eigenvalue)."""
    level = Level.parse(level)
    m, n = _photons(p, m, n)
    with np.errstate(invalid="ignore"):
        c = _couplings(p.config, level, p.g1, p.g2, m, n)
    total = sum(np.nan_to_num(x) ** 2 for x in c)
    out = np.sqrt(total)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------- Euler angles

def euler_matrix(theta1, theta2, theta3):
    """Orthogonal matrix of the dressed-state rotation.

    Rows are the dressed states belonging to eigenvalues ``(+Omega, 0,
    -Omega)``. ``theta1`` and ``theta3`` are the outer rotations; in the
    element table ``c_1, s_1`` carry ``theta3`` and ``c_3, s_3`` carry
    ``theta1``, which is the assignment under which the tabulated angle sets
    diagonalize their blocks.
    """
    s1, c1 = np.sin(theta3), np.cos(theta3)
    s2, c2 = np.sin(theta2), np.cos(theta2)
    s3, c3 = np.sin(theta1), np.cos(theta1)
    return np.array([
        [c1 * c2 - c3 * s2 * s1, c1 * s2 + c3 * c2 * s1, s1 * s3],
        [-s1 * c2 - c3 * s2 * c1, -s1 * s2 + c3 * c2 * c1, c1 * s3],
        [s3 * s2, -s3 * c2, c3],
    ])


def _acos(x):
    return float(np.arccos(np.clip(x, -1.0, 1.0)))


def tabulated_euler_angles(p, level, m=None, n=None, corrected=True):
    """Closed-form mixing angles ``(theta1, theta2, theta3)`` of a block.

    With ``corrected=False`` the cascade lower-level ``theta2`` uses the
    denominator ``3n - 1`` as tabulated; that set does not diagonalize its
    block. The default uses ``3n - 2``, which does.
    """
    level = Level.parse(level)
    m, n = _photons(p, m, n)
    _check_physical(p, level, m, n)
    m, n = int(m), int(n)
    sq = np.sqrt
    if p.config is _LAMBDA:
        c = _couplings(_LAMBDA, level, p.g1, p.g2, m, n)
        b, a = float(c[1]), float(c[2])  # n-mode (to |0>) and m-mode (to |->)
        om = sq(a * a + b * b)
        if om == 0:
            return (0.0, 0.0, 0.0)
        r = sq(om * om + b * b)
        return (_acos(a / (sq(2) * om)), -_acos(-b / r), _acos(-sq(2) * b / r))
    if p.config is _VEE:
        c = _couplings(_VEE, level, p.g1, p.g2, m, n)
        om = sq(float(c[0]) ** 2 + float(c[1]) ** 2)
        if om == 0:
            return (0.0, 0.0, 0.0)
        return (-pi / 4, _acos(-float(c[1]) / om), -pi / 2)
    if p.g1 == 0:
        return (0.0, 0.0, 0.0)
    if level is _LOWER:
        den2 = 3 * n - 2 if corrected else 3 * n - 1
        return (-_acos(sq(n / (4 * n - 2))), -_acos(-sq((2 * n - 1) / den2)),
                -_acos(-sq((2 * n - 2) / (3 * n - 2))))
    if level is _MIDDLE:
        return (-_acos(sq((n + 1) / (4 * n + 2))), -_acos(-sq((2 * n + 1) / (3 * n + 1))),
                -_acos(-sq(2 * n / (3 * n + 1))))
    return (-_acos(sq((n + 2) / (4 * n + 6))), -_acos(-sq((2 * n + 3) / (3 * n + 4))),
            -_acos(-sq((2 * n + 2) / (3 * n + 4))))


@dataclass(frozen=True)
class DressedBasisSolution:
    """Eigen-decomposition ``T H T^T = diag(eigenvalues)`` of one block.

    ``eigenvalues`` are ordered ``(+Omega, 0, -Omega)`` to match the rows of
    ``transform``.
    """

    initial_level: Level
    photon_indices: tuple
    eigenvalues: np.ndarray
    euler_angles: tuple
    transform: np.ndarray

    @property
    def omega(self):
        return float(self.eigenvalues[0])


def euler_solution(p, level, m=None, n=None):
    level = Level.parse(level)
    mm, nn = _photons(p, m, n)
    h = number_state_hamiltonian(p, level, m, n)
    photons = (int(nn),) if p.config is _CASCADE else (int(mm), int(nn))
    om = rabi_frequency(p, level, m, n)
    if om == 0:
        return DressedBasisSolution(level, photons, np.zeros(3), (0.0, 0.0, 0.0), np.eye(3))
    angles = tabulated_euler_angles(p, level, m, n)
    t = euler_matrix(*angles)
    residual = np.abs(t @ h.real @ t.T - np.diag([om, 0.0, -om])).max()
    if residual > 1e-9 * max(1.0, om):
        raise ArithmeticError(f"tabulated angles fail to diagonalize block (residual {residual:.3g})")
    return DressedBasisSolution(level, photons, np.array([om, 0.0, -om]), angles, t)


# ------------------------------------------------------- closed-form amplitudes

def closed_form_coefficients(p, level, m=None, n=None):
    """Coefficients of ``d_j(t) = A_j + B_j cos(Omega t) + D_j sin(Omega t)``.

    Vectorized over integer arrays ``m`` and ``n``. Returns
    ``(A, B, D, omega)``; ``A``, ``B``, ``D`` have a leading axis of 3 in
    basis order (+, 0, -). Where ``Omega = 0`` the limits apply (the initial
    state is stationary). Entries where the block is unphysical are NaN.
    """
    level = Level.parse(level)
    m, n = _photons(p, m, n)
    g1, g2 = p.g1, p.g2
    shape = np.broadcast(m, n).shape
    # 1-D views keep every division in numpy, where 0/0 gives nan instead of raising
    mf, nf = np.atleast_1d(m.astype(float)), np.atleast_1d(n.astype(float))
    work = np.broadcast(mf, nf).shape
    A = np.zeros((3,) + work, dtype=np.complex128)
    B = np.zeros_like(A)
    D = np.zeros_like(A)
    sq = np.sqrt
    key = (p.config, level)
    with np.errstate(divide="ignore", invalid="ignore"):
        if p.config is _LAMBDA:
            if level is _LOWER:
                om2 = g1 ** 2 * mf + g2 ** 2 * (nf + 1)
                om = sq(om2)
                D[PLUS] = -1j * g1 * sq(mf) / om
                x = g1 * g2 * sq(mf * (nf + 1)) / om2
                A[ZERO], B[ZERO] = -x, x
                A[MINUS], B[MINUS] = g2 ** 2 * (nf + 1) / om2, g1 ** 2 * mf / om2
            elif level is _MIDDLE:
                om2 = g1 ** 2 * (mf + 1) + g2 ** 2 * nf
                om = sq(om2)
                D[PLUS] = -1j * g2 * sq(nf) / om
                A[ZERO], B[ZERO] = g1 ** 2 * (mf + 1) / om2, g2 ** 2 * nf / om2
                x = g1 * g2 * sq(nf * (mf + 1)) / om2
                A[MINUS], B[MINUS] = -x, x
            else:
                om2 = g1 ** 2 * (mf + 1) + g2 ** 2 * (nf + 1)
                om = sq(om2)
                B[PLUS] = 1.0
                D[ZERO] = -1j * g2 * sq(nf + 1) / om
                D[MINUS] = -1j * g1 * sq(mf + 1) / om
        elif p.config is _VEE:
            if level is _LOWER:
                om2 = g1 ** 2 * mf + g2 ** 2 * nf
                om = sq(om2)
                D[PLUS] = -1j * g1 * sq(mf) / om
                D[ZERO] = -1j * g2 * sq(nf) / om
                B[MINUS] = 1.0
            elif level is _MIDDLE:
                om2 = g1 ** 2 * mf + g2 ** 2 * (nf + 1)
                om = sq(om2)
                x = g1 * g2 * sq(mf * (nf + 1)) / om2
                A[PLUS], B[PLUS] = -x, x
                A[ZERO], B[ZERO] = g1 ** 2 * mf / om2, g2 ** 2 * (nf + 1) / om2
                D[MINUS] = -1j * g2 * sq(nf + 1) / om
            else:
                om2 = g1 ** 2 * (mf + 1) + g2 ** 2 * nf
                om = sq(om2)
                A[PLUS], B[PLUS] = g2 ** 2 * nf / om2, g1 ** 2 * (mf + 1) / om2
                x = g1 * g2 * sq((mf + 1) * nf) / om2
                A[ZERO], B[ZERO] = -x, x
                D[MINUS] = -1j * g1 * sq(mf + 1) / om
        else:
            g = g1
            if level is _LOWER:
                om2 = g * g * (2 * nf - 1)
                om = sq(om2)
                x = g * g * sq(nf * (nf - 1)) / om2
                A[PLUS], B[PLUS] = -x, x
                D[ZERO] = -1j * g * sq(nf) / om
                A[MINUS], B[MINUS] = g * g * (nf - 1) / om2, g * g * nf / om2
            elif level is _MIDDLE:
                om2 = g * g * (2 * nf + 1)
                om = sq(om2)
                D[PLUS] = -1j * g * sq(nf) / om
                B[ZERO] = 1.0
                D[MINUS] = -1j * g * sq(nf + 1) / om
            else:
                om2 = g * g * (2 * nf + 3)
                om = sq(om2)
                A[PLUS], B[PLUS] = g * g * (nf + 2) / om2, g * g * (nf + 1) / om2
                D[ZERO] = -1j * g * sq(nf + 1) / om
                x = g * g * sq((nf + 1) * (nf + 2)) / om2
                A[MINUS], B[MINUS] = -x, x
    om = np.broadcast_to(np.nan_to_num(om), work).reshape(shape).copy()
    A, B, D = (x.reshape((3,) + shape) for x in (A, B, D))
    start = level.index
    still = om == 0
    if np.any(still):
        for arr in (A, B, D):
            arr[:, still] = 0
        A[start, still] = 1.0
    bad = ~np.broadcast_to(block_is_physical(*key, m, n), shape)
    if np.any(bad):
        for arr in (A, B, D):
            arr[:, bad] = np.nan
        om[bad] = np.nan
    return A, B, D, om


@dataclass(frozen=True)
class AmplitudeTriple:
    """Block amplitudes ``d`` in basis order (+, 0, -).

    ``amplitudes`` has shape ``(3,)`` for scalar time or ``(3, T)`` for an
    array of times. ``photons[j]`` gives the photon numbers of basis state
    ``j`` (``(m, n)`` or ``(n,)``).
    """

    config: Configuration
    initial_level: Level
    amplitudes: np.ndarray
    photons: tuple
    times: np.ndarray

    @property
    def levels(self):
        return (Level.UPPER, Level.MIDDLE, Level.LOWER)

    @property
    def norm(self):
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)


def _check_times(t):
    times = np.asarray(t, dtype=float)
    if np.any(times < 0) or not np.all(np.isfinite(times)):
        raise ValueError("times must be finite and non-negative")
    return times


def _photon_tags(p, level, m, n):
    shifts = block_shifts(p.config, level)
    if p.config is _CASCADE:
        return tuple((int(n) + dn,) for _, dn in shifts)
    return tuple((int(m) + dm, int(n) + dn) for dm, dn in shifts)


def amplitudes_closed_form(p, level, m=None, n=None, t=0.0):
    level = Level.parse(level)
    mm, nn = _photons(p, m, n)
    _check_physical(p, level, mm, nn)
    times = _check_times(t)
    A, B, D, om = closed_form_coefficients(p, level, int(mm), int(nn))
    phase = float(om) * times
    d = A[:, None] + B[:, None] * np.cos(phase).reshape(1, -1) + D[:, None] * np.sin(phase).reshape(1, -1)
    d = d[:, 0] if times.ndim == 0 else d
    return AmplitudeTriple(p.config, level, d, _photon_tags(p, level, mm, nn), times)


def amplitudes_spectral(p, level, m=None, n=None, t=0.0):
    """Amplitudes from ``T^T diag(exp(-i lambda t)) T e_start``."""
    level = Level.parse(level)
    mm, nn = _photons(p, m, n)
    times = _check_times(t)
    sol = euler_solution(p, level, m, n)
    tr = sol.transform
    start = np.zeros(3)
    start[level.index] = 1.0
    proj = tr @ start
    phases = np.exp(-1j * np.outer(sol.eigenvalues, np.atleast_1d(times)))
    d = tr.T @ (phases * proj[:, None])
    d = d[:, 0] if times.ndim == 0 else d
    return AmplitudeTriple(p.config, level, d, _photon_tags(p, level, mm, nn), times)


# ------------------------------------------------------ atom-field recombination

@dataclass(frozen=True)
class EntangledCoefficients:
    """Time-independent data of the atom-field amplitudes on a photon grid.

    ``c[i, p](t) = sum_s A[i,s,p] + B[i,s,p] cos(w t) + D[i,s,p] sin(w t)``
    with ``w = omega[s, src[i,s,p]]``. ``i`` is the atomic level of the
    amplitude, ``s`` runs over the initially populated levels (``sources``),
    ``p`` indexes the flattened photon grid of shape ``grid_shape``.
    """

    config: Configuration
    grid_shape: tuple
    sources: tuple
    A: np.ndarray
    B: np.ndarray
    D: np.ndarray
    src: np.ndarray
    omega: np.ndarray
    norm_deficit: float
    warnings: tuple

    def amplitudes(self, t):
        """Amplitude array of shape ``(3,) + grid_shape`` at scalar ``t``."""
        s_idx = np.arange(len(self.sources))[None, :, None]
        ph = self.omega[s_idx, self.src] * float(t)
        c = (self.A + self.B * np.cos(ph) + self.D * np.sin(ph)).sum(axis=1)
        return c.reshape((3,) + self.grid_shape)

    def active(self):
        """Copy restricted to grid points that can carry amplitude."""
        keep = np.flatnonzero((np.abs(self.A) + np.abs(self.B) + np.abs(self.D)).sum(axis=(0, 1)))
        return self.A[..., keep], self.B[..., keep], self.D[..., keep], self.src[..., keep]


NORM_WARNING_THRESHOLD = 1e-6


def entangled_coefficients(p, atom0, field):
    """Build :class:`EntangledCoefficients` for a product initial state.

    The initial state is ``atom0 x field`` truncated at the field cutoffs.
    The grid extends past the cutoff by the largest upward photon shift, so
    every reachable state is kept and the evolution is exactly unitary on the
    truncated initial state; ``norm_deficit`` is the weight lost by
    truncating the field.
    """
    atom = atom0.as_array()
    if abs(np.linalg.norm(atom) - 1) > 1e-10:
        raise ValueError("initial atomic state must be normalized")
    cascade = p.config is _CASCADE
    if cascade != field.single_mode:
        want = "a single-mode" if cascade else "a two-mode"
        raise ValueError(f"{p.config.value} needs {want} field")
    extra = 2 if cascade else 1
    cn = field.amplitudes_n()
    cm = np.ones(1) if cascade else field.amplitudes_m()
    grid = (len(cn) + extra,) if cascade else (len(cm) + extra, len(cn) + extra)
    size = int(np.prod(grid))
    ng = grid[-1]
    if cascade:
        m_src = n_src = np.arange(len(cn))
        weight = cn.copy()
    else:
        m_src, n_src = (x.ravel() for x in np.meshgrid(np.arange(len(cm)), np.arange(len(cn)), indexing="ij"))
        weight = cm[m_src] * cn[n_src]
    src_flat = n_src if cascade else m_src * ng + n_src

    sources = tuple(s for s in range(3) if atom[s] != 0)
    ns = len(sources)
    A = np.zeros((3, ns, size), dtype=np.complex128)
    B = np.zeros_like(A)
    D = np.zeros_like(A)
    src = np.zeros((3, ns, size), dtype=np.int64)
    omega = np.zeros((ns, size))
    levels = {lv.index: lv for lv in Level}
    for k, s in enumerate(sources):
        level = levels[s]
        a, b, d, om = closed_form_coefficients(p, level, m_src, n_src)
        phys = block_is_physical(p.config, level, m_src, n_src)
        for arr in (a, b, d):
            arr[:, ~phys] = 0
        a[s, ~phys] = 1.0
        om = np.where(phys, om, 0.0)
        omega[k, src_flat] = om
        w = atom[s] * weight
        for i, (dm, dn) in enumerate(block_shifts(p.config, level)):
            tn = n_src + dn
            tm = m_src + (0 if cascade else dm)
            ok = (tn >= 0) & (tm >= 0)
            lost = np.abs(a[i]) + np.abs(b[i]) + np.abs(d[i])
            if np.any(lost[~ok] > 0):
                raise ArithmeticError("amplitude routed to a negative photon number")
            tgt = (tn if cascade else tm * ng + tn)[ok]
            A[i, k, tgt] = w[ok] * a[i][ok]
            B[i, k, tgt] = w[ok] * b[i][ok]
            D[i, k, tgt] = w[ok] * d[i][ok]
            src[i, k, tgt] = src_flat[ok]
    deficit = max(0.0, 1.0 - field.truncated_norm())
    warnings = ()
    if deficit > NORM_WARNING_THRESHOLD:
        warnings = (f"field truncation norm deficit {deficit:.3e} exceeds {NORM_WARNING_THRESHOLD:g}; "
                    "raise the photon cutoff",)
    return EntangledCoefficients(p.config, grid, sources, A, B, D, src, omega, deficit, warnings)


def entangled_amplitudes(p, atom0, field, t):
    """Atom-field state ``C^i_{m,n}(t)`` (or ``C^i_n(t)`` for cascade)."""
    from .states import EntangledState

    t = float(_check_times(t))
    coeffs = entangled_coefficients(p, atom0, field)
    return EntangledState(p.config, coeffs.amplitudes(t), t, coeffs.norm_deficit, coeffs.warnings)
