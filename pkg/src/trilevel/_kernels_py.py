"""Pure numpy implementation of the reduced-density time series."""
import numpy as np

# bytes of complex workspace per chunk of time samples
_CHUNK_BYTES = 64 * 2 ** 20


def density_series(A, B, D, src, omega, times):
    """Reduced atomic density matrices along ``times``.

    Parameters
    ----------
    A, B, D : complex ndarray, shape (3, S, P)
        Amplitude coefficients ``c[i,p](t) = sum_s A + B cos(w t) + D sin(w t)``.
    src : int ndarray, shape (3, S, P)
        Column of ``omega`` holding the frequency ``w`` of each term.
    omega : float ndarray, shape (S, Q)
        Block Rabi frequencies of the source states.
    times : float ndarray, shape (T,)

    Returns
    -------
    ndarray, shape (T, 3, 3)
        ``rho[t, i, j] = sum_p c[i,p](t) conj(c[j,p](t))``.
    """
    A, B, D = (np.asarray(x, dtype=np.complex128) for x in (A, B, D))
    omega = np.asarray(omega, dtype=float)
    times = np.asarray(times, dtype=float)
    _, S, P = A.shape
    out = np.empty((len(times), 3, 3), dtype=np.complex128)
    chunk = max(1, _CHUNK_BYTES // max(1, 16 * 3 * S * P * 3))
    s_idx = np.arange(S)[None, :, None]
    w = omega[s_idx, src]
    for lo in range(0, len(times), chunk):
        t = times[lo:lo + chunk, None, None, None]
        ph = w[None] * t
        c = (A + B * np.cos(ph) + D * np.sin(ph)).sum(axis=2)
        out[lo:lo + chunk] = np.einsum("tip,tjp->tij", c, c.conj())
    return out
