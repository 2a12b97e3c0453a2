"""Collapse and revival of the population inversions.

Analytic high-field envelopes exist for the equidistant cascade. For the
two-mode lambda and vee systems only a numerical estimate of the revival
time is available. Numeric extraction works on any inversion series.
"""
from dataclasses import dataclass
from math import pi, sqrt

import numpy as np
from scipy.ndimage import uniform_filter1d
from scipy.signal import find_peaks

from .configuration import Configuration, Level
from .dressed import rabi_frequency

# Rabi-frequency expansion offsets b_case in sqrt(2 nbar + b)
_B = {Level.LOWER: -1, Level.MIDDLE: 1, Level.UPPER: 3}


def _check(nbar, g=None):
    if not nbar >= 1:
        raise ValueError(f"mean photon number must be >= 1, got {nbar}")
    if g is not None and not g > 0:
        raise ValueError(f"coupling must be positive, got {g}")


@dataclass(frozen=True)
class LinearRabi:
    """``Omega(n) ~ slope * (n + offset)`` around the mean photon number."""

    slope: float
    offset: float

    def __call__(self, n):
        return self.slope * (np.asarray(n, dtype=float) + self.offset)


def rabi_expansion(nbar, g, case, printed=True):
    """First-order expansion of the cascade Rabi frequency about ``nbar``.

    With ``printed=True`` the upper-level offset is ``3 nbar`` as tabulated;
    ``printed=False`` uses the Taylor offset ``nbar + 3``. The lower and
    middle forms are the Taylor expansions in either mode.
    """
    _check(nbar)
    level = Level.parse(case)
    b = _B[level]
    slope = g / sqrt(2 * nbar + b)
    if level is Level.UPPER:
        offset = 3 * nbar if printed else nbar + 3
    else:
        offset = nbar + b
    return LinearRabi(slope, offset)


def _term(amp, k, env, carrier, wobble, nbar, t):
    """``amp * exp(-k nbar (1 - cos(env t))) * cos(carrier t + nbar sin(wobble t))``."""
    return amp * np.exp(-k * nbar * (1 - np.cos(env * t))) * np.cos(carrier * t + nbar * np.sin(wobble * t))


def _envelope_terms(level, nbar, g, patterned):
    n = nbar
    if level is Level.LOWER:
        r = sqrt(2 * n - 1)
        c1 = (g / r, g * (n - 1) / r, g / r)
        c2 = (2 * g / r, 2 * g * (n - 1) / r, 2 * g / r)
        return (
            (1 / 8, [(1 / 2, 1) + c1, (3 / 8, 1) + c2]),
            (-1 / 8, [(1 / 2, 1, g / r, g * (2 * n - 1) / sqrt(n - 1), g / r), (-3 / 8, 1) + c2]),
            (0.0, [(1.0, 1) + c1]),
        )
    if level is Level.MIDDLE:
        r = sqrt(2 * n + 1)
        c1 = (g / r, g * (n + 1) / r, g / r)
        c2 = (g / r, 2 * g * (n + 1) / r, 2 * g / r)
        return (
            (-3 / 8, [(-5 / 8, 1) + c1]),
            (1 / 4, [(3 / 4, 1) + c2]),
            (-1 / 8, [(1 / 8, 1) + c2]),
        )
    r = sqrt(2 * n + 3)
    if patterned:
        w12 = [(-1 / 2, 1, g / r, g * (n + 3) / r, g / r),
               (3 / 8, 1, 2 * g / r, 2 * g * (n + 3) / r, 2 * g / r)]
    else:
        w12 = [(-1 / 2, 1, g / sqrt(3 * n + 2), g * (n + 3) / r, g / r),
               (3 / 8, 2, 2 * g / sqrt(n + 3), 2 * g * (n + 3) / r, 2 * g / r)]
    return (
        (1 / 8, w12),
        (-1 / 8, [(-1 / 2, 1, g / r, g * (n + 3) / r, g / r),
                  (-3 / 8, 1, 2 * g / r, 2 * g * (n + 3) / r, 2 * g / sqrt(n - 1))]),
        (0.0, [(-1.0, 1, g / r, 2 * g * (n + 3) / r, g / r)]),
    )


def analytic_envelope(case, nbar, g, t, patterned=True):
    """High-field cascade inversions ``(w12, w23, w13)`` in closed form.

    Each expression is a constant plus terms
    ``a exp(-k nbar (1 - cos(w_e t))) cos(w_c t + nbar sin(w_s t))`` with
    coefficients as tabulated, apart from one choice: for the upper level
    ``patterned=True`` replaces the two envelope exponents of ``w12`` by the
    lower-level pattern in ``sqrt(2 nbar + 3)``. ``patterned=False`` keeps
    the tabulated ``sqrt(3 nbar + 2)`` and ``2 nbar (1 - cos(2 g t /
    sqrt(nbar + 3)))`` exponents.

    These envelopes are timescale estimates; their constant terms are not
    the exact inversions (the lower-level ``w12`` starts at 1, not 0).
    """
    _check(nbar)
    level = Level.parse(case)
    t = np.asarray(t, dtype=float)
    out = []
    for const, terms in _envelope_terms(level, nbar, g, patterned):
        val = const + sum(_term(*term, nbar, t) for term in terms)
        out.append(val)
    return tuple(out)


def envelope_factors(case, nbar, g, t):
    """The slow exponential factors ``exp(-nbar (1 - cos(k g t / r)))``, k = 1, 2."""
    _check(nbar)
    r = sqrt(2 * nbar + _B[Level.parse(case)])
    t = np.asarray(t, dtype=float)
    return tuple(np.exp(-nbar * (1 - np.cos(k * g * t / r))) for k in (1, 2))


@dataclass(frozen=True)
class RevivalEstimate:
    """Collapse and revival times. The second pair is ``None`` for the middle level."""

    case: Level
    nbar: float
    g: float
    t_collapse_1: float
    t_revival_1: float
    t_collapse_2: float = None
    t_revival_2: float = None


def collapse_revival_times(case, nbar, g):
    """High-field cascade collapse and revival times.

    ``t_c1 = sqrt(2 (2 nbar + b)) / (g sqrt(nbar))`` and
    ``t_r1 = 2 pi sqrt(2 nbar + b) / g`` with ``b = -1, 1, 3`` for the
    lower, middle and upper starting level. The lower and upper levels
    also carry a second pattern at half these times.
    """
    _check(nbar, g)
    level = Level.parse(case)
    r = sqrt(2 * nbar + _B[level])
    tc1 = sqrt(2) * r / (g * sqrt(nbar))
    tr1 = 2 * pi * r / g
    if level is Level.MIDDLE:
        return RevivalEstimate(level, nbar, g, tc1, tr1)
    return RevivalEstimate(level, nbar, g, tc1, tr1, tc1 / 2, tr1 / 2)


def two_mode_revival_time(p, level, nbar_m, nbar_n):
    """Revival estimate ``2 pi / max(dOmega/dm, dOmega/dn)`` at the mean photon numbers.

    The Rabi frequency of a lambda or vee block depends on two photon
    numbers; each mode's Poisson spread dephases at its own rate and the
    faster one sets the first revival. Derivatives are central differences
    of the exact frequency.
    """
    if Configuration.parse(p.config) is Configuration.CASCADE:
        raise ValueError("use collapse_revival_times for the cascade")
    m0, n0 = float(nbar_m), float(nbar_n)
    level = Level.parse(level)

    def om(m, n):
        return float(np.sqrt(_omega2(p, level, m, n)))

    h = 0.5
    dm = (om(m0 + h, n0) - om(m0 - h, n0)) / (2 * h)
    dn = (om(m0, n0 + h) - om(m0, n0 - h)) / (2 * h)
    rate = max(abs(dm), abs(dn))
    if rate == 0:
        raise ValueError("Rabi frequency does not depend on photon numbers")
    return 2 * pi / rate


def _omega2(p, level, m, n):
    # Omega^2 continued to real photon numbers; agrees with rabi_frequency on integers
    k1 = {Level.LOWER: (0, 1), Level.MIDDLE: (1, 0), Level.UPPER: (1, 1)}
    k2 = {Level.LOWER: (0, 0), Level.MIDDLE: (0, 1), Level.UPPER: (1, 0)}
    dm, dn = (k1 if p.config is Configuration.LAMBDA else k2)[level]
    return p.g1 ** 2 * (m + dm) + p.g2 ** 2 * (n + dn)


def mean_rabi_frequency(p, level, nbar_m=None, nbar_n=None):
    """Block Rabi frequency at the rounded mean photon numbers."""
    if p.config is Configuration.CASCADE:
        return rabi_frequency(p, level, n=int(round(nbar_n)))
    return rabi_frequency(p, level, int(round(nbar_m)), int(round(nbar_n)))


# ------------------------------------------------------------ numeric extraction

def dominant_period(times, signal):
    """Period of the strongest non-zero Fourier component of ``signal``."""
    times = np.asarray(times, dtype=float)
    y = np.asarray(signal, dtype=float)
    y = y - y.mean()
    dt = np.diff(times)
    if len(y) < 4 or not np.allclose(dt, dt[0], rtol=1e-6, atol=0):
        raise ValueError("dominant_period needs a uniform grid of at least 4 samples")
    spec = np.abs(np.fft.rfft(y))
    freqs = np.fft.rfftfreq(len(y), dt[0])
    spec[0] = 0
    k = int(np.argmax(spec))
    if spec[k] == 0:
        return None
    return 1.0 / freqs[k]


def rms_envelope(times, signal, window):
    """Oscillation amplitude from a sliding-window RMS.

    ``sqrt(2 * mean((w - mean(w))^2))`` over a centred window of duration
    ``window``; a pure sinusoid of amplitude ``a`` gives ``a``.
    """
    times = np.asarray(times, dtype=float)
    y = np.asarray(signal, dtype=float)
    dt = (times[-1] - times[0]) / max(1, len(times) - 1)
    size = max(3, int(round(window / dt)) | 1)
    mean = uniform_filter1d(y, size, mode="nearest")
    var = uniform_filter1d((y - mean) ** 2, size, mode="nearest")
    return np.sqrt(2 * np.clip(var, 0, None))


@dataclass(frozen=True)
class ChannelTimes:
    """Measured timescales of one inversion channel (``None`` when absent)."""

    channel: str
    amplitude0: float
    t_collapse: float
    revivals: tuple

    @property
    def t_revival(self):
        return self.revivals[0] if self.revivals else None


def extract_channel_times(times, signal, rabi_period=None, window_periods=5, threshold=0.1,
                          channel="w"):
    """Collapse time and revival peak times of one oscillating series.

    Collapse is the first time the envelope falls below ``threshold`` times
    its initial value. Revivals are the later envelope maxima whose height
    and prominence both exceed that same level, in time order.
    """
    times = np.asarray(times, dtype=float)
    y = np.asarray(signal, dtype=float)
    if rabi_period is None:
        rabi_period = dominant_period(times, y)
    if rabi_period is None:
        return ChannelTimes(channel, 0.0, None, ())
    window = window_periods * rabi_period
    env = rms_envelope(times, y, window)
    head = times <= times[0] + window / 2
    a0 = float(env[head].max())
    if a0 <= 1e-12:
        return ChannelTimes(channel, a0, None, ())
    level = threshold * a0
    below = np.flatnonzero(env < level)
    if len(below) == 0:
        return ChannelTimes(channel, a0, None, ())
    ic = int(below[0])
    peaks, _ = find_peaks(env[ic:], height=level, prominence=level)
    revivals = tuple(float(times[ic + k]) for k in peaks)
    return ChannelTimes(channel, a0, float(times[ic]), revivals)


def extract_revival_times_numeric(series, rabi_period=None, window_periods=5, threshold=0.1,
                                  predicted=None):
    """Per-channel collapse/revival times of an :class:`ObservableSeries`.

    ``predicted`` (optional) is the expected first revival; the series must
    then extend to at least 1.2 times it.
    """
    if predicted is not None and series.times[-1] < 1.2 * predicted:
        raise ValueError(f"series ends at {series.times[-1]:g}, shorter than 1.2 x {predicted:g}")
    return {ch: extract_channel_times(series.times, series.channel(ch), rabi_period,
                                      window_periods, threshold, ch)
            for ch in ("w12", "w23", "w13")}
