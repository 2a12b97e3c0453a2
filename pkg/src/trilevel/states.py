"""State containers: atomic amplitudes, coherent fields, atom-field states."""
from dataclasses import dataclass, field
from math import ceil, lgamma, sqrt

import numpy as np

from .configuration import Configuration, Level


@dataclass(frozen=True)
class StateVector3:
    c_minus: complex
    c_zero: complex
    c_plus: complex

    def __post_init__(self):
        for name in ("c_minus", "c_zero", "c_plus"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    @classmethod
    def basis(cls, level):
        level = Level.parse(level)
        amps = {Level.LOWER: (1, 0, 0), Level.MIDDLE: (0, 1, 0), Level.UPPER: (0, 0, 1)}
        return cls(*amps[level])

    @classmethod
    def from_array(cls, c):
        """Build from an array in basis order (+, 0, -)."""
        cp, c0, cm = np.asarray(c, dtype=np.complex128)
        return cls(cm, c0, cp)

    def as_array(self):
        """Amplitudes in basis order (+, 0, -)."""
        return np.array([self.c_plus, self.c_zero, self.c_minus], dtype=np.complex128)

    @property
    def norm(self):
        return float(np.linalg.norm(self.as_array()))

    def normalized(self):
        n = self.norm
        if n == 0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector3.from_array(self.as_array() / n)


def coherent_amplitudes(alpha, cutoff):
    """Fock amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` for ``n = 0..cutoff``."""
    alpha = complex(alpha)
    n = np.arange(cutoff + 1)
    r = abs(alpha)
    if r == 0:
        out = np.zeros(cutoff + 1, dtype=np.complex128)
        out[0] = 1.0
        return out
    log_mag = -r * r / 2 + n * np.log(r) - 0.5 * np.array([lgamma(k + 1) for k in n])
    return np.exp(log_mag) * np.exp(1j * np.angle(alpha) * n)


def default_cutoff(nbar):
    """Photon cutoff ``ceil(nbar + 10 sqrt(nbar))``, at least 16 so small fields keep a 1e-10 tail."""
    return max(16, int(ceil(nbar + 10 * sqrt(nbar))))


@dataclass(frozen=True)
class CoherentField:
    """Coherent cavity field: two modes (m, n), or one mode for cascade.

    ``alpha_m`` is ``None`` for the single-mode cascade field. Cutoffs
    default to ``default_cutoff`` of each mean photon number.
    """

    alpha_n: complex
    alpha_m: complex = None
    cutoff_n: int = None
    cutoff_m: int = None

    def __post_init__(self):
        object.__setattr__(self, "alpha_n", complex(self.alpha_n))
        if self.cutoff_n is None:
            object.__setattr__(self, "cutoff_n", default_cutoff(abs(self.alpha_n) ** 2))
        if self.alpha_m is not None:
            object.__setattr__(self, "alpha_m", complex(self.alpha_m))
            if self.cutoff_m is None:
                object.__setattr__(self, "cutoff_m", default_cutoff(abs(self.alpha_m) ** 2))
        for name in ("cutoff_n", "cutoff_m"):
            value = getattr(self, name)
            if value is not None and int(value) < 1:
                raise ValueError(f"{name} must be >= 1")

    @property
    def single_mode(self):
        return self.alpha_m is None

    @property
    def nbar_n(self):
        return abs(self.alpha_n) ** 2

    @property
    def nbar_m(self):
        return None if self.alpha_m is None else abs(self.alpha_m) ** 2

    def amplitudes_n(self, extra=0):
        return coherent_amplitudes(self.alpha_n, self.cutoff_n + extra)

    def amplitudes_m(self, extra=0):
        if self.alpha_m is None:
            raise ValueError("single-mode field has no m mode")
        return coherent_amplitudes(self.alpha_m, self.cutoff_m + extra)

    def truncated_norm(self):
        """Squared norm of the truncated product distribution (<= 1)."""
        total = np.sum(np.abs(self.amplitudes_n()) ** 2)
        if self.alpha_m is not None:
            total *= np.sum(np.abs(self.amplitudes_m()) ** 2)
        return float(total)


@dataclass(frozen=True)
class EntangledState:
    """Atom-field amplitudes at one time.

    ``c[i, m, n]`` (two modes) or ``c[i, n]`` (cascade), with the atomic
    index ``i`` in basis order (+, 0, -).
    """

    config: Configuration
    c: np.ndarray
    time: float
    norm_deficit: float = 0.0
    warnings: tuple = field(default_factory=tuple)

    @property
    def norm(self):
        return float(np.sum(np.abs(self.c) ** 2))

    def component(self, level):
        return self.c[Level.parse(level).index]
