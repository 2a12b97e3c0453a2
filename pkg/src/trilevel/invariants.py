"""Exhaustive search for conserved quadratic forms of the Bloch flow.

A sum of squares over an index subset ``T`` is conserved for every initial
condition exactly when the antisymmetric generator has no entries linking
``T`` to its complement: the restricted block is then itself antisymmetric
and generates a rotation of the ``T`` components alone.
"""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bloch import SemiclassicalParams, bloch_matrix, evolve_bloch, subset_sum
from .configuration import Configuration


@dataclass(frozen=True, order=True)
class InvariantSubset:
    indices: tuple

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if not idx:
            raise ValueError("invariant subset must be non-empty")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError(f"indices must be strictly increasing, got {idx}")
        if idx[0] < 1 or idx[-1] > 8:
            raise ValueError(f"indices must lie in 1..8, got {idx}")
        object.__setattr__(self, "indices", idx)

    @property
    def size(self):
        return len(self.indices)

    def __str__(self):
        return "{" + ",".join(map(str, self.indices)) + "}"


def _coupling_pattern(m, atol):
    m = np.asarray(m, dtype=float)
    if m.shape != (8, 8):
        raise ValueError(f"Bloch matrix must be 8x8, got {m.shape}")
    if np.abs(m + m.T).max() > atol:
        raise ValueError("Bloch matrix is not antisymmetric")
    return np.abs(m) > atol


def _decoupled(pattern, members):
    inside = np.zeros(8, dtype=bool)
    inside[list(members)] = True
    return not pattern[np.ix_(inside, ~inside)].any()


def _search(pattern, sizes):
    closed = [frozenset(c) for k in range(1, 9) for c in combinations(range(8), k)
              if _decoupled(pattern, c)]
    # minimal: no proper non-empty decoupled subset
    minimal = [c for c in closed if not any(o < c for o in closed)]
    found = [InvariantSubset(tuple(sorted(i + 1 for i in c))) for c in minimal]
    if sizes is not None:
        wanted = set(sizes)
        found = [s for s in found if s.size in wanted]
    return sorted(found, key=lambda s: (s.size, s.indices))


def conserved_subsets(m, sizes=(3, 5), atol=0.0):
    """Minimal index subsets whose squared sum the generator ``m`` conserves.

    Every one of the 2^8 - 1 subsets is tested. An entry counts as a link when
    its magnitude exceeds ``atol`` (exact zero by default). ``sizes=None``
    reports all sizes 1..8.
    """
    return _search(_coupling_pattern(m, atol), sizes)


def structural_subsets(config, resonant=True, sizes=(3, 5), draws=2, rng=None):
    """Search on the symbolic zero pattern of a configuration's generator.

    The generator is evaluated at ``draws`` random coupling (and, off
    resonance, detuning) draws; an entry is a link if it is nonzero in any
    draw, so accidental numeric cancellation cannot hide a link.
    """
    rng = np.random.default_rng(rng)
    config = Configuration.parse(config)
    pattern = np.zeros((8, 8), dtype=bool)
    for _ in range(draws):
        k1, k2 = rng.uniform(0.1, 2.0, size=2) * rng.choice([-1, 1], size=2)
        d1, d2 = (0.0, 0.0) if resonant else tuple(rng.uniform(0.1, 2.0, size=2))
        pattern |= _coupling_pattern(bloch_matrix(SemiclassicalParams(config, k1, k2, d1, d2)), 0.0)
    return _search(pattern, sizes)


def random_pure_bloch(rng, count):
    """Bloch vectors of ``count`` Haar-random pure states, shape (count, 8)."""
    from .bloch import bloch_from_density, density_from_amplitudes

    out = np.empty((count, 8))
    for k in range(count):
        c = rng.normal(size=3) + 1j * rng.normal(size=3)
        c /= np.linalg.norm(c)
        out[k] = bloch_from_density(density_from_amplitudes(c))
    return out


def verify_invariant_numerically(m, subset, trials=10, samples=200, rng=0, t_max=None):
    """Largest drift of the subset's squared sum along evolved random pure states.

    Times span ``[0, 100 / rate]`` where ``rate`` is the largest generator
    entry (floored at 1e-3), unless ``t_max`` is given.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    m = np.asarray(m, dtype=float)
    indices = subset.indices if isinstance(subset, InvariantSubset) else tuple(subset)
    if t_max is None:
        t_max = 100.0 / max(np.abs(m).max(), 1e-3)
    times = np.linspace(0.0, t_max, samples)
    # i*M is Hermitian: one unitary eigendecomposition serves every trial and time
    w, v = np.linalg.eigh(1j * m)
    phases = np.exp(-1j * np.outer(times, w))
    generator = np.random.default_rng(rng)
    drift = 0.0
    for s0 in random_pure_bloch(generator, trials):
        traj = ((v * phases[:, None, :]) @ (v.conj().T @ s0)).real
        sums = subset_sum(traj, indices)
        drift = max(drift, float(np.abs(sums - sums[0]).max()))
    return drift


def verify_invariant_expm(m, subset, s0, times):
    """Drift of a subset sum along one trajectory computed with ``expm``."""
    traj = evolve_bloch(m, s0, np.asarray(times, dtype=float))
    sums = subset_sum(traj, subset.indices if isinstance(subset, InvariantSubset) else subset)
    return float(np.abs(sums - sums[0]).max())
