from math import pi, sqrt

import numpy as np
import pytest
from scipy.linalg import expm

from conftest import oracle_state
from trilevel.configuration import Configuration, Level
from trilevel.dressed import (QuantizedParams, amplitudes_closed_form, amplitudes_spectral, block_is_physical,
                              block_shifts, closed_form_coefficients, entangled_amplitudes,
                              entangled_coefficients, euler_matrix, euler_solution, number_state_hamiltonian,
                              rabi_frequency, tabulated_euler_angles)
from trilevel.states import CoherentField, StateVector3

BLOCKS = [(c, lv) for c in Configuration for lv in Level]


def draw(rng, config):
    g1, g2 = rng.uniform(0.05, 1.5, 2)
    if config is Configuration.CASCADE:
        return QuantizedParams(config, g1), {"n": int(rng.integers(2, 80))}
    return QuantizedParams(config, g1, g2), {"m": int(rng.integers(1, 80)), "n": int(rng.integers(1, 80))}


def test_hamiltonian_examples():
    h = number_state_hamiltonian(QuantizedParams("lambda", 0.3, 0.7), "lower", 4, 2)
    assert h[0, 1] == pytest.approx(0.7 * sqrt(3)) and h[0, 2] == pytest.approx(0.3 * 2)
    assert np.allclose(h, h.T) and h[1, 2] == 0
    h = number_state_hamiltonian(QuantizedParams("cascade", 0.5), "middle", n=6)
    assert h[0, 1] == pytest.approx(0.5 * sqrt(6)) and h[1, 2] == pytest.approx(0.5 * sqrt(7))
    assert not number_state_hamiltonian(QuantizedParams("vee", 0, 0), "upper", 3, 3).any()
    # vee hub is |->: couplings sit in the last row and column
    h = number_state_hamiltonian(QuantizedParams("vee", 0.2, 0.4), "lower", 5, 3)
    assert h[0, 2] == pytest.approx(0.2 * sqrt(5)) and h[1, 2] == pytest.approx(0.4 * sqrt(3))


def test_rabi_examples():
    assert rabi_frequency(QuantizedParams("lambda", 1, 1), "lower", 1, 0) == pytest.approx(sqrt(2))
    assert rabi_frequency(QuantizedParams("cascade", 1), "lower", n=1) == pytest.approx(1)
    assert rabi_frequency(QuantizedParams("cascade", 0.1), "upper", n=35) == pytest.approx(0.1 * sqrt(73))
    assert np.allclose(rabi_frequency(QuantizedParams("cascade", 1), "middle", n=np.arange(3)),
                       np.sqrt(2 * np.arange(3) + 1))


@pytest.mark.parametrize("config,level", BLOCKS)
def test_rabi_is_largest_eigenvalue(config, level, rng):
    for _ in range(5):
        p, kw = draw(rng, config)
        w = np.linalg.eigvalsh(number_state_hamiltonian(p, level, **kw))
        om = rabi_frequency(p, level, **kw)
        assert np.allclose(w, [-om, 0, om], atol=1e-12)


def test_cascade_inversion_symmetry_identity():
    p = QuantizedParams("cascade", 0.37)
    for n in range(0, 40):
        assert rabi_frequency(p, "lower", n=n + 2) == pytest.approx(rabi_frequency(p, "upper", n=n), abs=1e-14)


def test_photon_argument_checks():
    p = QuantizedParams("lambda", 1, 1)
    with pytest.raises(ValueError):
        number_state_hamiltonian(p, "lower", -1, 2)
    with pytest.raises(ValueError):
        number_state_hamiltonian(p, "lower", 2)
    with pytest.raises(TypeError):
        number_state_hamiltonian(p, "lower", 2.5, 1)
    q = QuantizedParams("cascade", 1)
    assert np.allclose(number_state_hamiltonian(q, "lower", 4, 4), number_state_hamiltonian(q, "lower", n=4))
    with pytest.raises(ValueError):
        number_state_hamiltonian(q, "lower", 3, 4)
    with pytest.raises(ValueError):
        QuantizedParams("cascade", 1, 2)
    with pytest.raises(AttributeError):
        QuantizedParams("vee", 1, 2).g


@pytest.mark.parametrize("config,level,kw", [
    ("lambda", "lower", dict(m=0, n=3)), ("lambda", "middle", dict(m=3, n=0)),
    ("cascade", "lower", dict(n=0)), ("vee", "lower", dict(m=0, n=0)),
])
def test_uncoupled_initial_states_are_domain_errors(config, level, kw):
    p = QuantizedParams(config, 1.0, 1.0)
    assert not block_is_physical(config, level, kw.get("m", kw["n"]), kw["n"])
    with pytest.raises(ValueError):
        number_state_hamiltonian(p, level, **kw)


def test_partially_coupled_edge_blocks_are_allowed():
    q = QuantizedParams("cascade", 0.4)
    d = amplitudes_spectral(q, "lower", n=1, t=2.0).amplitudes
    assert d[0] == pytest.approx(0)  # |+> would need n - 2 < 0
    v = QuantizedParams("vee", 0.3, 0.5)
    a = amplitudes_closed_form(v, "lower", 0, 4, 1.3)
    b = amplitudes_spectral(v, "lower", 0, 4, 1.3)
    assert np.allclose(a.amplitudes, b.amplitudes, atol=1e-12)


def test_euler_examples():
    for level in Level:
        angles = euler_solution(QuantizedParams("vee", 0.3, 0.8), level, 4, 6).euler_angles
        assert angles[0] == pytest.approx(-pi / 4) and angles[2] == pytest.approx(-pi / 2)
    sol = euler_solution(QuantizedParams("cascade", 1.0), "lower", n=1)
    assert sol.euler_angles[0] == pytest.approx(-pi / 4)
    t = euler_solution(QuantizedParams("lambda", 0.3, 0.6), "lower", 5, 2).transform
    assert t[1, 0] == pytest.approx(0, abs=1e-15) and t[0, 0] == pytest.approx(1 / sqrt(2))


@pytest.mark.parametrize("config,level", BLOCKS)
def test_transform_orthogonal_and_diagonalizing(config, level, rng):
    for _ in range(10):
        p, kw = draw(rng, config)
        sol = euler_solution(p, level, **kw)
        t = sol.transform
        h = number_state_hamiltonian(p, level, **kw).real
        assert np.abs(t @ t.T - np.eye(3)).max() < 1e-12
        assert np.abs(t @ h @ t.T - np.diag(sol.eigenvalues)).max() < 1e-10
        assert sol.eigenvalues[0] == pytest.approx(sol.omega)
        assert np.allclose(t, euler_matrix(*sol.euler_angles))


@pytest.mark.parametrize("config,level", [(Configuration.LAMBDA, lv) for lv in Level])
def test_lambda_transform_reproduces_tabulated_alphas(config, level, rng):
    p, kw = draw(rng, config)
    t = euler_solution(p, level, **kw).transform
    h = number_state_hamiltonian(p, level, **kw).real
    om = rabi_frequency(p, level, **kw)
    b, a = h[0, 1], h[0, 2]
    expected = np.array([[1 / sqrt(2), b / (om * sqrt(2)), a / (om * sqrt(2))],
                         [0, a / om, -b / om],
                         [-1 / sqrt(2), b / (om * sqrt(2)), a / (om * sqrt(2))]])
    assert np.allclose(t, expected, atol=1e-12)


def test_uncorrected_cascade_lower_angle_fails():
    p = QuantizedParams("cascade", 0.5)
    h = number_state_hamiltonian(p, "lower", n=3).real
    t = euler_matrix(*tabulated_euler_angles(p, "lower", n=3, corrected=False))
    assert np.abs(t @ h @ t.T - np.diag(np.diag(t @ h @ t.T))).max() > 1e-2


def test_degenerate_block_identity():
    sol = euler_solution(QuantizedParams("lambda", 0.0, 0.0), "upper", 2, 3)
    assert np.array_equal(sol.transform, np.eye(3)) and not sol.eigenvalues.any()
    d = amplitudes_closed_form(QuantizedParams("lambda", 0.0, 0.0), "lower", 2, 3, 5.0)
    assert np.allclose(d.amplitudes, [0, 0, 1])


@pytest.mark.parametrize("config,level", BLOCKS)
def test_closed_form_spectral_and_expm_agree(config, level, rng):
    for _ in range(20):
        p, kw = draw(rng, config)
        t = rng.uniform(0, 60)
        a = amplitudes_closed_form(p, level, t=t, **kw)
        b = amplitudes_spectral(p, level, t=t, **kw)
        start = np.zeros(3)
        start[Level.parse(level).index] = 1
        c = expm(-1j * number_state_hamiltonian(p, level, **kw) * t) @ start
        assert np.abs(a.amplitudes - b.amplitudes).max() < 1e-10
        assert np.abs(a.amplitudes - c).max() < 1e-10
        assert a.norm == pytest.approx(1, abs=1e-10)


@pytest.mark.parametrize("config,level", BLOCKS)
def test_initial_amplitude_is_unit(config, level, rng):
    p, kw = draw(rng, config)
    d = amplitudes_closed_form(p, level, t=0.0, **kw).amplitudes
    e = np.zeros(3)
    e[Level.parse(level).index] = 1
    assert np.allclose(d, e, atol=1e-15)


def test_amplitude_examples():
    p = QuantizedParams("lambda", 0.4, 0.3)
    d = amplitudes_closed_form(p, "upper", 3, 5, 1.7)
    om = rabi_frequency(p, "upper", 3, 5)
    assert d.amplitudes[0] == pytest.approx(np.cos(om * 1.7))
    assert d.photons == ((3, 5), (3, 6), (4, 5))
    n = 7
    q = QuantizedParams("cascade", 0.2)
    t = (pi / 2) / rabi_frequency(q, "middle", n=n)
    d = amplitudes_closed_form(q, "middle", n=n, t=t).amplitudes
    assert abs(d[1]) < 1e-15
    assert abs(d[2]) ** 2 == pytest.approx((n + 1) / (2 * n + 1))
    assert abs(d[0]) ** 2 == pytest.approx(n / (2 * n + 1))


def test_spectral_examples():
    p = QuantizedParams("lambda", 1, 1)
    assert np.abs(amplitudes_spectral(p, "lower", 4, 2, 0.7).amplitudes
                  - amplitudes_closed_form(p, "lower", 4, 2, 0.7).amplitudes).max() < 1e-10
    q = QuantizedParams("cascade", 0.1)
    assert np.abs(amplitudes_spectral(q, "upper", n=35, t=3.0).amplitudes
                  - amplitudes_closed_form(q, "upper", n=35, t=3.0).amplitudes).max() < 1e-10


def test_amplitude_time_arrays():
    p = QuantizedParams("vee", 0.4, 0.3)
    t = np.linspace(0, 5, 11)
    a = amplitudes_closed_form(p, "middle", 3, 2, t)
    assert a.amplitudes.shape == (3, 11)
    assert np.allclose(a.norm, 1)
    with pytest.raises(ValueError):
        amplitudes_closed_form(p, "middle", 3, 2, -1.0)


def test_coefficients_vectorized_match_scalar():
    p = QuantizedParams("lambda", 0.4, 0.3)
    m, n = np.meshgrid(np.arange(1, 5), np.arange(0, 4), indexing="ij")
    A, B, D, om = closed_form_coefficients(p, "lower", m, n)
    for i in range(4):
        for j in range(4):
            a, b, d, o = closed_form_coefficients(p, "lower", int(m[i, j]), int(n[i, j]))
            assert np.allclose(A[:, i, j], a) and o == pytest.approx(om[i, j])
    A, _, _, om = closed_form_coefficients(p, "lower", np.array([0, 1]), np.array([2, 2]))
    assert np.isnan(om[0]) and not np.isnan(om[1])


def test_block_shift_tables():
    assert block_shifts("lambda", "lower") == ((-1, 0), (-1, 1), (0, 0))
    assert block_shifts("cascade", "upper") == ((0, 0), (0, 1), (0, 2))


# ------------------------------------------------------------------ recombination

@pytest.mark.parametrize("config", list(Configuration))
def test_entangled_matches_brute_force(config, rng):
    cascade = config is Configuration.CASCADE
    p = QuantizedParams(config, 0.35, 0.35 if cascade else 0.6)
    fld = CoherentField(1.3 + 0.2j, None if cascade else 0.9, cutoff_n=8, cutoff_m=None if cascade else 7)
    atom = rng.normal(size=3) + 1j * rng.normal(size=3)
    atom /= np.linalg.norm(atom)
    st = StateVector3.from_array(atom)
    cm = None if cascade else fld.amplitudes_m()
    extra = 2 if cascade else 1
    for t in (0.0, 0.8, 4.1, 13.0):
        got = entangled_amplitudes(p, st, fld, t).c
        want = oracle_state(config, p.g1, p.g2, atom, cm, fld.amplitudes_n(), extra, t)
        assert np.abs(got - want).max() < 1e-11


def test_entangled_factorized_start():
    p = QuantizedParams("lambda", 0.2, 0.1)
    fld = CoherentField(np.sqrt(20), np.sqrt(30))
    s = entangled_amplitudes(p, StateVector3.basis("lower"), fld, 0.0)
    cm, cn = fld.amplitudes_m(), fld.amplitudes_n()
    assert np.allclose(s.c[2, :len(cm), :len(cn)], np.outer(cm, cn))
    assert not s.c[:2].any()
    assert s.warnings == ()


def test_entangled_norm_conserved():
    p = QuantizedParams("cascade", 0.1)
    fld = CoherentField(np.sqrt(35))
    n0 = entangled_amplitudes(p, StateVector3.basis("middle"), fld, 0.0).norm
    for t in (10.0, 300.0, 1100.0):
        assert abs(entangled_amplitudes(p, StateVector3.basis("middle"), fld, t).norm - n0) < 1e-8


def test_cascade_middle_contains_cosine_term():
    p = QuantizedParams("cascade", 0.1)
    fld = CoherentField(np.sqrt(35))
    t = 17.0
    c = entangled_amplitudes(p, StateVector3.basis("middle"), fld, t).c
    cn = fld.amplitudes_n()
    n = np.arange(len(cn))
    assert np.allclose(c[1, :len(cn)], cn * np.cos(rabi_frequency(p, "middle", n=n) * t))


def test_truncation_warning_and_errors():
    p = QuantizedParams("cascade", 0.1)
    coeffs = entangled_coefficients(p, StateVector3.basis("lower"), CoherentField(np.sqrt(35), cutoff_n=25))
    assert coeffs.norm_deficit > 1e-6 and coeffs.warnings
    with pytest.raises(ValueError):
        entangled_coefficients(p, StateVector3(1, 1, 0), CoherentField(2.0))
    with pytest.raises(ValueError):
        entangled_coefficients(p, StateVector3.basis("lower"), CoherentField(2.0, 2.0))
    with pytest.raises(ValueError):
        entangled_coefficients(QuantizedParams("vee", 1, 1), StateVector3.basis("lower"), CoherentField(2.0))
