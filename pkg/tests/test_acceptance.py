"""Acceptance criteria, one or more parts each; results are summarized per criterion."""
import time
from math import log, pi, sqrt

import numpy as np
import pytest

from conftest import ACCEPTANCE_RESULTS
from trilevel.bloch import (TABULATED_SUBSETS, SemiclassicalParams, bloch_from_density, bloch_matrix,
                            density_from_amplitudes, printed_invariant_closed_forms, subset_sum)
from trilevel.cli import PRESETS, main
from trilevel.configuration import Configuration, Level
from trilevel.dressed import QuantizedParams, amplitudes_closed_form, amplitudes_spectral
from trilevel.invariants import conserved_subsets, random_pure_bloch
from trilevel.observables import simulate_observables
from trilevel.qutrit import QutritAngles, qutrit_bloch_norm, qutrit_density, qutrit_wavefunction
from trilevel.revival import collapse_revival_times, extract_revival_times_numeric, two_mode_revival_time
from trilevel.states import CoherentField, StateVector3
from trilevel.su3 import algebra_residuals

CASE_LEVEL = {"I": Level.LOWER, "II": Level.MIDDLE, "III": Level.UPPER}
FIGURES = {"fig2": ("I", "II", "III"), "fig3": ("I", "II", "III"), "fig4": ("I",), "fig5": ("II",),
           "fig6": ("III",)}


def record(criterion, part, passed, detail=""):
    ACCEPTANCE_RESULTS.setdefault(criterion, []).append((part, bool(passed), detail))
    print(f"criterion {criterion} [{part}]: {'PASS' if passed else 'FAIL'} {detail}")
    assert passed, f"criterion {criterion} [{part}]: {detail}"


def preset_run(name, case):
    pr = PRESETS[name]
    config = Configuration.parse(pr["config"])
    if config is Configuration.CASCADE:
        p = QuantizedParams(config, pr["g1"])
        fld = CoherentField(pr["alpha_n"])
    else:
        p = QuantizedParams(config, pr["g1"], pr["g2"])
        fld = CoherentField(pr["alpha_n"], pr["alpha_m"])
    times = np.linspace(0, pr["tmax"], pr["samples"] + 1)
    start = time.perf_counter()
    s = simulate_observables(p, StateVector3.basis(CASE_LEVEL[case]), fld, times)
    return s, p, fld, time.perf_counter() - start


@pytest.fixture(scope="module")
def runs():
    return {(name, case): preset_run(name, case) for name, cases in FIGURES.items() for case in cases}


# ---------------------------------------------------------------- 1

def test_criterion_1_algebra():
    start = time.perf_counter()
    comm, acomm = algebra_residuals()
    elapsed = time.perf_counter() - start
    worst = max(comm.max(), acomm.max())
    record(1, "identities", comm.size == 64 and acomm.size == 64 and worst <= 1e-12,
           f"64 pairs, max residual {worst:.2e}")
    record(1, "runtime", elapsed < 1.0, f"{elapsed:.3f} s")


# ---------------------------------------------------------------- 2

@pytest.mark.parametrize("config", list(Configuration))
def test_criterion_2_resonant_subsets(config):
    start = time.perf_counter()
    found = conserved_subsets(bloch_matrix(SemiclassicalParams(config, 1.0, 0.5)))
    elapsed = time.perf_counter() - start
    got = tuple(s.indices for s in found)
    want = TABULATED_SUBSETS[config]
    record(2, f"{config.value} resonant", got == want, f"found {got}, expected {want}")
    record(2, f"{config.value} runtime", elapsed < 1.0, f"{elapsed:.3f} s")


@pytest.mark.parametrize("config", list(Configuration))
def test_criterion_2_detuned_full_set(config):
    m = bloch_matrix(SemiclassicalParams(config, 1.0, 0.5, 0.3, 0.7))
    got = tuple(s.indices for s in conserved_subsets(m, sizes=None))
    record(2, f"{config.value} detuned", got == (tuple(range(1, 9)),), f"found {got}")


# ---------------------------------------------------------------- 3

@pytest.mark.parametrize("config", list(Configuration))
def test_criterion_3_conservation(config):
    m = bloch_matrix(SemiclassicalParams(config, 1.0, 0.5))
    subsets = [s.indices for s in conserved_subsets(m)]
    times = np.linspace(0, 200, 2001)
    w, v = np.linalg.eigh(1j * m)
    phases = np.exp(-1j * np.outer(times, w))
    drift, norm_err = 0.0, 0.0
    for s0 in random_pure_bloch(np.random.default_rng(3), 100):
        traj = ((v * phases[:, None, :]) @ (v.conj().T @ s0)).real
        for sub in subsets:
            sums = subset_sum(traj, sub)
            drift = max(drift, float(np.abs(sums - sums[0]).max()))
        norm_err = max(norm_err, float(np.abs(subset_sum(traj, range(1, 9)) - 4 / 3).max()))
    record(3, f"{config.value} subset drift", drift <= 1e-9, f"{subsets}: {drift:.2e}")
    record(3, f"{config.value} Bloch norm", norm_err <= 1e-9, f"{norm_err:.2e}")


# ---------------------------------------------------------------- 4

@pytest.mark.parametrize("config", list(Configuration))
def test_criterion_4_closed_forms(config):
    rng = np.random.default_rng(4)
    small, large = TABULATED_SUBSETS[config]
    worst = 0.0
    for _ in range(50):
        c = rng.normal(size=3)
        c /= np.linalg.norm(c)
        s = bloch_from_density(density_from_amplitudes(c))
        a, b = printed_invariant_closed_forms(config, c[2], c[1], c[0])
        worst = max(worst, abs(a - subset_sum(s, small)), abs(b - subset_sum(s, large)))
    record(4, f"{config.value}", worst <= 1e-10, f"max deviation {worst:.3g}")


# ---------------------------------------------------------------- 5

def test_criterion_5_qutrit():
    rng = np.random.default_rng(5)
    norm_err, purity = 0.0, 0.0
    for _ in range(1000):
        a = QutritAngles(*rng.uniform(0, pi, 3), rng.uniform(0, 2 * pi))
        norm_err = max(norm_err, abs(qutrit_bloch_norm(a) - 4 / 3))
        rho = qutrit_density(a)
        purity = max(purity, float(np.abs(rho @ rho - rho).max()))
    record(5, "Bloch norm", norm_err <= 1e-10, f"{norm_err:.2e}")
    record(5, "purity", purity <= 1e-12, f"{purity:.2e}")

    def overlap(angles, level):
        return abs(np.vdot(StateVector3.basis(level).as_array(), qutrit_wavefunction(angles).as_array()))

    checks = [((0, x, y, ph), "lower") for x, y, ph in rng.uniform(0, pi, (5, 3))]
    checks += [((pi, pi, pi, ph), "middle") for ph in (0.0, 1.1)]
    checks += [((pi, 0, y, ph), "upper") for y, ph in rng.uniform(0, pi, (5, 2))]
    worst = max(abs(overlap(QutritAngles(*a), lv) - 1) for a, lv in checks)
    record(5, "coordinate map", worst <= 1e-12, f"{worst:.2e}")


# ---------------------------------------------------------------- 6

def test_criterion_6_dressed_oracle():
    rng = np.random.default_rng(6)
    diff, unit = 0.0, 0.0
    for config in Configuration:
        for level in Level:
            for _ in range(20):
                g1, g2 = rng.uniform(0.05, 1.5, 2)
                t = rng.uniform(0, 100)
                if config is Configuration.CASCADE:
                    p, kw = QuantizedParams(config, g1), {"n": int(rng.integers(2, 100))}
                else:
                    p = QuantizedParams(config, g1, g2)
                    kw = {"m": int(rng.integers(1, 100)), "n": int(rng.integers(1, 100))}
                a = amplitudes_closed_form(p, level, t=t, **kw)
                b = amplitudes_spectral(p, level, t=t, **kw)
                diff = max(diff, float(np.abs(a.amplitudes - b.amplitudes).max()))
                unit = max(unit, abs(a.norm - 1), abs(b.norm - 1))
    record(6, "spectral vs closed form", diff <= 1e-10, f"{diff:.2e}")
    record(6, "unitarity", unit <= 1e-10, f"{unit:.2e}")


# ---------------------------------------------------------------- 7

@pytest.mark.parametrize("name,case", [(n, c) for n, cs in FIGURES.items() for c in cs])
def test_criterion_7_dynamics(runs, name, case):
    s, _, _, _ = runs[(name, case)]
    tag = f"{name} case {case}"
    record(7, f"{tag} entropy(0)", s.entropy[0] <= 1e-10, f"{s.entropy[0]:.2e}")
    lo, hi = s.entropy.min(), s.entropy.max()
    record(7, f"{tag} entropy range", lo >= 0 and hi <= log(3), f"[{lo:.3g}, {hi:.6g}]")
    wmax = max(np.abs(s.channel(ch)).max() for ch in ("w12", "w23", "w13"))
    record(7, f"{tag} |w|", wmax <= 1, f"{wmax:.6g}")
    record(7, f"{tag} norm deficit", s.norm_deficit <= 1e-6, f"{s.norm_deficit:.2e}")


def test_criterion_7_fig4_runtime():
    _, _, _, elapsed = preset_run("fig4", "I")
    record(7, "fig4 runtime", elapsed < 60, f"{elapsed:.2f} s")


# ---------------------------------------------------------------- 8

def measured(runs, name, case):
    s, _, fld, _ = runs[(name, case)]
    return extract_revival_times_numeric(s), fld.nbar_n


def test_criterion_8_case_I_w13(runs):
    m, nbar = measured(runs, "fig4", "I")
    pred = collapse_revival_times("lower", nbar, 0.1).t_revival_1
    got = m["w13"].t_revival
    ok = got is not None and abs(got - pred) <= 0.1 * pred
    record(8, "case I w13 revival", ok, f"measured {got}, predicted {pred:.1f}")


def test_criterion_8_w12_two_peaks(runs):
    m, _ = measured(runs, "fig4", "I")
    peaks = m["w12"].revivals
    ratio = peaks[1] / peaks[0] if len(peaks) >= 2 else None
    ok = ratio is not None and abs(ratio - 2) <= 0.2
    record(8, "case I w12 peak ratio", ok, f"peaks {[round(p, 1) for p in peaks[:2]]}, ratio {ratio}")


def test_criterion_8_case_II_single_revival(runs):
    m, nbar = measured(runs, "fig5", "II")
    pred = collapse_revival_times("middle", nbar, 0.1).t_revival_1
    firsts = {ch: ct.t_revival for ch, ct in m.items() if ct.t_revival is not None}
    first = min(firsts.values()) if firsts else None
    ok = first is not None and abs(first - pred) <= 0.1 * pred
    record(8, "case II first revival", ok,
           f"first measured {first} ({', '.join(f'{k}={v:.1f}' for k, v in firsts.items())}), predicted {pred:.1f}")


def test_criterion_8_inversion_symmetry(runs):
    m1, _ = measured(runs, "fig4", "I")
    m3, _ = measured(runs, "fig6", "III")
    a, b = m1["w13"].t_revival, m3["w13"].t_revival
    ok = a is not None and b is not None and abs(a - b) <= 0.05 * a
    record(8, "case I vs III", ok, f"{a} vs {b}")


# ---------------------------------------------------------------- 9

@pytest.mark.parametrize("name,case", [(n, c) for n in ("fig2", "fig3") for c in ("I", "II", "III")])
def test_criterion_9_collapse_plateau(runs, name, case):
    s, p, fld, _ = runs[(name, case)]
    tr = two_mode_revival_time(p, CASE_LEVEL[case], fld.nbar_m, fld.nbar_n)
    window = (s.times >= 0.3 * tr) & (s.times <= 0.7 * tr)
    smin = float(s.entropy[window].min())
    offset = max(abs(float(s.channel(ch)[window].mean())) for ch in ("w12", "w23", "w13"))
    tag = f"{name} case {case}"
    record(9, f"{tag} entropy", smin > 0.1, f"min {smin:.3f} on [{0.3 * tr:.0f}, {0.7 * tr:.0f}]")
    record(9, f"{tag} offset", offset > 0.05, f"max |mean w| {offset:.3f}")


# ---------------------------------------------------------------- 10

@pytest.mark.parametrize("name", sorted(PRESETS))
def test_criterion_10_presets(tmp_path, name):
    out = tmp_path / f"{name}.csv"
    status = main(["quantized", "--preset", name, "--out", str(out)])
    cases = FIGURES[name]
    paths = [out] if len(cases) == 1 else [tmp_path / f"{name}_case{c}.csv" for c in cases]
    samples = PRESETS[name]["samples"] + 1
    ok = status == 0
    for path in paths:
        data = np.genfromtxt(path, delimiter=",", names=True)
        ok = ok and data.dtype.names == ("t", "entropy", "w12", "w23", "w13") and len(data) == samples
        ok = ok and data["t"][-1] == PRESETS[name]["tmax"]
    record(10, name, ok, f"{len(paths)} series, {samples} rows each")
