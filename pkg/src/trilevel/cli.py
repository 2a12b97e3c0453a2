"""Command-line runner: ``trilevel <mode> [options]``.

Modes are ``bloch``, ``invariants``, ``qutrit``, ``quantized`` and
``revival``. Parameters come from a preset, then a flat ``key = value``
config file, then flags, each overriding the previous. Output is CSV
(UTF-8, comma separated, 12 significant digits, LF line endings).

Exit status: 0 success, 1 configuration error, 2 I/O error.
"""
import argparse
import ast
import io
import sys
from dataclasses import dataclass, field
from math import sqrt

import numpy as np

from .bloch import SemiclassicalParams, bloch_from_density, bloch_matrix, density_from_amplitudes, evolve_bloch, subset_sum
from .configuration import Configuration, Level
from .dressed import QuantizedParams
from .invariants import conserved_subsets, structural_subsets
from .observables import simulate_observables
from .qutrit import QutritAngles, qutrit_bloch_norm, qutrit_density, qutrit_wavefunction
from .revival import collapse_revival_times, extract_revival_times_numeric, two_mode_revival_time
from .states import CoherentField, StateVector3

MODES = ("bloch", "invariants", "qutrit", "quantized", "revival")
CASES = ("I", "II", "III")
FLOAT_FMT = "%.12g"

PRESETS = {
    "fig2": dict(config="lambda", g1=0.2, g2=0.1, alpha_m=sqrt(30), alpha_n=sqrt(20), tmax=400.0, samples=4000),
    "fig3": dict(config="vee", g1=0.2, g2=0.1, alpha_m=sqrt(30), alpha_n=sqrt(20), tmax=400.0, samples=4000),
    "fig4": dict(config="cascade", g1=0.1, alpha_n=sqrt(35), case="I", tmax=1200.0, samples=12000),
    "fig5": dict(config="cascade", g1=0.1, alpha_n=sqrt(35), case="II", tmax=1200.0, samples=12000),
    "fig6": dict(config="cascade", g1=0.1, alpha_n=sqrt(35), case="III", tmax=1200.0, samples=12000),
}

_FLOAT_KEYS = {"g1", "g2", "kappa1", "kappa2", "delta1", "delta2", "tmax",
               "theta0", "theta1", "theta2", "phi"}
_INT_KEYS = {"samples", "cutoff"}
_COMPLEX_KEYS = {"alpha_m", "alpha_n"}
_STR_KEYS = {"config", "case", "atom0", "base", "preset", "out"}
KNOWN_KEYS = _FLOAT_KEYS | _INT_KEYS | _COMPLEX_KEYS | _STR_KEYS

DEFAULTS = dict(config="lambda", kappa1=1.0, kappa2=0.5, delta1=0.0, delta2=0.0, tmax=None,
                samples=None, base="e", theta0=0.0, theta1=0.0, theta2=0.0, phi=0.0)


class ConfigError(ValueError):
    """Invalid scenario configuration."""


@dataclass
class ScenarioConfig:
    mode: str
    values: dict = field(default_factory=dict)

    def get(self, key, default=None):
        return self.values.get(key, default)

    @property
    def configuration(self):
        return Configuration.parse(self.values["config"])


def _coerce(key, raw):
    if key not in KNOWN_KEYS:
        raise ConfigError(f"unknown key {key!r}")
    raw = raw.strip() if isinstance(raw, str) else raw
    try:
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key in _COMPLEX_KEYS:
            if isinstance(raw, str) and raw.startswith("sqrt(") and raw.endswith(")"):
                return complex(sqrt(float(raw[5:-1])))
            return complex(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc
    return raw


def read_config_file(path):
    """Parse a flat ``key = value`` file (``#`` starts a comment)."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = (s.strip() for s in line.split("=", 1))
            out[key] = _coerce(key, value)
    return out


def build_config(args):
    values = dict(DEFAULTS)
    file_values = read_config_file(args.config) if args.config else {}
    preset = args.preset or file_values.get("preset")
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
        values.update(PRESETS[preset])
        values["preset"] = preset
    values.update(file_values)
    for key in ("out", "case", "tmax", "samples", "cutoff", "base"):
        flag = getattr(args, key, None)
        if flag is not None:
            values[key] = _coerce(key, str(flag))
    if values.get("case") is not None and str(values["case"]).upper() not in CASES:
        raise ConfigError(f"case must be one of {', '.join(CASES)}")
    if str(values.get("base")) not in ("e", "2"):
        raise ConfigError("base must be 'e' or '2'")
    try:
        Configuration.parse(values["config"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return ScenarioConfig(args.mode, values)


# ------------------------------------------------------------------- writing

def _fmt(x):
    return FLOAT_FMT % x


def write_csv(path, header, rows):
    """Write rows (sequences of str/float) to ``path``; ``None`` means stdout."""
    buf = io.StringIO(newline="")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(v if isinstance(v, str) else _fmt(v) for v in row) + "\n")
    text = buf.getvalue()
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def emit_plot_data(series, path):
    """Write ``t, entropy, w12, w23, w13`` as CSV. Empty series are rejected."""
    if series is None or len(series.times) == 0:
        raise ValueError("cannot emit an empty series")
    cols = np.column_stack([series.times, series.entropy, series.w12, series.w23, series.w13])
    write_csv(path, ("t", "entropy", "w12", "w23", "w13"), cols.tolist())


def write_meta(path, lines):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


# --------------------------------------------------------------------- modes

def _grid(cfg, tmax, samples):
    tmax = cfg.get("tmax") or tmax
    samples = cfg.get("samples") or samples
    if tmax <= 0 or samples < 1:
        raise ConfigError("tmax must be positive and samples >= 1")
    return np.linspace(0.0, tmax, samples + 1)


def _atom(cfg, case=None):
    if cfg.get("atom0") is not None and case is None:
        try:
            amps = ast.literal_eval(cfg.get("atom0"))
            state = StateVector3.from_array([complex(a) for a in amps])
        except (ValueError, SyntaxError, TypeError) as exc:
            raise ConfigError("atom0 must list three amplitudes in order (+, 0, -)") from exc
        if abs(state.norm - 1) > 1e-10:
            raise ConfigError("atom0 amplitudes must be normalized")
        return state
    case = case or cfg.get("case") or "I"
    return StateVector3.basis(Level.parse(case))


def _cases(cfg):
    if cfg.get("atom0") is not None:
        return [None]
    if cfg.get("case") is not None:
        return [str(cfg.get("case")).upper()]
    return list(CASES)


def run_bloch(cfg):
    p = SemiclassicalParams(cfg.configuration, cfg.get("kappa1"), cfg.get("kappa2"),
                            cfg.get("delta1"), cfg.get("delta2"))
    m = bloch_matrix(p)
    s0 = bloch_from_density(density_from_amplitudes(_atom(cfg, cfg.get("case")).as_array()))
    times = _grid(cfg, 20.0, 400)
    traj = evolve_bloch(m, s0, times)
    subsets = conserved_subsets(m, sizes=None)
    header = ["t"] + [f"s{i}" for i in range(1, 9)] + \
        ["sum_" + "_".join(map(str, s.indices)) for s in subsets] + ["norm2"]
    rows = [[t, *s, *(float(subset_sum(s, sub.indices)) for sub in subsets), float(s @ s)]
            for t, s in zip(times, traj)]
    write_csv(cfg.get("out"), header, rows)
    return []


def run_invariants(cfg):
    rows = []
    for config in Configuration:
        for regime in ("resonant", "detuned"):
            resonant = regime == "resonant"
            d1, d2 = (0.0, 0.0) if resonant else (0.3, 0.7)
            m = bloch_matrix(SemiclassicalParams(config, 1.0, 0.5, d1, d2))
            found = conserved_subsets(m, sizes=None)
            check = structural_subsets(config, resonant=resonant, sizes=None, rng=0)
            if found != check:
                raise ArithmeticError(f"{config.value}: sampled and structural searches disagree")
            for sub in found:
                rows.append([config.value, regime, "{" + " ".join(map(str, sub.indices)) + "}", str(sub.size)])
    write_csv(cfg.get("out"), ("configuration", "regime", "subset", "size"), rows)
    return []


def run_qutrit(cfg):
    a = QutritAngles(cfg.get("theta0"), cfg.get("theta1"), cfg.get("theta2"), cfg.get("phi"))
    psi = qutrit_wavefunction(a).as_array()
    rho = qutrit_density(a)
    s = bloch_from_density(rho)
    header = ["theta0", "theta1", "theta2", "phi", "re_c_plus", "im_c_plus", "re_c_zero", "im_c_zero",
              "re_c_minus", "im_c_minus"] + [f"s{i}" for i in range(1, 9)] + ["bloch_norm2", "purity_error"]
    row = [a.theta0, a.theta1, a.theta2, a.phi]
    for c in psi:
        row += [c.real, c.imag]
    row += list(s) + [qutrit_bloch_norm(a), float(np.abs(rho @ rho - rho).max())]
    write_csv(cfg.get("out"), header, [row])
    return []


def _quantized_setup(cfg):
    config = cfg.configuration
    g1 = cfg.get("g1")
    if g1 is None:
        raise ConfigError("quantized runs need g1 (and g2 for lambda/vee)")
    cutoff = cfg.get("cutoff")
    if config is Configuration.CASCADE:
        p = QuantizedParams(config, g1, cfg.get("g2", g1))
        if cfg.get("alpha_n") is None:
            raise ConfigError("cascade needs alpha_n")
        fld = CoherentField(cfg.get("alpha_n"), cutoff_n=cutoff)
    else:
        if cfg.get("g2") is None or cfg.get("alpha_m") is None or cfg.get("alpha_n") is None:
            raise ConfigError("lambda/vee need g1, g2, alpha_m and alpha_n")
        p = QuantizedParams(config, g1, cfg.get("g2"))
        fld = CoherentField(cfg.get("alpha_n"), cfg.get("alpha_m"), cutoff_n=cutoff, cutoff_m=cutoff)
    return p, fld


def _case_paths(out, cases):
    if len(cases) == 1:
        return {cases[0]: out}
    if out is None:
        raise ConfigError("several cases requested: give --out or a single --case")
    stem, dot, ext = out.rpartition(".")
    if not dot:
        stem, ext = out, "csv"
    return {c: f"{stem}_case{c}.{ext}" for c in cases}


def _simulate(cfg, case):
    p, fld = _quantized_setup(cfg)
    default_t = 1200.0 if p.config is Configuration.CASCADE else 400.0
    default_n = 12000 if p.config is Configuration.CASCADE else 4000
    times = _grid(cfg, default_t, default_n)
    return simulate_observables(p, _atom(cfg, case), fld, times, base=cfg.get("base")), p, fld


def run_quantized(cfg):
    cases = _cases(cfg)
    warnings = []
    for case, path in _case_paths(cfg.get("out"), cases).items():
        series, _, _ = _simulate(cfg, case)
        emit_plot_data(series, path)
        if series.warnings:
            warnings.append((path, series))
    return warnings


def run_revival(cfg):
    rows = []
    warnings = []
    for case in _cases(cfg):
        series, p, fld = _simulate(cfg, case)
        label = case or "custom"
        if series.warnings:
            warnings.append((cfg.get("out"), series))
        level = Level.parse(case or "I")
        measured = extract_revival_times_numeric(series)
        if p.config is Configuration.CASCADE:
            est = collapse_revival_times(level, fld.nbar_n, p.g1)
            predicted = [("t_revival_1", est.t_revival_1), ("t_revival_2", est.t_revival_2)]
        else:
            predicted = [("t_revival_1", two_mode_revival_time(p, level, fld.nbar_m, fld.nbar_n))]
        for ch, got in measured.items():
            peaks = list(got.revivals)
            for name, pred in predicted:
                if pred is None:
                    continue
                near = min(peaks, key=lambda x: abs(x - pred)) if peaks else None
                rel = "" if near is None else _fmt((near - pred) / pred)
                rows.append([label, ch, name, _fmt(pred), "" if near is None else _fmt(near), rel])
            rows.append([label, ch, "first_revival", "", "" if got.t_revival is None else _fmt(got.t_revival), ""])
            rows.append([label, ch, "collapse", "", "" if got.t_collapse is None else _fmt(got.t_collapse), ""])
    write_csv(cfg.get("out"), ("case", "channel", "quantity", "predicted", "measured", "relative_error"), rows)
    return warnings


RUNNERS = {"bloch": run_bloch, "invariants": run_invariants, "qutrit": run_qutrit,
           "quantized": run_quantized, "revival": run_revival}


def run_scenario(cfg):
    """Run one scenario. Returns the process exit status."""
    warnings = RUNNERS[cfg.mode](cfg)
    for path, series in warnings:
        meta = (path or "trilevel") + ".meta"
        write_meta(meta, [f"norm_deficit={series.norm_deficit:.6e}", *[f"warning={w}" for w in series.warnings]])
        print(f"trilevel: {series.warnings[0]} (see {meta})", file=sys.stderr)
    return 0


def make_parser():
    parser = argparse.ArgumentParser(prog="trilevel", description=__doc__.splitlines()[0])
    parser.add_argument("mode", choices=MODES)
    parser.add_argument("--config", help="key = value configuration file")
    parser.add_argument("--preset", choices=sorted(PRESETS))
    parser.add_argument("--out", help="output CSV path (stdout if omitted)")
    parser.add_argument("--case", type=str.upper, choices=CASES)
    parser.add_argument("--tmax", type=float)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--cutoff", type=int)
    parser.add_argument("--base", choices=("e", "2"))
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    try:
        cfg = build_config(args)
        return run_scenario(cfg)
    except OSError as exc:
        print(f"trilevel: I/O error: {exc}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError) as exc:
        print(f"trilevel: configuration error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
