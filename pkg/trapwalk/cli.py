"""Command line front end.

    trapwalk --config run.cfg [--out prefix] [--seed n] [--record-every n]
             [--long-jobs] [--timing] [--version]

A configuration is a line oriented text file of "key = value" entries
grouped in [section]s, '#' starts a comment.  Top level keys (before any
section) are kind, seed and record_every.  Example:

    kind = walk1d
    seed = 7
    [walk]
    steps = 3
    coin = hadamard
    initial_coin = +

A run writes prefix.csv (step,index_k,index_l,probability, one row per
occupied site and recorded step; sweeps write prefix_v<i>.csv per
control value) and prefix.json (metrics, seed, resolved configuration).
Outputs are byte identical for equal configurations, --timing adds the
wall clock to the metrics.
Exit codes: 0 success, 1 configuration error, 2 numerical failure (a
tripped guard or a numerical precondition of the run)."""

from __future__ import print_function

import os
import sys
import csv
import json
import time
import argparse
from io import StringIO
from math import pi, isnan, inf

import numpy
import scipy

from . import params
from .utils import NumericalGuardError, atomic_write


KINDS = ("walk1d", "walk2d", "physical", "thermal", "shake", "decohere", "search", "calibrate", "convergence")


#### configuration schema ####

def _bool(s):
    v = s.strip().lower()
    if v in ("true", "yes", "on", "1"):
        return True
    if v in ("false", "no", "off", "0"):
        return False
    raise ValueError("expected true or false, got {0!r}".format(s))

def _float_list(s):
    return [float(x) for x in s.split(",") if x.strip()]

def _nonneg(v):
    return None if v >= 0 else "must be nonnegative"
def _positive(v):
    return None if v > 0 else "must be positive"
def _unit(v):
    return None if 0 <= v <= 1 else "must lie in [0, 1]"
def _open_unit(v):
    return None if 0 < v <= 1 else "must lie in (0, 1]"
def _choice(*options):
    def check(v):
        return None if v in options else "must be one of {0}".format(", ".join(options))
    return check
def _all(check):
    def check_list(v):
        for x in v:
            msg = check(x)
            if msg:
                return "entries " + msg
        return None
    return check_list
def _seed(v):
    return None if 0 <= v < 2**64 else "must be an unsigned 64-bit integer"
def _even(v):
    return None if v >= 2 and v % 2 == 0 else "must be an even number of at least 2"

# section -> [(key, type, default, check)]
schema = [
    ("", [
        ("kind", str, None, _choice(*KINDS)),
        ("seed", int, 0, _seed),
        ("record_every", int, params.cli.record_every, _positive),
        ]),
    ("walk", [
        ("steps", int, 10, _nonneg),
        ("coin", str, "hadamard", _choice("hadamard", "tunneling", "biased", "identity")),
        ("theta", float, pi / 2, None),
        ("p", float, 0.5, _unit),
        ("delta_c", float, 0.0, None),
        ("shift", str, "standard", _choice("standard", "flipflop", "general")),
        ("c", float, 1.0, _unit),
        ("delta_o", float, 0.0, None),
        ("phase_walk", _bool, False, None),
        ("phi", float, 0.0, None),
        ("initial_site", int, 0, None),
        ("initial_coin", str, "+", _choice("+", "-", "sym")),
        ("sites", int, 0, _nonneg),
        ]),
    ("walk2d", [
        ("steps", int, 10, _nonneg),
        ("coin", str, "separable", _choice("separable", "entangled", "c0")),
        ("shift", str, "flipflop", _choice("standard", "flipflop")),
        ("initial_k", int, 0, None),
        ("initial_l", int, 0, None),
        ("initial_coin", str, "++", _choice("++", "+-", "-+", "--")),
        ("side", int, 0, _nonneg),
        ]),
    ("trap", [
        ("V0", float, params.solver.V0, _positive),
        ("potential_form", str, params.solver.potential_form, _choice("min_gaussian", "sum_gaussian", "piecewise_harmonic")),
        ("dx", float, params.solver.dx, _positive),
        ("dt", float, params.solver.dt, _positive),
        ("margin", float, params.solver.margin, _nonneg),
        ]),
    ("pulse", [
        ("a_max", float, params.pulses.a_max, _positive),
        ("a_min", float, params.pulses.a_min, _positive),
        ("t_r", float, params.pulses.t_r, _nonneg),
        ("t_i_pi", float, params.pulses.t_i_pi, _nonneg),
        ("t_i_pi_half", float, params.pulses.t_i_pi_half, _nonneg),
        ("ramp_shape", str, params.pulses.ramp_shape, _choice("smootherstep", "smoothstep", "linear", "cosine")),
        ("calibrate", _bool, True, None),
        ("t_max", float, params.calibration.t_max, _positive),
        ]),
    ("line", [
        ("n_traps", int, params.line.n_traps, _even),
        ("steps", int, params.line.steps, _nonneg),
        ("level", int, params.line.level, _nonneg),
        ("levels", int, 2, _positive),
        ("shake_amplitude", float, 0.0, _nonneg),
        ("omega_shake", float, params.pulses.omega_shake, None),
        ]),
    ("thermal", [
        ("P0", float, 0.9, _open_unit),
        ("steps", int, params.line.steps, _nonneg),
        ("truncation", float, params.lab.thermal_truncation, _open_unit),
        ("spectrum", str, "harmonic", _choice("harmonic", "trap")),
        ("extra_levels", int, 2, _nonneg),
        ]),
    ("shake", [
        ("amplitudes", _float_list, list(params.lab.shake_amplitudes), _all(_nonneg)),
        ("steps", int, params.lab.sweep_steps, _nonneg),
        ("levels", int, 2, _positive),
        ("level", int, 0, _nonneg),
        ("omega_shake", float, params.pulses.omega_shake, None),
        ]),
    ("decohere", [
        ("p_values", _float_list, [0.0, 0.01, 0.1, 1.0], _all(_unit)),
        ("steps", int, 20, _nonneg),
        ("trajectories", int, params.decoherence.trajectories, _positive),
        ("target", str, params.decoherence.target, _choice("coin", "position", "both")),
        ("coin", str, "hadamard", _choice("hadamard", "tunneling", "biased")),
        ("coin_theta", float, pi / 2, None),
        ("coin_p", float, 0.5, _unit),
        ("coin_delta", float, 0.0, None),
        ("shift", str, "standard", _choice("standard", "flipflop")),
        ("initial_coin", str, "sym", _choice("+", "-", "sym")),
        ]),
    ("search", [
        ("side", int, params.search.side, lambda v: None if v >= 2 else "must be at least 2"),
        ("marked_k", int, 0, _nonneg),
        ("marked_l", int, 0, _nonneg),
        ("max_steps", int, params.search.max_steps, _nonneg),
        ]),
    ("calibrate", [
        ("target", str, "both", _choice("both", "pi", "pi/2")),
        ("level", int, 0, _nonneg),
        ]),
    ("convergence", [
        ("dts", _float_list, [0.04, 0.02, 0.01, 0.005], _all(_positive)),
        ("t_end", float, 2.0, _positive),
        ]),
    ]
_schema = dict((name, dict((k[0], k) for k in keys)) for name, keys in schema)


class ConfigError(ValueError):
    """Errors of a configuration, a list of (line, key, message)."""
    def __init__(self, errors):
        self.errors = list(errors)
        ValueError.__init__(self, "\n".join(self.format_error(e) for e in self.errors))
    @staticmethod
    def format_error(e):
        line, key, msg = e
        where = "line {0}: ".format(line) if line else ""
        return "{0}{1}: {2}".format(where, key, msg) if key else where + msg

class RunConfig(object):
    """Validated configuration: values[section][key], lines[(section,
    key)] is the line a value came from."""
    def __init__(self, values, lines = None):
        self.values = values
        self.lines = lines or {}
    @property
    def kind(self):
        return self.values[""]["kind"]
    @property
    def seed(self):
        return self.values[""]["seed"]
    @property
    def record_every(self):
        return self.values[""]["record_every"]
    def section(self, name):
        return self.values[name]
    def as_dict(self):
        return dict((s if s else "_", dict(v)) for s, v in self.values.items())
    def __eq__(self, other):
        return isinstance(other, RunConfig) and self.values == other.values
    def __ne__(self, other):
        return not self == other
    def __str__(self):
        return serialize_config(self)

def _qualified(section, key):
    return "{0}.{1}".format(section, key) if section else key

def parse_config(text):
    """Parse and validate; raises ConfigError listing every problem."""
    errors = []
    values = dict((name, {}) for name, _ in schema)
    lines = {}
    section = ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            name = line[1:-1].strip() if line.endswith("]") else None
            if name not in _schema or not name:
                errors.append((lineno, None, "unknown section {0}".format(line)))
                section = None
            else:
                section = name
            continue
        if "=" not in line:
            errors.append((lineno, None, "expected 'key = value', got {0!r}".format(line)))
            continue
        key, val = [s.strip() for s in line.split("=", 1)]
        if section is None:
            continue
        qkey = _qualified(section, key)
        if key not in _schema[section]:
            errors.append((lineno, qkey, "unknown key"))
            continue
        if key in values[section]:
            errors.append((lineno, qkey, "given twice (first on line {0})".format(lines[(section, key)])))
            continue
        _, typ, _, check = _schema[section][key]
        try:
            v = typ(val)
        except ValueError:
            errors.append((lineno, qkey, "expected {0}, got {1!r}".format(
                {int: "an integer", float: "a number", str: "a string"}.get(typ, typ.__name__.strip("_")), val)))
            continue
        if typ is float and isnan(v):
            errors.append((lineno, qkey, "must be a number"))
            continue
        msg = check(v) if check else None
        if msg:
            errors.append((lineno, qkey, "{0} {1}".format(val, msg)))
            continue
        values[section][key] = v
        lines[(section, key)] = lineno
    for name, keys in schema:
        for key, typ, default, check in keys:
            if key not in values[name]:
                if default is None:
                    errors.append((None, _qualified(name, key), "missing"))
                else:
                    values[name][key] = list(default) if isinstance(default, list) else default
    if not errors:
        errors = _cross_checks(values, lines)
    if errors:
        raise ConfigError(errors)
    return RunConfig(values, lines)

def _cross_checks(v, lines):
    errors = []
    def err(section, key, msg):
        errors.append((lines.get((section, key)), _qualified(section, key), msg))
    w = v["walk"]
    if w["sites"] and not 0 <= w["initial_site"] < w["sites"]:
        err("walk", "initial_site", "outside the line of {0} sites".format(w["sites"]))
    if w["phase_walk"] and w["shift"] == "general":
        err("walk", "phase_walk", "the phase walk uses the standard or flip-flop shift")
    w2 = v["walk2d"]
    if w2["side"] and not (0 <= w2["initial_k"] < w2["side"] and 0 <= w2["initial_l"] < w2["side"]):
        err("walk2d", "initial_k", "initial site outside the {0}x{0} grid".format(w2["side"]))
    p = v["pulse"]
    if p["a_min"] > p["a_max"]:
        err("pulse", "a_min", "must not exceed a_max")
    if v["trap"]["dx"] > params.solver.max_dx:
        err("trap", "dx", "must not exceed {0:g}".format(params.solver.max_dx))
    s = v["search"]
    if bool(s["marked_k"]) != bool(s["marked_l"]):
        err("search", "marked_k", "give both marked_k and marked_l, or neither")
    elif s["marked_k"] and not (1 <= s["marked_k"] <= s["side"] and 1 <= s["marked_l"] <= s["side"]):
        err("search", "marked_k", "marked vertex outside the {0}x{0} grid".format(s["side"]))
    if v["line"]["level"] >= v["line"]["levels"]:
        err("line", "level", "must be below levels")
    if v["shake"]["level"] >= v["shake"]["levels"]:
        err("shake", "level", "must be below levels")
    return errors

def _format_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, list):
        return ", ".join(repr(float(x)) for x in v)
    return str(v)

def serialize_config(config):
    out = []
    for name, keys in schema:
        if name:
            out.append("")
            out.append("[{0}]".format(name))
        for key, _, _, _ in keys:
            out.append("{0} = {1}".format(key, _format_value(config.values[name][key])))
    return "\n".join(out) + "\n"


#### provenance ####

def _format_default(v):
    return "{0:g}".format(v) if isinstance(v, float) else str(v)

def version_and_provenance(seed = None):
    """Build identifier and the default parameters, with the origin of
    every default taken from the published setup."""
    out = [params.cli.build,
           "python {0}, numpy {1}, scipy {2}".format(sys.version.split()[0], numpy.__version__, scipy.__version__),
           "seed = {0}".format(params.decoherence.seed if seed is None else seed),
           "",
           "defaults:"]
    sourced = set()
    for name, published, source in params.published_defaults:
        value = params.in_use(name)
        if value == published:
            out.append("    {0} = {1}    [paper default: {2}]".format(name, _format_default(value), source))
        else:
            out.append("    {0} = {1}    [paper value {2}: {3}]".format(
                name, _format_default(value), _format_default(published), source))
        sourced.add(name)
    for section in [params.solver, params.calibration, params.line, params.lab, params.search]:
        for key in sorted(vars(section)):
            v = getattr(section, key)
            if key.startswith("_") or key in sourced or key.startswith("debug") or not isinstance(v, (int, float, str)):
                continue
            out.append("    {0}.{1} = {2}    [default]".format(section.__name__, key, _format_default(v)))
    return "\n".join(out) + "\n"


#### running ####

def _json_default(o):
    if hasattr(o, "tolist"):
        return o.tolist()
    raise TypeError("not serializable: {0!r}".format(o))

def _csv_text(records):
    """records of (t, SiteDistribution or LatticeDistribution)"""
    buf = StringIO()
    w = csv.writer(buf, lineterminator = "\n")
    w.writerow(["step", "index_k", "index_l", "probability"])
    for t, d in records:
        if hasattr(d, "items"):
            for k, l, p in d.items(0.0):
                w.writerow([t, k, l, repr(float(p))])
        else:
            for k, p in zip(d.sites(), d.probs):
                if p > 0:
                    w.writerow([t, int(k), "", repr(float(p))])
    return buf.getvalue()

def _walk_metrics(records, origin):
    from .metrics import variance, scaling_exponent, total_variational_distance
    var = [(t, variance(d, origin)) for t, d in records]
    fit = [(t, v) for t, v in var if t > 0 and v > 0]
    exponent = scaling_exponent(fit) if len(fit) >= params.metrics.min_fit_points else None
    nu = [(t, total_variational_distance(d, t, origin)) for t, d in records if t > 0]
    return {"variance": var, "exponent": exponent, "nu": nu}

def _every(records, n):
    last = records[-1][0]
    return [(t, d) for t, d in records if t % n == 0 or t == last]

def _coin(name, w):
    from .coins import coin_by_name
    return coin_by_name(name, theta = w.get("theta", pi / 2), p = w.get("p", 0.5), delta_c = w.get("delta_c", 0.0))

def _run_walk1d(cfg):
    from .walk import WalkState1D, GeneralShiftParams, evolve_1d
    w = cfg.section("walk")
    bounds = (0, w["sites"] - 1) if w["sites"] else None
    state = WalkState1D.localized(w["initial_site"], w["initial_coin"], 2, bounds)
    shift_params = GeneralShiftParams(w["c"], w["delta_o"]) if w["shift"] == "general" else None
    phi = w["phi"] if w["phase_walk"] else None
    _, records = evolve_1d(state, w["steps"], _coin(w["coin"], w), w["shift"], shift_params,
                           record_every = cfg.record_every, phi = phi)
    metrics = _walk_metrics(records, w["initial_site"])
    metrics["ground_population"] = []
    return records, metrics

def _run_walk2d(cfg):
    from .walk import WalkState2D, evolve_2d
    from .coins import coin_by_name
    w = cfg.section("walk2d")
    s = w["side"]
    bounds = ((0, s - 1), (0, s - 1)) if s else None
    state = WalkState2D.localized((w["initial_k"], w["initial_l"]), w["initial_coin"], bounds)
    _, records = evolve_2d(state, w["steps"], coin_by_name(w["coin"]), w["shift"], record_every = cfg.record_every)
    k0, l0 = w["initial_k"], w["initial_l"]
    var = [(t, float(sum(p * ((k - k0)**2 + (l - l0)**2) for k, l, p in d.items()))) for t, d in records]
    from .metrics import scaling_exponent
    fit = [(t, v) for t, v in var if t > 0 and v > 0]
    exponent = scaling_exponent(fit) if len(fit) >= params.metrics.min_fit_points else None
    return records, {"variance": var, "exponent": exponent, "nu": [], "ground_population": []}

def _schedules(cfg):
    from .pulses import PulseSchedule
    p = cfg.section("pulse")
    kw = dict(a_max = p["a_max"], a_min = p["a_min"], t_r = p["t_r"], ramp_shape = p["ramp_shape"])
    return (PulseSchedule.pi_half_pulse(t_i = p["t_i_pi_half"], **kw),
            PulseSchedule.pi_pulse(t_i = p["t_i_pi"], **kw))

def _cell(cfg):
    from .pulses import TrapCell
    t, p = cfg.section("trap"), cfg.section("pulse")
    cell = TrapCell(0.0, t["V0"], t["potential_form"])
    return cell, cell.make_grid(p["a_max"], t["dx"], params.solver.margin, t["dt"])

def _calibrated(cfg, cell, grid, extra, level = 0):
    from .pulses import calibrate_hold_time
    coin, shift = _schedules(cfg)
    if not cfg.section("pulse")["calibrate"]:
        return coin, shift
    t_max = cfg.section("pulse")["t_max"]
    out = []
    for sched, target in ((coin, "pi/2"), (shift, "pi")):
        cal = calibrate_hold_time(cell, sched, target, grid, level = level, t_max = t_max)
        extra.setdefault("calibration", {})[target] = {
            "t_i": cal.t_i, "fidelity": cal.fidelity, "leakage": cal.leakage}
        out.append(cal.schedule(sched))
    return tuple(out)

def _run_physical(cfg, long_jobs):
    from .pulses import TrapLine, ShakingSpec, run_walk_line, default_initial
    l, t = cfg.section("line"), cfg.section("trap")
    if l["n_traps"] > 2 * params.line.n_traps and not long_jobs:
        raise ConfigError([(None, "line.n_traps",
                            "{0} traps is a long job, run with --long-jobs".format(l["n_traps"]))])
    line = TrapLine(l["n_traps"], cfg.section("pulse")["a_max"], t["V0"], t["potential_form"],
                    t["dx"], t["margin"], t["dt"])
    line.check_grid(max(l["levels"], l["level"] + 1))
    extra = {}
    cell, grid = _cell(cfg)
    coin, shift = _calibrated(cfg, cell, grid, extra, l["level"])
    shaking = ShakingSpec(l["shake_amplitude"], l["omega_shake"], cfg.seed) if l["shake_amplitude"] else None
    res = run_walk_line(steps = l["steps"], level = l["level"], coin_schedule = coin, shift_schedule = shift,
                        shaking = shaking, n_levels = l["levels"], line = line)
    records = _every(res.records(), cfg.record_every)
    origin = min(default_initial(line.n_traps)) // 2
    metrics = _walk_metrics(records, origin)
    metrics["ground_population"] = [(t, res.ground_population(t)) for t, _ in records]
    metrics.update(extra)
    return records, metrics

def _run_thermal(cfg):
    from .lab.thermal import ThermalSpec, temperature_mapping, mean_quanta
    from .lab.cells import thermal_walk
    from .pulses import single_trap_basis
    from .solver import GaussianTrap
    th, t = cfg.section("thermal"), cfg.section("trap")
    extra = {}
    cell, grid = _cell(cfg)
    energies = None
    if th["spectrum"] == "trap":
        energies = single_trap_basis(0.0, 40, grid, t["V0"], t["potential_form"]).energies
    bound = inf if t["potential_form"] == "piecewise_harmonic" else GaussianTrap(0.0, t["V0"]).bound_levels()
    spec = ThermalSpec(ground_population = th["P0"], energies = energies, truncation = th["truncation"],
                       bound_levels = bound)
    if spec.retained() + th["extra_levels"] > bound:
        raise NumericalGuardError("{0} retained and {1} extra levels, the trap binds {2}".format(
            spec.retained(), th["extra_levels"], bound))
    coin, shift = _calibrated(cfg, cell, grid, extra)
    res = thermal_walk(spec, coin, shift, th["steps"], cell = cell, grid = grid,
                       extra_levels = th["extra_levels"], record_every = cfg.record_every)
    metrics = _walk_metrics(res.records, 0)
    metrics["ground_population"] = [(t, g) for (t, _), g in zip(res.records, res.ground_populations)]
    metrics.update(extra)
    metrics.update({"retained_levels": len(spec.retained_weights()), "beta": spec.beta,
                    "temperature_K": temperature_mapping(th["P0"]), "mean_quanta": mean_quanta(th["P0"])})
    return res.records, metrics

def _sweep_output(result, cfg):
    per_value = []
    for i, v in enumerate(result.values):
        records = _every(result.records[i], cfg.record_every)
        m = _walk_metrics(records, result.origin)
        m["value"] = v
        m["ground_population"] = ([(t, g) for (t, _), g in zip(result.records[i], result.ground_populations[i])]
                                  if result.ground_populations else [])
        if result.stderr:
            m["variance_stderr"] = result.stderr[i]
        per_value.append((records, m))
    return per_value

def _run_shake(cfg):
    from .lab.sweeps import shaking_sweep
    s = cfg.section("shake")
    extra = {}
    cell, grid = _cell(cfg)
    coin, shift = _calibrated(cfg, cell, grid, extra)
    res = shaking_sweep(s["amplitudes"], s["steps"], s["levels"], coin, shift, level = s["level"],
                        omega = s["omega_shake"], seed = cfg.seed, cell = cell, grid = grid)
    return res, extra

def _run_decohere(cfg):
    from .lab.sweeps import decoherence_sweep
    d = cfg.section("decohere")
    coin = _coin(d["coin"], {"theta": d["coin_theta"], "p": d["coin_p"], "delta_c": d["coin_delta"]})
    res = decoherence_sweep(d["p_values"], d["steps"], coin, d["shift"], d["trajectories"],
                            d["target"], cfg.seed, d["initial_coin"])
    return res, {}

def _run_search(cfg):
    from .lab.search import search_experiment
    s = cfg.section("search")
    marked = (s["marked_k"], s["marked_l"]) if s["marked_k"] else None
    res = search_experiment(s["side"], marked, s["max_steps"], cfg.record_every)
    metrics = {"variance": [], "exponent": None, "nu": [], "ground_population": [],
               "marked_probability": list(enumerate(res.probabilities.tolist())),
               "max_deviation": float(res.deviations.max())}
    if marked is not None:
        metrics.update({"first_peak": res.peak, "maximum": res.maximum, "amplification": res.amplification()})
    return res.distributions, metrics

def _run_calibrate(cfg):
    from .pulses import calibrate_hold_time, extract_effective_unitary, fit_coin_params, fit_shift_params
    from .coins import nearest_unitary
    from .metrics import SiteDistribution
    c = cfg.section("calibrate")
    cell, grid = _cell(cfg)
    coin, shift = _schedules(cfg)
    metrics = {"variance": [], "exponent": None, "nu": [], "ground_population": [], "calibration": {}}
    records = []
    jobs = [(coin, "pi/2"), (shift, "pi")]
    if c["target"] != "both":
        jobs = [j for j in jobs if j[1] == c["target"]]
    for sched, target in jobs:
        cal = calibrate_hold_time(cell, sched, target, grid, level = c["level"],
                                  t_max = cfg.section("pulse")["t_max"])
        U = extract_effective_unitary(cell, cal.schedule(sched), c["level"] + 1, grid)
        block = nearest_unitary(U.block(c["level"]))
        entry = {"t_i": cal.t_i, "fidelity": cal.fidelity, "leakage": U.leakage}
        if target == "pi/2":
            entry["p"], entry["delta_c"] = fit_coin_params(nearest_unitary(U.coin_block(c["level"])))
        else:
            entry["c"], entry["delta_o"] = fit_shift_params(block)
        metrics["calibration"][target] = entry
        if not records:
            records.append((0, SiteDistribution(0, [1.0, 0.0])))
            records.append((1, SiteDistribution(0, abs(U.block(c["level"])[:, 0])**2)))
    return records, metrics

def _run_convergence(cfg):
    from .solver import convergence_study
    c = cfg.section("convergence")
    dts, errors, order = convergence_study(c["dts"], c["t_end"], cfg.section("trap")["V0"])
    return [], {"variance": [], "exponent": None, "nu": [], "ground_population": [],
                "dts": dts, "errors": errors, "order": order}

def run(config, out, long_jobs = False, timing = False):
    """Run config and write out.csv (or out_v<i>.csv) and out.json.
    Returns the exit code."""
    ts = time.time()
    try:
        outputs = _dispatch(config, long_jobs)
    except ConfigError as e:
        print("ERROR: {0}".format(e), file = sys.stderr)
        return 1
    except NumericalGuardError as e:
        print("ERROR: numerical guard: {0}".format(e), file = sys.stderr)
        return 2
    except ValueError as e:
        print("ERROR: numerical failure: {0}".format(e), file = sys.stderr)
        return 2
    files, metrics = outputs
    for path, records in files:
        atomic_write(out + path, _csv_text(records))
    metrics.update({"kind": config.kind, "seed": config.seed, "config": config.as_dict(),
                    "wall_clock": (time.time() - ts) if timing else None,
                    "build": params.cli.build})
    atomic_write(out + ".json", json.dumps(metrics, indent = 2, sort_keys = True, default = _json_default) + "\n")
    return 0

def _dispatch(cfg, long_jobs):
    kind = cfg.kind
    single = {"walk1d": _run_walk1d, "walk2d": _run_walk2d, "thermal": _run_thermal,
              "search": _run_search, "calibrate": _run_calibrate, "convergence": _run_convergence}
    if kind in single:
        records, metrics = single[kind](cfg)
        return [(".csv", records)], metrics
    if kind == "physical":
        records, metrics = _run_physical(cfg, long_jobs)
        return [(".csv", records)], metrics
    res, extra = (_run_shake if kind == "shake" else _run_decohere)(cfg)
    per_value = _sweep_output(res, cfg)
    metrics = {"control": res.control, "values": res.values, "sweep": [m for _, m in per_value],
               "variance": [], "exponent": None, "nu": [], "ground_population": []}
    metrics.update(extra)
    return [("_v{0}.csv".format(i), r) for i, (r, _) in enumerate(per_value)], metrics


def main(argv = None):
    parser = argparse.ArgumentParser(prog = "trapwalk",
                                     description = "Quantum walks of atoms in optical microtraps.")
    parser.add_argument("--config", help = "configuration file")
    parser.add_argument("--out", help = "output prefix (default: configuration path without extension)")
    parser.add_argument("--seed", type = int, help = "override the configured seed")
    parser.add_argument("--record-every", type = int, help = "record every n-th step")
    parser.add_argument("--long-jobs", action = "store_true", help = "allow long reproduction runs")
    parser.add_argument("--timing", action = "store_true", help = "record the wall clock in the metrics")
    parser.add_argument("--version", action = "store_true", help = "print build and default parameters")
    args = parser.parse_args(argv)
    if args.version:
        print(version_and_provenance(args.seed), end = "")
        return 0
    if not args.config:
        print("ERROR: --config is required", file = sys.stderr)
        return 1
    try:
        with open(args.config, encoding = "utf-8") as f:
            text = f.read()
        cfg = parse_config(text)
        if args.seed is not None:
            msg = _seed(args.seed)
            if msg:
                raise ConfigError([(None, "--seed", msg)])
            cfg.values[""]["seed"] = args.seed
        if args.record_every is not None:
            if args.record_every < 1:
                raise ConfigError([(None, "--record-every", "must be positive")])
            cfg.values[""]["record_every"] = args.record_every
    except (IOError, OSError, UnicodeDecodeError) as e:
        print("ERROR: cannot read configuration: {0}".format(e), file = sys.stderr)
        return 1
    except ConfigError as e:
        print("ERROR: invalid configuration\n{0}".format(e), file = sys.stderr)
        return 1
    out = args.out or os.path.splitext(args.config)[0]
    return run(cfg, out, long_jobs = args.long_jobs or params.cli.long_jobs, timing = args.timing)


if __name__ == "__main__":
    sys.exit(main())
