"""Parameter sweeps: shaking of the trap separation and decoherence
strength."""

from __future__ import print_function

import time


from .. import params
from ..coins import hadamard_coin
from ..walk import WalkState1D
from ..decoherence import DecoherenceModel, decohere_evolve
from ..metrics import scaling_exponent, total_variational_distance, variance
from ..pulses import PulseSchedule, ShakingSpec
from .cells import cell_reduce_and_walk, thermal_walk
from .thermal import decoherence_budget


class SweepResult(object):
    """Per control value: final distribution and the metrics variance,
    exponent, nu and ground_population (None where undefined)."""
    def __init__(self, control, values, records, ground_populations = None, stderr = None, origin = 0):
        self.control = control
        self.values = list(values)
        self.records = records                          # per value: [(t, SiteDistribution)]
        self.ground_populations = ground_populations    # per value: list or None
        self.stderr = stderr                            # per value: variance standard error or None
        self.origin = origin
        self.wall_clock = None
        self.metrics = dict((name, [self._metric(name, i) for i in range(len(self.values))])
                            for name in ["variance", "exponent", "nu", "ground_population"])
    def distribution(self, i):
        return self.records[i][-1][1]
    def variance_series(self, i):
        return [(t, variance(d, self.origin)) for t, d in self.records[i]]
    def nu_series(self, i):
        return [(t, total_variational_distance(d, t, self.origin)) for t, d in self.records[i] if t > 0]
    def _metric(self, name, i):
        t, d = self.records[i][-1]
        if name == "variance":
            return float(variance(d, self.origin))
        if name == "nu":
            return float(total_variational_distance(d, t, self.origin)) if t > 0 else None
        if name == "ground_population":
            return self.ground_populations[i][-1] if self.ground_populations else None
        series = [(s, v) for s, v in self.variance_series(i) if s >= params.lab.fit_t_min and v > 0]
        if len(series) < params.metrics.min_fit_points:
            return None
        return float(scaling_exponent(series))
    def as_dict(self):
        return {"control": self.control, "values": self.values, "metrics": self.metrics}
    def summary(self):
        print("{0:>12} {1:>12} {2:>10} {3:>10} {4:>12}".format(self.control, "variance", "exponent", "nu", "ground pop"))
        fmt = lambda v: "-" if v is None else "{0:.6g}".format(v)
        for i, v in enumerate(self.values):
            print("{0:>12g} {1:>12} {2:>10} {3:>10} {4:>12}".format(
                v, *[fmt(self.metrics[m][i]) for m in ["variance", "exponent", "nu", "ground_population"]]))
    def plot(self, metric = "nu", **kwargs):
        from ..plotting import plot_sweep
        return plot_sweep(self, metric, **kwargs)

def shaking_sweep(amplitudes = None, steps = None, N = 2, coin_schedule = None, shift_schedule = None,
                  initial = None, level = 0, thermal = None, omega = None, seed = 0, cell = None, grid = None):
    """Cell-reduced walk for every shaking amplitude; thermal (a
    ThermalSpec) replaces the single initial level by a thermal mixture."""
    ts = time.time()
    amplitudes = params.lab.shake_amplitudes if amplitudes is None else amplitudes
    steps = params.lab.sweep_steps if steps is None else steps
    coin_schedule = coin_schedule or PulseSchedule.pi_half_pulse()
    shift_schedule = shift_schedule or PulseSchedule.pi_pulse()
    records, ground = [], []
    for amp in amplitudes:
        shaking = ShakingSpec(amp, omega, seed)
        if thermal is None:
            res = cell_reduce_and_walk(coin_schedule, shift_schedule, N, steps, initial, level,
                                       shaking = shaking, cell = cell, grid = grid)
        else:
            res = thermal_walk(thermal, coin_schedule, shift_schedule, steps, initial,
                               shaking = shaking, cell = cell, grid = grid)
        records.append(res.records)
        ground.append(res.ground_populations)
        if params.lab.debug_info:
            print("amplitude", amp, "nu", total_variational_distance(res.records[-1][1], steps))
    result = SweepResult("shake_amplitude", amplitudes, records, ground)
    result.wall_clock = time.time() - ts
    return result

def decoherence_sweep(p_values, steps = 20, coin = None, shift = "standard", trajectories = None,
                      target = None, seed = 0, initial_coin = "sym", record_every = 1):
    """Monte Carlo ensembles of the walk from site 0 for every
    decoherence probability p."""
    ts = time.time()
    coin = coin or hadamard_coin()
    records, stderr = [], []
    for i, p in enumerate(p_values):
        model = DecoherenceModel(p, target, trajectories, seed + i)
        state = WalkState1D.localized(0, initial_coin)
        res = decohere_evolve(state, model, coin, shift, steps, record_every = record_every)
        records.append(res.distributions())
        stderr.append(res.variance()[1])
    result = SweepResult("p", p_values, records, stderr = stderr)
    result.wall_clock = time.time() - ts
    return result

def decoherence_rate_sweep(rates = None, steps = None, step_time_factor = None, omega_x = None, **kwargs):
    """decoherence_sweep over photon scattering rates (1/s) converted to
    probabilities per step."""
    rates = params.lab.decoherence_rates if rates is None else rates
    steps = params.lab.sweep_steps if steps is None else steps
    budgets = [decoherence_budget(omega_x, step_time_factor, r, steps) for r in rates]
    result = decoherence_sweep([b.p for b in budgets], steps, **kwargs)
    result.control = "rate"
    result.values = list(rates)
    result.budgets = budgets
    return result


if __name__ == "__main__":
    res = decoherence_sweep([0.0, 0.05, 0.2, 1.0], steps = 20, trajectories = 500)
    res.summary()
