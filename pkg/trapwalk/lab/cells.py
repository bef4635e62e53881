"""Cell reduction: the pulses of a trap line act on disjoint pairs of
traps, so the whole line is a one-dimensional walk with a coin of
dimension 2N whose coin and shift are the effective unitaries of one
pair.  Idle boundary traps only pick up the phase of their levels."""

from __future__ import print_function

import time

from numpy import diag, exp, sqrt, abs as np_abs, concatenate, arange

from .. import params
from ..pulses import PulseSchedule, TrapCell, extract_effective_unitary, localized_basis
from ..pulses import walk_state_from_traps, trap_distribution_from_walk, default_initial
from ..coins import multilevel_coin
from ..walk import apply_coin, shift_pair_1d
from ..metrics import position_distribution, variance_series
from ..utils import NumericalGuardError, get_parmap, debug_print
from .thermal import thermal_average


class CellUnitaries(object):
    """Coin (coin order), shift (pair order) and idle-trap phases of one
    walk step."""
    def __init__(self, coin, shift, edge, leakage):
        self.coin = coin
        self.shift = shift
        self.edge = edge
        self.leakage = leakage
    def __str__(self):
        return "CellUnitaries(N={0}, leakage={1:.3g})".format(self.coin.dim // 2, self.leakage)

def _leakage(U, levels):
    cols = concatenate([arange(levels), U.N + arange(levels)])
    return float((1 - (np_abs(U.matrix[:, cols])**2).sum(axis = 0)).max())

def extract_cell_unitaries(coin_schedule, shift_schedule, N, cell = None, grid = None,
                           shaking = None, step = 0, max_leakage = None, levels = None):
    """Unitaries of walk step number step (0 based), leakage checked on
    the lowest levels (default all N)."""
    max_leakage = params.lab.cell_max_leakage if max_leakage is None else max_leakage
    levels = N if levels is None else levels
    cell = cell or TrapCell()
    if grid is None:
        grid = cell.make_grid(coin_schedule.a_max)
    basis = localized_basis(cell, N, grid, coin_schedule.a_max)
    Uc = extract_effective_unitary(cell, coin_schedule, N, grid, shaking, 2 * step, 1.0, basis)
    Us = extract_effective_unitary(cell, shift_schedule, N, grid, shaking, 2 * step + 1, 1.0, basis)
    leakage = max(_leakage(Uc, levels), _leakage(Us, levels))
    if leakage > max_leakage:
        raise NumericalGuardError("cell reduction invalid: leakage {0:.3g} above {1:g}".format(leakage, max_leakage))
    edge = diag(exp(-1j * basis.energies * shift_schedule.duration))
    return CellUnitaries(multilevel_coin(Uc.coin_matrix(), "coin pulse"),
                         multilevel_coin(Us.pair_matrix(), "shift pulse"), edge, leakage)

def _extract_job(job):
    coin_schedule, shift_schedule, N, cell, grid, shaking, step, max_leakage, levels = job
    return extract_cell_unitaries(coin_schedule, shift_schedule, N, cell, grid, shaking, step, max_leakage, levels)

def step_unitaries(coin_schedule, shift_schedule, N, steps, cell = None, grid = None, shaking = None,
                   max_leakage = None, levels = None):
    """One CellUnitaries per step; without shaking all steps share one."""
    cell = cell or TrapCell()
    if grid is None:
        grid = cell.make_grid(coin_schedule.a_max)
    if shaking is None or not shaking.active:
        U = extract_cell_unitaries(coin_schedule, shift_schedule, N, cell, grid, None, 0, max_leakage, levels)
        return [U] * steps
    jobs = [(coin_schedule, shift_schedule, N, cell, grid, shaking, s, max_leakage, levels) for s in range(steps)]
    return get_parmap()(_extract_job, jobs)

class CellWalkResult(object):
    def __init__(self, records, ground_populations, state, unitaries, wall_clock):
        self.records = records
        self.ground_populations = ground_populations
        self.state = state
        self.unitaries = unitaries
        self.wall_clock = wall_clock
    @property
    def leakage(self):
        return max(U.leakage for U in self.unitaries) if self.unitaries else 0.0
    def distribution(self, i = -1):
        return self.records[i][1]
    def trap_distribution(self):
        return trap_distribution_from_walk(self.state)
    def variance_series(self, origin = 0):
        return variance_series(self.records, origin)
    def __str__(self):
        return "CellWalkResult({0} steps, ground population {1:.6f}, leakage {2:.3g})".format(
            self.records[-1][0], self.ground_populations[-1], self.leakage)

def _ground_population(state):
    N = state.coin_dim // 2
    return float((np_abs(state.amplitudes[:, [0, N]])**2).sum())

def walk_with_unitaries(state, unitaries, record_every = 1):
    ts = time.time()
    records = [(0, position_distribution(state))]
    ground = [_ground_population(state)]
    steps = len(unitaries)
    for t, U in enumerate(unitaries, 1):
        state = apply_coin(state, U.coin)
        state = shift_pair_1d(state, U.shift, U.edge)
        if t % record_every == 0 or t == steps:
            records.append((t, position_distribution(state)))
            ground.append(_ground_population(state))
    state.check_norm(1e-8)
    return CellWalkResult(records, ground, state, unitaries, time.time() - ts)

def _initial_state(initial, N, level, n_traps):
    bounds = (0, n_traps // 2 - 1) if n_traps else None
    if initial is None:
        initial = default_initial(n_traps) if n_traps else {0: 1 / sqrt(2), 1: 1 / sqrt(2)}
    return walk_state_from_traps(initial, N, level, bounds)

def cell_reduce_and_walk(coin_schedule = None, shift_schedule = None, N = 1, steps = None, initial = None,
                         level = 0, n_traps = None, shaking = None, cell = None, grid = None,
                         record_every = 1, max_leakage = None):
    """Walk of steps steps with coin and shift taken from the pulses of a
    single cell.  initial maps trap index (2k for '-', 2k+1 for '+' of
    qubit k) to amplitude in level level; n_traps gives a finite line,
    otherwise the line is infinite."""
    steps = params.line.steps if steps is None else steps
    if steps < 0:
        raise ValueError("number of steps must be nonnegative, got {0}".format(steps))
    if not 0 <= level < N:
        raise ValueError("level {0} outside the {1} levels kept".format(level, N))
    coin_schedule = coin_schedule or PulseSchedule.pi_half_pulse()
    shift_schedule = shift_schedule or PulseSchedule.pi_pulse()
    state = _initial_state(initial, N, level, n_traps)
    unitaries = step_unitaries(coin_schedule, shift_schedule, N, steps, cell, grid, shaking, max_leakage)
    debug_print(params.lab, "cell unitaries", unitaries[:1])
    return walk_with_unitaries(state, unitaries, record_every)

class ThermalWalkResult(object):
    def __init__(self, spec, per_level, records, ground_populations):
        self.spec = spec
        self.per_level = per_level
        self.records = records
        self.ground_populations = ground_populations
    def distribution(self, i = -1):
        return self.records[i][1]
    def variance_series(self, origin = 0):
        return variance_series(self.records, origin)

def thermal_walk(spec, coin_schedule = None, shift_schedule = None, steps = None, initial = None,
                 n_traps = None, shaking = None, cell = None, grid = None, extra_levels = 2,
                 record_every = 1, max_leakage = None):
    """Cell-reduced walks started in every retained level, mixed with
    Boltzmann weights.  extra_levels levels above the retained ones
    absorb transitions out of the top retained level."""
    steps = params.line.steps if steps is None else steps
    coin_schedule = coin_schedule or PulseSchedule.pi_half_pulse()
    shift_schedule = shift_schedule or PulseSchedule.pi_pulse()
    w = spec.retained_weights()
    K = len(w)
    N = K + extra_levels
    unitaries = step_unitaries(coin_schedule, shift_schedule, N, steps, cell, grid, shaking, max_leakage, K)
    per_level = [walk_with_unitaries(_initial_state(initial, N, j, n_traps), unitaries, record_every)
                 for j in range(K)]
    records = []
    for i, (t, _) in enumerate(per_level[0].records):
        records.append((t, thermal_average([r.records[i][1] for r in per_level], w)))
    ground = [float(sum(wj * r.ground_populations[i] for wj, r in zip(w, per_level)))
              for i in range(len(records))]
    return ThermalWalkResult(spec, per_level, records, ground)


if __name__ == "__main__":
    from ..pulses import calibrate_hold_time
    cell = TrapCell()
    grid = cell.make_grid()
    coin = calibrate_hold_time(cell, PulseSchedule.pi_half_pulse(), "pi/2", grid).schedule(PulseSchedule.pi_half_pulse())
    shift = calibrate_hold_time(cell, PulseSchedule.pi_pulse(), "pi", grid).schedule(PulseSchedule.pi_pulse())
    res = cell_reduce_and_walk(coin, shift, 1, 10, cell = cell, grid = grid)
    print(res)
    res.distribution().summary()
