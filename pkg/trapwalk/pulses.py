"""Tunneling pulses between neighbouring traps.

A pulse brings two traps from the resting distance a_max to a_min
(ramp-in), holds them for t_i and takes them back (ramp-out).  While
the traps are close the atom tunnels, the resulting map between the
vibrational levels of the two traps is the coin (pairs of traps of one
qubit) or the shift (pairs of traps of neighbouring qubits) of a
quantum walk.

Trap 2k holds the '-' state of qubit k, trap 2k+1 its '+' state, so
within a pair the left trap comes first ("trap order")."""

from __future__ import print_function

import time

from numpy import array, asarray, zeros, exp, sqrt, pi, angle, unwrap, sin, cos
from numpy import abs as np_abs, concatenate, arange, trace

from . import params
from .solver import SimGrid, GaussianTrap, WaveFunction, potential, eigenstates
from .solver import lowdin, split_step, propagate
from .coins import unitarity_error, nearest_unitary, multilevel_coin, tunneling_coin
from .metrics import SiteDistribution, qubit_distribution
from .walk import WalkState1D
from .utils import NumericalGuardError, job_rng, bisect_index, debug_print


#### schedules ####

_ramps = {
    "smoothstep": lambda s: s * s * (3 - 2 * s),
    # zero velocity and acceleration at both ends
    "smootherstep": lambda s: s**3 * (10 - 15 * s + 6 * s * s),
    "linear": lambda s: s,
    "cosine": lambda s: 0.5 * (1 - cos(pi * s)),
    }

class PulseSchedule(object):
    """Trap separation a(t): ramp from a_max to a_min in t_r, hold for
    t_i, ramp back in t_r."""
    def __init__(self, a_max = None, a_min = None, t_r = None, t_i = None, ramp_shape = None, name = "pulse"):
        p = params.pulses
        self.a_max = float(p.a_max if a_max is None else a_max)
        self.a_min = float(p.a_min if a_min is None else a_min)
        self.t_r = float(p.t_r if t_r is None else t_r)
        self.t_i = float(p.t_i_pi if t_i is None else t_i)
        self.ramp_shape = ramp_shape or p.ramp_shape
        self.name = name
        if not 0 < self.a_min <= self.a_max:
            raise ValueError("separations must satisfy 0 < a_min <= a_max, got a_min={0}, a_max={1}".format(
                self.a_min, self.a_max))
        if self.t_r < 0 or self.t_i < 0:
            raise ValueError("ramp and hold times must be nonnegative, got t_r={0}, t_i={1}".format(
                self.t_r, self.t_i))
        if self.ramp_shape not in _ramps:
            raise ValueError("unknown ramp shape {0!r}".format(self.ramp_shape))
    @classmethod
    def pi_pulse(cls, **kwargs):
        kwargs.setdefault("t_i", params.pulses.t_i_pi)
        kwargs.setdefault("name", "pi")
        return cls(**kwargs)
    @classmethod
    def pi_half_pulse(cls, **kwargs):
        kwargs.setdefault("t_i", params.pulses.t_i_pi_half)
        kwargs.setdefault("name", "pi/2")
        return cls(**kwargs)
    @property
    def duration(self):
        return 2 * self.t_r + self.t_i
    def with_hold(self, t_i):
        return PulseSchedule(self.a_max, self.a_min, self.t_r, t_i, self.ramp_shape, self.name)
    def separation(self, t):
        da = self.a_max - self.a_min
        s = _ramps[self.ramp_shape]
        if t < self.t_r:
            return self.a_max - da * s(t / self.t_r)
        if t <= self.t_r + self.t_i:
            return self.a_min
        if t < self.duration:
            return self.a_min + da * s((t - self.t_r - self.t_i) / self.t_r)
        return self.a_max
    def segments(self):
        """(start, duration) of ramp-in, hold and ramp-out."""
        return [(0.0, self.t_r), (self.t_r, self.t_i), (self.t_r + self.t_i, self.t_r)]
    def __str__(self):
        return "PulseSchedule({0}: a {1:g} -> {2:g}, t_r={3:g}, t_i={4:g}, {5})".format(
            self.name, self.a_max, self.a_min, self.t_r, self.t_i, self.ramp_shape)

class ShakingSpec(object):
    """Separation noise amplitude * sin(omega t + phase), the phase is
    drawn uniformly for every pulse from the stream (seed, pulse)."""
    def __init__(self, amplitude = None, omega = None, seed = 0):
        self.amplitude = float(params.pulses.shake_amplitude if amplitude is None else amplitude)
        self.omega = float(params.pulses.omega_shake if omega is None else omega)
        self.seed = int(seed)
        if self.amplitude < 0:
            raise ValueError("shaking amplitude must be nonnegative, got {0}".format(self.amplitude))
    @property
    def active(self):
        return self.amplitude != 0
    def phase(self, pulse_index):
        return job_rng(self.seed, pulse_index).uniform(0, 2 * pi)
    def offset(self, t, phase):
        return self.amplitude * sin(self.omega * t + phase)
    def __str__(self):
        return "ShakingSpec(amplitude={0:g}, omega={1:g}, seed={2})".format(self.amplitude, self.omega, self.seed)


#### two-trap cell ####

class TrapCell(object):
    """Two traps placed symmetrically about center, a separation a puts
    them at center -+ a/2."""
    def __init__(self, center = 0.0, V0 = None, form = None):
        self.center = float(center)
        self.V0 = float(params.solver.V0 if V0 is None else V0)
        self.form = form or params.solver.potential_form
        if not self.V0 > 0:
            raise ValueError("trap depth V0 must be positive, got {0}".format(self.V0))
    def centers(self, a):
        return (self.center - 0.5 * a, self.center + 0.5 * a)
    def potential_on(self, grid, a):
        return potential(grid.x, self.centers(a), self.form, self.V0)
    def make_grid(self, a_max = None, dx = None, margin = None, dt = None):
        a_max = params.pulses.a_max if a_max is None else a_max
        lo, hi = self.centers(a_max)
        return SimGrid.covering(lo, hi, dx, margin, dt)
    def __str__(self):
        return "TrapCell(center={0:g}, V0={1:g}, {2})".format(self.center, self.V0, self.form)

def single_trap_basis(center, N, grid, V0 = None, form = None):
    """Vibrational eigenstates of an isolated trap at center."""
    form = form or params.solver.potential_form
    if form in ("sum_gaussian", "min_gaussian"):
        return eigenstates(GaussianTrap(center, V0), N, grid)
    return eigenstates(lambda x: potential(x, [center], form, V0), N, grid)

class LocalizedBasis(object):
    """Orthonormalized levels of the left and right trap of a cell,
    rows ordered (trap, level): left levels first."""
    def __init__(self, grid, states, energies):
        self.grid = grid
        self.states = states
        self.energies = asarray(energies)
    @property
    def N(self):
        return len(self.energies)
    def overlaps(self, psi):
        return self.states.conj().dot(asarray(psi).T) * self.grid.dx
    def index(self, side, level):
        """side 'L' or 'R'"""
        return level + (self.N if side == "R" else 0)

def localized_basis(cell, N, grid, a = None):
    """Single-trap eigenstates of the two traps at separation a
    (default a_max), symmetrically orthonormalized."""
    a = params.pulses.a_max if a is None else a
    left, right = [single_trap_basis(c, N, grid, cell.V0, cell.form) for c in cell.centers(a)]
    states = lowdin(concatenate([left.states, right.states]), grid.dx)
    return LocalizedBasis(grid, states, left.energies)


#### running a pulse ####

def _cell_potential(cell, grid, schedule, shaking = None, phase = 0.0):
    cache = {}
    def V(t):
        a = schedule.separation(t)
        if shaking is not None and shaking.active:
            a += shaking.offset(t, phase)
        if a not in cache:
            cache.clear()
            cache[a] = cell.potential_on(grid, a)
        return cache[a]
    return V

def run_segments(psi, V, schedule, grid):
    for t0, duration in schedule.segments():
        psi = propagate(psi, V, t0, duration, grid)
    return psi

def run_pulse(psi, cell, schedule, grid, shaking = None, pulse_index = 0):
    """Propagate psi (or a batch of wave functions) through one pulse of
    the cell."""
    phase = shaking.phase(pulse_index) if shaking is not None and shaking.active else 0.0
    V = _cell_potential(cell, grid, schedule, shaking, phase)
    psi = run_segments(asarray(psi, dtype = complex), V, schedule, grid)
    grid.check_boundary(psi)
    return psi


#### effective unitaries ####

class EffectiveUnitary(object):
    """Map of a pulse between the localized levels, in trap order."""
    def __init__(self, matrix, N, leakage, energies = None, name = "pulse"):
        self.matrix = asarray(matrix, dtype = complex)
        self.N = N
        self.leakage = float(leakage)
        self.energies = energies
        self.name = name
    def coin_matrix(self):
        """Reordered to the coin basis: '+' (right trap) first."""
        p = concatenate([arange(self.N, 2 * self.N), arange(self.N)])
        return self.matrix[p][:, p]
    def pair_matrix(self):
        return self.matrix
    def block(self, level = 0):
        """Doublet of one level in trap order."""
        i = [level, self.N + level]
        return self.matrix[i][:, i]
    def coin_block(self, level = 0):
        i = [self.N + level, level]
        return self.matrix[i][:, i]
    def as_coin(self, order = "coin"):
        m = self.coin_matrix() if order == "coin" else self.pair_matrix()
        return multilevel_coin(m, self.name)
    def unitarity_error(self):
        return unitarity_error(self.matrix)
    def __str__(self):
        return "EffectiveUnitary({0}, N={1}, leakage={2:.3g})".format(self.name, self.N, self.leakage)

def extract_effective_unitary(cell, schedule, N, grid = None, shaking = None, pulse_index = 0,
                              max_leakage = None, basis = None):
    """Propagate every localized level through the pulse and project the
    results back on the localized levels."""
    max_leakage = params.pulses.max_leakage if max_leakage is None else max_leakage
    if grid is None:
        grid = cell.make_grid(schedule.a_max)
    if basis is None:
        basis = localized_basis(cell, N, grid, schedule.a_max)
    out = run_pulse(basis.states, cell, schedule, grid, shaking, pulse_index)
    M = basis.overlaps(out)
    leakage = float((1 - (np_abs(M)**2).sum(axis = 0)).max())
    debug_print(params.pulses, schedule, "leakage", leakage)
    if leakage > max_leakage:
        raise NumericalGuardError("{0} leaks {1:.3g} of the population out of {2} levels".format(
            schedule.name, leakage, N))
    return EffectiveUnitary(M, N, leakage, basis.energies, schedule.name)


#### calibration ####

_targets = {"pi": pi, "pi/2": pi / 2}

def gate_fidelity(U, target):
    """|tr(T^+ U)|^2 / d^2, insensitive to a global phase."""
    U, T = asarray(U), asarray(target)
    return float(np_abs(trace(T.conj().T.dot(U)))**2 / U.shape[0]**2)

class CalibrationResult(object):
    def __init__(self, target, t_i, fidelity, leakage, times, theta):
        self.target = target
        self.t_i = t_i
        self.fidelity = fidelity
        self.leakage = leakage
        self.times = times
        self.theta = theta
    def schedule(self, schedule):
        return schedule.with_hold(self.t_i)
    def __str__(self):
        return "CalibrationResult({0}: t_i={1:.4f}, fidelity={2:.6f}, leakage={3:.3g})".format(
            self.target, self.t_i, self.fidelity, self.leakage)

def calibrate_hold_time(cell, schedule, target, grid = None, level = 0, N = None,
                        t_max = None, scan_step = None, target_fidelity = None):
    """Smallest hold time t_i <= t_max after which the pulse maps the
    level-th doublet to the tunneling coin of angle target ('pi',
    'pi/2' or a number) up to a global phase.

    Ramp-in and ramp-out do not depend on t_i: the ramp-in is run
    forward once, the ramp-out backward once, and the hold is stepped
    recording the doublet block after every time step."""
    pc = params.calibration
    t_max = pc.t_max if t_max is None else t_max
    scan_step = pc.scan_step if scan_step is None else scan_step
    target_fidelity = pc.target_fidelity if target_fidelity is None else target_fidelity
    theta_t = _targets[target] if target in _targets else float(target)
    N = level + 1 if N is None else N
    if grid is None:
        grid = cell.make_grid(schedule.a_max)
    ts = time.time()
    basis = localized_basis(cell, N, grid, schedule.a_max)
    phi = basis.states[[level, N + level]]
    V = _cell_potential(cell, grid, schedule)
    psi = propagate(phi, V, 0.0, schedule.t_r, grid)
    # ramp-out of a pulse with any hold time, run backward
    chi = propagate(phi, _cell_potential(cell, grid, schedule.with_hold(0.0)), schedule.t_r,
                    schedule.t_r, grid, backward = True)
    V_hold = cell.potential_on(grid, schedule.a_min)
    n_max = int(round(t_max / grid.dt))
    M = zeros((n_max + 1, 2, 2), dtype = complex)
    for n in range(n_max + 1):
        M[n] = chi.conj().dot(psi.T) * grid.dx
        if n < n_max:
            psi = split_step(psi, V_hold, grid.dt, grid)
    s, d = M[:, 0, 0] + M[:, 1, 0], M[:, 0, 0] - M[:, 1, 0]
    theta = unwrap(angle(s * d.conj()))
    h = sin(0.5 * (theta - theta_t))
    T = tunneling_coin(theta_t).matrix
    stride = max(1, int(round(scan_step / grid.dt)))
    coarse = list(range(0, n_max + 1, stride))
    if coarse[-1] != n_max:
        coarse.append(n_max)
    best = None
    for ia, ib in zip(coarse[:-1], coarse[1:]):
        if h[ia] * h[ib] > 0:
            continue
        n = bisect_index(lambda i: h[i], ia, ib)
        F = gate_fidelity(M[n], T)
        leakage = float((1 - (np_abs(M[n])**2).sum(axis = 0)).max())
        debug_print(pc, "root at t_i =", n * grid.dt, "fidelity", F, "leakage", leakage)
        if F >= target_fidelity:
            best = CalibrationResult(target, n * grid.dt, F, leakage, arange(n_max + 1) * grid.dt, theta)
            break
    debug_print(pc, "calibration done, time=%7.5f s" % (time.time() - ts))
    if best is None:
        raise NumericalGuardError("tunneling angle {0} not reached with fidelity {1} for t_i <= {2:g}".format(
            target, target_fidelity, t_max))
    return best


#### coin and shift parameters ####

def _check_unitary(U, tol):
    U = asarray(U, dtype = complex)
    if U.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix, got shape {0}".format(U.shape))
    err = unitarity_error(U)
    if err > tol:
        raise ValueError("matrix is not unitary (error {0:.3g})".format(err))
    return U

def fit_coin_params(U, tol = 1e-6, eps = 1e-12):
    """(p, delta_c) of a coin in the basis ('+', '-'); the global phase
    makes the ('+', '+') element real nonnegative."""
    U = _check_unitary(U, tol)
    ref = U[0, 0] if np_abs(U[0, 0]) > eps else U[1, 0]
    U = U * exp(-1j * angle(ref))
    p = float(min(np_abs(U[0, 0])**2, 1.0))
    delta_c = float(angle(U[1, 0])) if 1 - p > eps else 0.0
    return p, delta_c

def fit_shift_params(U, tol = 1e-6, eps = 1e-12):
    """(c, delta_o) of a shift on the pair (|k,+>, |k+1,->); the global
    phase makes the transfer element real nonnegative."""
    U = _check_unitary(U, tol)
    ref = U[1, 0] if np_abs(U[1, 0]) > eps else U[0, 0]
    U = U * exp(-1j * angle(ref))
    c = float(min(np_abs(U[1, 0])**2, 1.0))
    delta_o = float(angle(U[0, 0])) if 1 - c > eps else 0.0
    return c, delta_o


#### walk on a line of traps ####

def trap_populations(psi, bases):
    """(n_traps, N) array of |<phi_j^trap|psi>|^2."""
    return array([b.populations(psi)[:, 0] for b in bases])

def ground_state_population(psi, bases):
    return float(trap_populations(psi, bases)[:, 0].sum())

def walk_state_from_traps(initial, N = 1, level = 0, bounds = None):
    """Walker with amplitude initial[i] in level level of trap i."""
    sites = [i // 2 for i in initial]
    if bounds is not None:
        lo, hi = bounds
    else:
        lo, hi = min(sites), max(sites)
    amps = zeros((hi - lo + 1, 2 * N), dtype = complex)
    for i, a in initial.items():
        k, plus = i // 2, i % 2 == 1
        if not lo <= k <= hi:
            raise ValueError("trap {0} outside the line".format(i))
        amps[k - lo, level + (0 if plus else N)] += a
    amps /= sqrt((np_abs(amps)**2).sum())
    return WalkState1D(lo, amps, bounds)

def trap_distribution_from_walk(state):
    """Population of trap 2k ('-') and 2k+1 ('+') of every qubit k."""
    N = state.coin_dim // 2
    p = np_abs(state.amplitudes)**2
    out = zeros(2 * state.n_sites)
    out[1::2] = p[:, :N].sum(axis = 1)
    out[0::2] = p[:, N:].sum(axis = 1)
    return SiteDistribution(2 * state.offset, out)

def default_initial(n_traps):
    """Equal superposition of the two traps of the middle qubit."""
    q = (n_traps // 2 - 1) // 2
    return {2 * q: 1 / sqrt(2), 2 * q + 1: 1 / sqrt(2)}

class TrapLine(object):
    """n_traps traps resting a_max apart, centered on 0."""
    def __init__(self, n_traps = None, a_max = None, V0 = None, form = None, dx = None, margin = None, dt = None):
        self.n_traps = int(params.line.n_traps if n_traps is None else n_traps)
        if self.n_traps < 2 or self.n_traps % 2:
            raise ValueError("a line needs an even number of traps, got {0}".format(self.n_traps))
        self.a_max = float(params.pulses.a_max if a_max is None else a_max)
        self.V0 = float(params.solver.V0 if V0 is None else V0)
        self.form = form or params.solver.potential_form
        margin = params.solver.margin if margin is None else margin
        if margin < 5:
            print("WARNING: grid margin {0:g} is below 5, expect boundary trouble".format(margin))
        self.rest = (arange(self.n_traps) - 0.5 * (self.n_traps - 1)) * self.a_max
        self.grid = SimGrid.covering(self.rest[0], self.rest[-1], dx, margin, dt)
    @property
    def n_qubits(self):
        return self.n_traps // 2
    def pairs(self, kind):
        """Trap pairs moved by a coin or a shift pulse."""
        first = 0 if kind == "coin" else 1
        return [(i, i + 1) for i in range(first, self.n_traps - 1, 2)]
    def bases(self, N):
        return [single_trap_basis(c, N, self.grid, self.V0, self.form) for c in self.rest]
    def check_grid(self, N):
        """Levels of every trap, the grid edges must be free of them."""
        bases = self.bases(N)
        for b in bases:
            self.grid.check_boundary(b.states)
        return bases
    def positions(self, kind, a):
        x = self.rest.copy()
        for i, j in self.pairs(kind):
            m = 0.5 * (self.rest[i] + self.rest[j])
            x[i], x[j] = m - 0.5 * a, m + 0.5 * a
        return x
    def potential_at(self, kind, schedule, shaking = None, phase = 0.0):
        cache = {}
        def V(t):
            a = schedule.separation(t)
            if shaking is not None and shaking.active:
                a += shaking.offset(t, phase)
            if a not in cache:
                cache.clear()
                cache[a] = potential(self.grid.x, self.positions(kind, a), self.form, self.V0)
            return cache[a]
        return V
    def __str__(self):
        return "TrapLine({0} traps, a_max={1:g}, {2})".format(self.n_traps, self.a_max, self.grid)

class LineResult(object):
    """Trap populations (n_traps, N) after every step."""
    def __init__(self, line, populations, psi, coin_schedule, shift_schedule, wall_clock):
        self.line = line
        self.populations = populations
        self.psi = psi
        self.coin_schedule = coin_schedule
        self.shift_schedule = shift_schedule
        self.wall_clock = wall_clock
    @property
    def steps(self):
        return len(self.populations) - 1
    def trap_distribution(self, t):
        return SiteDistribution(0, self.populations[t].sum(axis = 1))
    def qubit_distribution(self, t):
        return qubit_distribution(self.trap_distribution(t))
    def ground_population(self, t):
        return float(self.populations[t][:, 0].sum())
    def records(self):
        return [(t, self.qubit_distribution(t)) for t in range(self.steps + 1)]
    def wavefunction(self):
        return WaveFunction(self.line.grid, self.psi)
    def __str__(self):
        return "LineResult({0}, {1} steps, ground population {2:.6f})".format(
            self.line, self.steps, self.ground_population(self.steps))

def run_walk_line(n_traps = None, steps = None, initial = None, level = None,
                  coin_schedule = None, shift_schedule = None, shaking = None,
                  n_levels = None, line = None):
    """Full simulation of a walk on a line of traps.  Every step is a
    coin pulse on all pairs (2k, 2k+1) followed by a shift pulse on all
    pairs (2k+1, 2k+2); the outermost traps idle during shifts."""
    ts = time.time()
    level = params.line.level if level is None else level
    steps = params.line.steps if steps is None else steps
    if steps < 0:
        raise ValueError("number of steps must be nonnegative, got {0}".format(steps))
    coin_schedule = coin_schedule or PulseSchedule.pi_half_pulse()
    shift_schedule = shift_schedule or PulseSchedule.pi_pulse()
    line = line or TrapLine(n_traps, coin_schedule.a_max)
    if coin_schedule.a_max != line.a_max or shift_schedule.a_max != line.a_max:
        raise ValueError("pulses must start and end at the resting distance {0:g}".format(line.a_max))
    n_levels = max(level + 1, 2) if n_levels is None else n_levels
    initial = default_initial(line.n_traps) if initial is None else initial
    if any(not 0 <= i < line.n_traps for i in initial):
        raise ValueError("initial traps {0} outside the line of {1}".format(sorted(initial), line.n_traps))
    grid = line.grid
    bases = line.check_grid(max(n_levels, level + 1))
    psi = zeros(grid.n_points, dtype = complex)
    for i, a in initial.items():
        psi += a * bases[i].states[level]
    psi /= sqrt(grid.norm(psi))
    grid.check_boundary(psi)
    populations = [trap_populations(psi, bases)]
    pulse = 0
    for t in range(1, steps + 1):
        for kind, schedule in (("coin", coin_schedule), ("shift", shift_schedule)):
            phase = shaking.phase(pulse) if shaking is not None and shaking.active else 0.0
            psi = run_segments(psi, line.potential_at(kind, schedule, shaking, phase), schedule, grid)
            grid.check_boundary(psi)
            pulse += 1
        populations.append(trap_populations(psi, bases))
        debug_print(params.pulses, "step", t, "populations", populations[-1].sum(axis = 1))
    return LineResult(line, populations, psi, coin_schedule, shift_schedule, time.time() - ts)


if __name__ == "__main__":
    cell = TrapCell()
    sched = PulseSchedule.pi_half_pulse()
    grid = cell.make_grid()
    print(grid)
    cal = calibrate_hold_time(cell, sched, "pi/2", grid)
    print(cal)
    U = extract_effective_unitary(cell, cal.schedule(sched), 1, grid)
    print(U)
    print(fit_coin_params(nearest_unitary(U.coin_matrix())))
