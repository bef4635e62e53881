"""Decoherence of the walk by random projective measurements.

Every trajectory is a pure state.  After each step, with probability p,
the coin, the position or both are measured: an outcome is drawn from
the Born rule and the state collapses onto it.  The ensemble average of
the trajectories' position distributions is the decohered distribution.
Trajectory m draws its random numbers from job_rng(seed, m) only."""

from __future__ import print_function

from numpy import zeros, sqrt, maximum, nonzero, array
from numpy import abs as np_abs

from . import params
from .metrics import SiteDistribution, variance
from .walk import WalkState1D, walk_step_1d
from .utils import job_rng, get_parmap, debug_print

class DecoherenceModel(object):
    targets = ("coin", "position", "both")
    def __init__(self, p, target = None, trajectories = None, seed = None):
        if not 0 <= p <= 1:
            raise ValueError("decoherence probability must lie in [0, 1], got {0}".format(p))
        target = target or params.decoherence.target
        if target not in self.targets:
            raise ValueError("decoherence target must be one of {0}, got {1!r}".format(self.targets, target))
        trajectories = params.decoherence.trajectories if trajectories is None else int(trajectories)
        if trajectories < 1:
            raise ValueError("need at least one trajectory, got {0}".format(trajectories))
        self.p = float(p)
        self.target = target
        self.trajectories = trajectories
        self.seed = params.decoherence.seed if seed is None else int(seed)
    def __str__(self):
        return "DecoherenceModel(p={0:g}, target={1}, M={2}, seed={3})".format(
            self.p, self.target, self.trajectories, self.seed)


def _trimmed(state):
    """Drop empty sites at the edges of an infinite-line window."""
    if state.bounds is not None:
        return state
    occupied = nonzero((np_abs(state.amplitudes)**2).sum(axis = 1) > 0)[0]
    if len(occupied) == 0:
        return state
    i0, i1 = occupied[0], occupied[-1] + 1
    return WalkState1D(state.offset + i0, state.amplitudes[i0:i1])

def measure(state, target, rng):
    """Projective measurement of the coin side, the site or both."""
    amps = state.amplitudes
    n, d = amps.shape
    h = d // 2
    w = np_abs(amps)**2
    new = zeros(amps.shape, dtype = complex)
    if target == "coin":
        pw = array([w[:, :h].sum(), w[:, h:].sum()])
        side = rng.choice(2, p = pw / pw.sum())
        sl = slice(0, h) if side == 0 else slice(h, d)
        new[:, sl] = amps[:, sl]
    elif target == "position":
        pw = w.sum(axis = 1)
        i = rng.choice(n, p = pw / pw.sum())
        new[i] = amps[i]
    elif target == "both":
        pw = array([w[:, :h].sum(axis = 1), w[:, h:].sum(axis = 1)]).T.ravel()
        j = rng.choice(2*n, p = pw / pw.sum())
        i, side = divmod(j, 2)
        sl = slice(0, h) if side == 0 else slice(h, d)
        new[i, sl] = amps[i, sl]
    else:
        raise ValueError("unknown measurement target {0!r}".format(target))
    new /= sqrt((np_abs(new)**2).sum())
    return _trimmed(WalkState1D(state.offset, new, state.bounds))

def _run_trajectories(job):
    """Accumulate position statistics of the trajectories in job."""
    (state, p, target, coin, shift, shift_params, steps, record_times,
     seed, indices, lo, width, origin) = job
    nrec = len(record_times)
    sum_p = zeros((nrec, width))
    sum_p2 = zeros((nrec, width))
    variances = zeros((len(indices), nrec))
    for row, m in enumerate(indices):
        rng = job_rng(seed, m)
        s = state
        r = 0
        for t in range(steps + 1):
            if t > 0:
                s = walk_step_1d(s, coin, shift, shift_params)
                if p > 0 and rng.random() < p:
                    s = measure(s, target, rng)
            if r < nrec and record_times[r] == t:
                probs = (np_abs(s.amplitudes)**2).sum(axis = 1)
                i0 = s.offset - lo
                sum_p[r, i0:i0 + len(probs)] += probs
                sum_p2[r, i0:i0 + len(probs)] += probs**2
                variances[row, r] = variance(SiteDistribution(s.offset, probs), origin)
                r += 1
    return sum_p, sum_p2, variances

class EnsembleResult(object):
    """Trajectory averages at the recorded times."""
    def __init__(self, model, times, offset, mean, stderr, variances):
        self.model = model
        self.times = list(times)
        self.offset = offset
        self.mean = mean            # (n_records, n_sites)
        self.stderr = stderr        # standard error of mean
        self.variances = variances  # (M, n_records) per trajectory
    def distribution(self, i = -1):
        return SiteDistribution(self.offset, self.mean[i])
    def distributions(self):
        return [(t, self.distribution(i)) for i, t in enumerate(self.times)]
    def variance(self, i = -1):
        """Variance of the averaged distribution and its standard error."""
        v = self.variances[:, i]
        m = len(v)
        se = v.std(ddof = 1) / sqrt(m) if m > 1 else 0.0
        return float(v.mean()), float(se)
    def variance_series(self):
        return [(t, self.variance(i)[0]) for i, t in enumerate(self.times)]
    def summary(self):
        v, se = self.variance()
        print("{0}: t={1}, variance {2:g} +- {3:g}".format(self.model, self.times[-1], v, se))

def decohere_evolve(state, model, coin, shift = "standard", steps = 1, shift_params = None,
                    record_every = None, origin = None, chunk = 250):
    """Trajectory Monte Carlo of a decohered walk on the line."""
    if not isinstance(state, WalkState1D):
        raise ValueError("decoherence is implemented for walks on the line")
    if steps < 0:
        raise ValueError("number of steps must be nonnegative, got {0}".format(steps))
    if record_every is None:
        record_times = [steps]
    else:
        record_times = sorted(set(list(range(0, steps + 1, record_every)) + [steps]))
    if origin is None:
        origin = state.offset if state.n_sites == 1 else 0
    if state.bounds is not None:
        lo, width = state.bounds[0], state.n_sites
    else:
        lo, width = state.offset - steps, state.n_sites + 2*steps
    M = model.trajectories
    if model.p == 0:
        # no randomness, every trajectory is the unitary walk
        groups = [[0]]
    else:
        groups = [list(range(i, min(i + chunk, M))) for i in range(0, M, chunk)]
    jobs = [(state, model.p, model.target, coin, shift, shift_params, steps,
             record_times, model.seed, g, lo, width, origin) for g in groups]
    results = get_parmap()(_run_trajectories, jobs)
    sum_p = sum(r[0] for r in results)
    sum_p2 = sum(r[1] for r in results)
    variances = array([v for r in results for v in r[2]])
    if model.p == 0:
        sum_p, sum_p2 = sum_p * M, sum_p2 * M
        variances = variances.repeat(M, axis = 0)
    mean = sum_p / M
    var = maximum(sum_p2 / M - mean**2, 0.0)
    stderr = sqrt(var / max(M - 1, 1))
    if model.p == 0:
        stderr[:] = 0.0
    debug_print(params.decoherence, model, "done")
    return EnsembleResult(model, record_times, lo, mean, stderr, variances)
