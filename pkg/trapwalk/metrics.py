"""Probability distributions of the walker and their statistics."""

from __future__ import print_function

from numpy import array, arange, zeros, log, polyfit, floor, sqrt
from numpy import abs as np_abs, add, nonzero

from . import params


class SiteDistribution(object):
    """Probabilities of consecutive integer sites, probs[i] belongs to
    site offset + i."""
    def __init__(self, offset, probs):
        self.offset = int(offset)
        self.probs = array(probs, dtype = float)
    @classmethod
    def from_dict(cls, d):
        if not d:
            return cls(0, [])
        lo, hi = min(d), max(d)
        probs = zeros(hi - lo + 1)
        for k, p in d.items():
            probs[k - lo] += p
        return cls(lo, probs)
    def sites(self):
        return arange(self.offset, self.offset + len(self.probs))
    def total(self):
        return self.probs.sum()
    def __getitem__(self, k):
        i = k - self.offset
        if 0 <= i < len(self.probs):
            return self.probs[i]
        return 0.0
    def as_dict(self, eps = None):
        if eps is None:
            eps = params.metrics.zero_eps
        return dict((int(k), float(p)) for k, p in zip(self.sites(), self.probs) if p > eps)
    def mirrored(self):
        """k -> -k"""
        return SiteDistribution(-(self.offset + len(self.probs) - 1), self.probs[::-1])
    def mean(self):
        return (self.sites() * self.probs).sum()
    def variance(self, origin = 0):
        return variance(self, origin)
    def plot(self, **kwargs):
        from .plotting import plot_distribution
        return plot_distribution(self, **kwargs)
    def summary(self):
        print("sites {0}..{1}, total {2:.12f}, mean {3:g}, variance {4:g}".format(
            self.offset, self.offset + len(self.probs) - 1, self.total(), self.mean(), self.variance()))
    def __str__(self):
        return "SiteDistribution({0})".format(self.as_dict())

class LatticeDistribution(object):
    """Probabilities on a window of the square lattice."""
    def __init__(self, k_offset, l_offset, probs):
        self.k_offset = int(k_offset)
        self.l_offset = int(l_offset)
        self.probs = array(probs, dtype = float)
    def total(self):
        return self.probs.sum()
    def __getitem__(self, site):
        i, j = site[0] - self.k_offset, site[1] - self.l_offset
        nk, nl = self.probs.shape
        if 0 <= i < nk and 0 <= j < nl:
            return self.probs[i, j]
        return 0.0
    def marginal_k(self):
        return SiteDistribution(self.k_offset, self.probs.sum(axis = 1))
    def marginal_l(self):
        return SiteDistribution(self.l_offset, self.probs.sum(axis = 0))
    def items(self, eps = None):
        """(k, l, p) for every site with p > eps"""
        if eps is None:
            eps = params.metrics.zero_eps
        ii, jj = nonzero(self.probs > eps)
        return [(int(i) + self.k_offset, int(j) + self.l_offset, float(self.probs[i, j])) for i, j in zip(ii, jj)]
    def __str__(self):
        nk, nl = self.probs.shape
        return "LatticeDistribution({0}x{1} at ({2},{3}))".format(nk, nl, self.k_offset, self.l_offset)


def position_distribution(state):
    """Trace out the coin of a WalkState1D or WalkState2D."""
    p = (np_abs(state.amplitudes)**2).sum(axis = -1)
    if p.ndim == 1:
        return SiteDistribution(state.offset, p)
    return LatticeDistribution(state.k_offset, state.l_offset, p)

def qubit_distribution(dist):
    """Sum the trap pairs (2k, 2k+1) of a per-trap distribution."""
    traps = dist.sites()
    q = traps // 2
    lo = int(q.min()) if len(q) else 0
    probs = zeros(int(q.max()) - lo + 1 if len(q) else 0)
    add.at(probs, q - lo, dist.probs)
    return SiteDistribution(lo, probs)

def variance(dist, origin = 0):
    x = dist.sites() - origin
    return float((dist.probs * x**2).sum())

def scaling_exponent(series):
    """Least squares slope of log(variance) against log(t) for a
    sequence of (t, variance) pairs."""
    series = [(t, v) for t, v in series]
    if len(series) < params.metrics.min_fit_points:
        raise ValueError("scaling exponent needs at least {0} points, got {1}".format(
            params.metrics.min_fit_points, len(series)))
    t = array([float(s[0]) for s in series])
    v = array([float(s[1]) for s in series])
    if (t <= 0).any() or (v <= 0).any():
        raise ValueError("scaling exponent needs positive times and variances")
    slope, _ = polyfit(log(t), log(v), 1)
    return float(slope)

def uniform_reference(t, origin = 0):
    """Uniform distribution over |n - origin| <= floor(t/sqrt(2))."""
    if t <= 0:
        raise ValueError("uniform reference needs t > 0, got {0}".format(t))
    w = int(floor(t / sqrt(2.0)))
    return SiteDistribution(origin - w, [1.0 / (2*w + 1)] * (2*w + 1))

def total_variational_distance(dist, t, origin = 0):
    """nu(t) = sum_n |P(n, t) - P_u(n, t)| for a per-qubit distribution."""
    return l1_distance(dist, uniform_reference(t, origin))

def l1_distance(d1, d2):
    lo = min(d1.offset, d2.offset)
    hi = max(d1.offset + len(d1.probs), d2.offset + len(d2.probs))
    a = zeros(hi - lo)
    b = zeros(hi - lo)
    a[d1.offset - lo:d1.offset - lo + len(d1.probs)] = d1.probs
    b[d2.offset - lo:d2.offset - lo + len(d2.probs)] = d2.probs
    return float(np_abs(a - b).sum())

def tvd(d1, d2):
    """Total variation distance, half the L1 distance."""
    return 0.5 * l1_distance(d1, d2)

def classical_distribution(t):
    """Unbiased classical walk after t steps (binomial on sites of the
    parity of t)."""
    from scipy.stats import binom
    k = arange(t + 1)
    probs = zeros(2*t + 1)
    probs[2*k] = binom.pmf(k, t, 0.5)
    return SiteDistribution(-t, probs)

def variance_series(records, origin = 0):
    return [(t, variance(d, origin)) for t, d in records]
