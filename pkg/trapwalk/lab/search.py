"""Spatial search on a square grid with the flip-flop walk: coin C0
everywhere, C1 = -I at the marked vertex, reflecting edges."""

from __future__ import print_function

import time

from numpy import abs as np_abs, array, argmax, log2, sqrt

from .. import params
from ..walk import SearchSetup, build_search_initial, search_step
from ..metrics import position_distribution
from ..utils import debug_print


def first_local_maximum(series, threshold = None):
    """(t, value) of the first interior local maximum reaching threshold,
    None if there is none."""
    for t in range(1, len(series) - 1):
        if threshold is not None and series[t] < threshold:
            continue
        if series[t - 1] < series[t] >= series[t + 1]:
            return t, series[t]
    return None

class SearchResult(object):
    def __init__(self, setup, probabilities, deviations, distributions, wall_clock):
        self.setup = setup
        self.probabilities = array(probabilities)   # P(marked, t)
        self.deviations = array(deviations)         # max_site |P(site, t) - 1/N|
        self.distributions = distributions          # [(t, LatticeDistribution)]
        self.wall_clock = wall_clock
    @property
    def peak(self):
        """first maximum of P(marked, t) above peak_threshold / N, small
        early bumps are skipped"""
        if self.setup.marked is None:
            return None
        return first_local_maximum(self.probabilities, params.search.peak_threshold / self.setup.N)
    @property
    def maximum(self):
        t = int(argmax(self.probabilities))
        return t, float(self.probabilities[t])
    def amplification(self):
        """max_t P(marked, t) in units of 1/N"""
        return self.maximum[1] * self.setup.N
    def summary(self):
        print(self.setup)
        if self.setup.marked is None:
            print("max deviation from 1/N: {0:.3g}".format(self.deviations.max()))
            return
        print("first peak", self.peak, "maximum", self.maximum, "amplification {0:.3f}".format(self.amplification()))
    def plot(self, **kwargs):
        from ..plotting import plot_search
        return plot_search(self, **kwargs)

def step_bound(N):
    """4 sqrt(N) log2(N)^2, the step budget of the search."""
    return int(4 * sqrt(N) * log2(N)**2)

def search_experiment(side = None, marked = None, max_steps = None, record_every = None):
    """Run the search walk from the uniform state for max_steps steps.
    marked None runs C0 everywhere."""
    ts = time.time()
    side = params.search.side if side is None else side
    max_steps = params.search.max_steps if max_steps is None else max_steps
    if max_steps < 0:
        raise ValueError("number of steps must be nonnegative, got {0}".format(max_steps))
    setup = SearchSetup(side, marked)
    state = build_search_initial(setup)
    uniform = 1.0 / setup.N
    probs, devs, dists = [], [], []
    for t in range(max_steps + 1):
        if t > 0:
            state = search_step(state, setup)
        p = (np_abs(state.amplitudes)**2).sum(axis = 2)
        if marked is not None:
            probs.append(float(p[setup.marked[0] - 1, setup.marked[1] - 1]))
        else:
            probs.append(float(p[0, 0]))
        devs.append(float(np_abs(p - uniform).max()))
        if record_every and (t % record_every == 0 or t == max_steps):
            dists.append((t, position_distribution(state)))
        debug_print(params.search, "step", t, "P", probs[-1])
    state.check_norm()
    return SearchResult(setup, probs, devs, dists, time.time() - ts)


if __name__ == "__main__":
    for m in [(4, 4), (1, 1)]:
        search_experiment(8, m, 200).summary()
    search_experiment(6, None, 50).summary()
