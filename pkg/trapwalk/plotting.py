"""Plots of walk results (matplotlib)."""

from __future__ import print_function

import matplotlib.pyplot as plt
from numpy import arange


def plot_distribution(dist, ax = None, style = "bar", label = None, **kwargs):
    """Bar or line plot of a SiteDistribution; LatticeDistribution as an
    image."""
    ax = ax or plt.gca()
    if hasattr(dist, "marginal_k"):
        nk, nl = dist.probs.shape
        extent = (dist.l_offset - 0.5, dist.l_offset + nl - 0.5, dist.k_offset + nk - 0.5, dist.k_offset - 0.5)
        im = ax.imshow(dist.probs, extent = extent, **kwargs)
        ax.set_xlabel("l")
        ax.set_ylabel("k")
        return im
    if style == "bar":
        h = ax.bar(dist.sites(), dist.probs, label = label, **kwargs)
    else:
        h = ax.plot(dist.sites(), dist.probs, style, label = label, **kwargs)
    ax.set_xlabel("site")
    ax.set_ylabel("probability")
    return h

def plot_variance(series, ax = None, loglog = True, label = None, **kwargs):
    """series of (t, variance)"""
    ax = ax or plt.gca()
    t = [s[0] for s in series if s[0] > 0]
    v = [s[1] for s in series if s[0] > 0]
    h = ax.loglog(t, v, "o-", label = label, **kwargs) if loglog else ax.plot(t, v, "o-", label = label, **kwargs)
    ax.set_xlabel("t")
    ax.set_ylabel("variance")
    return h

def plot_sweep(result, metric = "nu", ax = None, **kwargs):
    ax = ax or plt.gca()
    pts = [(v, m) for v, m in zip(result.values, result.metrics[metric]) if m is not None]
    h = ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", **kwargs)
    ax.set_xlabel(result.control)
    ax.set_ylabel(metric)
    return h

def plot_search(result, ax = None, **kwargs):
    ax = ax or plt.gca()
    h = ax.plot(arange(len(result.probabilities)), result.probabilities, **kwargs)
    ax.axhline(1.0 / result.setup.N, color = "k", linestyle = ":")
    ax.set_xlabel("t")
    ax.set_ylabel("P(marked)")
    return h
