"""Thermal occupation of the vibrational levels and the conversions
between ground-state population, temperature and mean quanta.

Energies are in units of hbar*omega_x, beta in 1/(hbar*omega_x)."""

from __future__ import print_function

from numpy import arange, asarray, exp, log, cumsum, searchsorted, inf, isnan, zeros
from scipy.constants import hbar, k as k_B, atomic_mass

from .. import params
from ..metrics import SiteDistribution
from ..utils import NumericalGuardError, findinv_pinf
from ..solver import GaussianTrap


species_mass = {
    "Rb87": 86.909180527 * atomic_mass,
    "Rb85": 84.911789738 * atomic_mass,
    "Cs133": 132.905451961 * atomic_mass,
    "K40": 39.963998166 * atomic_mass,
    }

def harmonic_levels(n):
    return arange(n) + 0.5

def _boltzmann(beta, energies):
    e = asarray(energies, dtype = float)
    if beta == inf:
        w = zeros(len(e))
        w[0] = 1.0
        return w
    w = exp(-beta * (e - e[0]))
    return w / w.sum()

class ThermalSpec(object):
    """Boltzmann occupation of a spectrum given by beta or by the
    ground-state population P0.  Without energies the harmonic ladder
    of n_levels levels is used.  bound_levels (default: a trap of depth
    params.solver.V0, inf for an unbounded well) limits the levels a
    thermal state may occupy."""
    def __init__(self, beta = None, ground_population = None, energies = None, n_levels = 200, truncation = None,
                 bound_levels = None):
        if beta is not None and ground_population is not None:
            raise ValueError("give beta or the ground-state population, not both")
        self.truncation = params.lab.thermal_truncation if truncation is None else float(truncation)
        if not 0 < self.truncation <= 1:
            raise ValueError("truncation must lie in (0, 1], got {0}".format(self.truncation))
        self.harmonic = energies is None
        self.energies = harmonic_levels(n_levels) if energies is None else asarray(energies, dtype = float)
        if ground_population is not None:
            P0 = float(ground_population)
            if not 0 < P0 <= 1:
                raise ValueError("ground-state population must lie in (0, 1], got {0}".format(P0))
            beta = _beta_from_ground_population(P0, self.energies, self.harmonic)
        elif beta is None:
            beta = inf
        if beta < 0:
            raise ValueError("beta must be nonnegative, got {0}".format(beta))
        self.beta = float(beta)
        if bound_levels is None:
            bound_levels = GaussianTrap(0.0).bound_levels()
        self.bound_levels = bound_levels
    def weights(self):
        return _boltzmann(self.beta, self.energies)
    def ground_population(self):
        return float(self.weights()[0])
    def retained(self):
        """Number of levels holding the truncation weight.  Raises
        NumericalGuardError if that takes more levels than the trap binds."""
        c = cumsum(self.weights())
        n = min(int(searchsorted(c, self.truncation - 1e-15)) + 1, len(self.energies))
        cap = int(min(self.bound_levels, len(self.energies)))
        if n > cap:
            raise NumericalGuardError("truncation weight {0:g} needs {1} levels, the trap binds {2} (weight {3:.6g})"
                                      .format(self.truncation, n, cap, c[cap - 1] if cap else 0.0))
        return n
    def retained_weights(self):
        w = self.weights()[:self.retained()]
        return w / w.sum()
    def __str__(self):
        return "ThermalSpec(beta={0:g}, P0={1:.6f}, retained={2})".format(
            self.beta, self.ground_population(), self.retained())

def _beta_from_ground_population(P0, energies, harmonic):
    if P0 == 1:
        return inf
    if harmonic:
        return -log(1 - P0)
    beta = findinv_pinf(lambda b: _boltzmann(b, energies)[0], 0.0, P0)
    if isnan(beta):
        raise ValueError("ground-state population {0} is below the infinite temperature value".format(P0))
    return beta

def thermal_weights(spec):
    return spec.retained_weights()

def thermal_average(distributions, spec):
    """Boltzmann-weighted mixture of the per-level distributions
    (SiteDistribution objects, level 0 first)."""
    w = spec.retained_weights() if isinstance(spec, ThermalSpec) else asarray(spec, dtype = float)
    if len(distributions) < len(w):
        raise NumericalGuardError("{0} levels retained but only {1} distributions supplied".format(
            len(w), len(distributions)))
    lo = min(d.offset for d in distributions[:len(w)])
    hi = max(d.offset + len(d.probs) for d in distributions[:len(w)])
    out = zeros(hi - lo)
    for wj, d in zip(w, distributions):
        out[d.offset - lo:d.offset - lo + len(d.probs)] += wj * d.probs
    return SiteDistribution(lo, out)

def mean_quanta(ground_population):
    """<n> = (1 - P0)/P0 of a harmonic thermal state."""
    P0 = float(ground_population)
    if not 0 < P0 <= 1:
        raise ValueError("ground-state population must lie in (0, 1], got {0}".format(P0))
    return (1 - P0) / P0

def temperature_mapping(ground_population, omega_x = None, species = None):
    """Temperature in kelvin of a harmonic trap of angular frequency
    omega_x (1/s) with ground-state population P0."""
    omega_x = params.lab.omega_x_SI if omega_x is None else float(omega_x)
    species = species or params.lab.species
    if species not in species_mass:
        raise ValueError("unknown species {0!r}".format(species))
    P0 = float(ground_population)
    if not 0 < P0 <= 1:
        raise ValueError("ground-state population must lie in (0, 1], got {0}".format(P0))
    if P0 == 1:
        return 0.0
    return hbar * omega_x / (k_B * -log(1 - P0))

def ground_population_from_temperature(T, omega_x = None):
    omega_x = params.lab.omega_x_SI if omega_x is None else float(omega_x)
    if T < 0:
        raise ValueError("temperature must be nonnegative, got {0}".format(T))
    if T == 0:
        return 1.0
    return 1 - exp(-hbar * omega_x / (k_B * T))

class DecoherenceBudget(object):
    def __init__(self, step_duration, rate, steps):
        self.step_duration = step_duration
        self.rate = rate
        self.steps = steps
        self.p = rate * step_duration
        self.tp = steps * self.p
    def __str__(self):
        return "DecoherenceBudget(step {0:g} s, rate {1:g}/s: p={2:g}, tp={3:g})".format(
            self.step_duration, self.rate, self.p, self.tp)

def decoherence_budget(omega_x = None, step_time_factor = None, scattering_rate = 0.0, steps = None):
    """Decoherence probability per step p = rate * step duration, the
    step lasting step_time_factor/omega_x seconds."""
    omega_x = params.lab.omega_x_SI if omega_x is None else float(omega_x)
    if step_time_factor is None:
        step_duration = params.lab.step_duration
    else:
        step_duration = float(step_time_factor) / omega_x
    steps = params.lab.sweep_steps if steps is None else steps
    if scattering_rate < 0:
        raise ValueError("scattering rate must be nonnegative, got {0}".format(scattering_rate))
    return DecoherenceBudget(step_duration, float(scattering_rate), int(steps))


if __name__ == "__main__":
    for P0 in [0.5, 0.25]:
        print("P0 =", P0, "<n> =", mean_quanta(P0), "T = %.3g uK" % (1e6 * temperature_mapping(P0)))
    for rate in params.lab.decoherence_rates:
        print(decoherence_budget(scattering_rate = rate))
