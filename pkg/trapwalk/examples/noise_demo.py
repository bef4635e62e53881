#!=====================================================
#! Temperature, shaking and decoherence of the walk
#!=====================================================

from __future__ import print_function

from pylab import figure, show

from trapwalk import params
from trapwalk.lab import *

if __name__ == "__main__":
    #!-------------------------------
    #! temperature scale
    #!-------------------------------
    for P0 in [0.99, 0.9, 0.5]:
        spec = ThermalSpec(ground_population = P0)
        print(spec, "T = %.3g uK" % (1e6 * temperature_mapping(P0)), "<n> =", mean_quanta(P0))
    for rate in params.lab.decoherence_rates:
        print(decoherence_budget(scattering_rate = rate))

    #!-------------------------------
    #! decoherence by measurements
    #!-------------------------------
    res = decoherence_sweep([0.0, 0.02, 0.1, 0.5, 1.0], steps = 30, trajectories = 400)
    res.summary()
    figure()
    res.plot("variance")

    #!-------------------------------
    #! shaking of the trap separation
    #!-------------------------------
    res = shaking_sweep([0.0, 0.1, 0.3], steps = 8)
    res.summary()
    figure()
    res.plot("nu")
    show()
