#!==============================================
#! Coined walks on the line and their spreading
#!==============================================

from __future__ import print_function

import time

from pylab import figure, title, legend, show

from trapwalk import *
from trapwalk.metrics import variance_series, scaling_exponent, classical_distribution
from trapwalk.plotting import plot_variance

if __name__ == "__main__":
    steps = 50

    #!---------------------------------------------
    #! Hadamard walk against the classical walk
    #!---------------------------------------------
    tic = time.time()
    state = WalkState1D.localized(0, "sym")
    state, records = evolve_1d(state, steps, hadamard_coin())
    d = records[-1][1]
    d.summary()
    figure()
    title("Hadamard walk, t = {0}".format(steps))
    d.plot(style = "b-", label = "quantum")
    classical_distribution(steps).plot(style = "r-", label = "classical")
    legend()
    print("exponent", scaling_exponent([s for s in variance_series(records) if s[0] >= 5]))

    #!---------------------------------------------
    #! standard, flip-flop and imperfect shifts
    #!---------------------------------------------
    figure()
    title("variance")
    for label, shift, sp in [("standard", "standard", None),
                             ("flip-flop", "flipflop", None),
                             ("c = 0.9", "general", GeneralShiftParams(0.9, 0.0))]:
        _, records = evolve_1d(WalkState1D.localized(0, "sym"), steps, hadamard_coin(), shift, sp)
        plot_variance(variance_series(records), label = label)
    legend()

    #!---------------------------------------------
    #! biased coins and the phase walk
    #!---------------------------------------------
    for p in [0.5, 0.8, 0.95]:
        _, records = evolve_1d(WalkState1D.localized(0, "sym"), steps, biased_coin(p))
        print("p =", p, "variance", records[-1][1].variance())
    _, records = evolve_1d(WalkState1D.localized(0, "sym"), steps, hadamard_coin(), phi = 0.3)
    print("phase walk variance", records[-1][1].variance())
    print("time===", time.time() - tic)
    show()
