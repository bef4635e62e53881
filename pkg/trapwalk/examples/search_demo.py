#!=========================================
#! Spatial search on the square lattice
#!=========================================

from __future__ import print_function

from pylab import figure, title, legend, show

from trapwalk.lab import search_experiment

if __name__ == "__main__":
    side = 8
    figure()
    title("search on a {0}x{0} grid".format(side))
    for marked in [(4, 4), (1, 1)]:
        res = search_experiment(side, marked, 200, record_every = 0)
        res.summary()
        res.plot(label = "marked {0}".format(marked))
    legend()
    #! no marked vertex: the uniform state is stationary
    search_experiment(side, None, 50, record_every = 0).summary()
    show()
