import unittest
import time

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from trapwalk import *
from trapwalk.lab import search_experiment, decoherence_sweep
from trapwalk.plotting import plot_distribution, plot_variance

class TestPlot(unittest.TestCase):
    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        plt.close("all")
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testDistributions(self):
        _, records = evolve_1d(WalkState1D.localized(0, "sym"), 20, hadamard_coin())
        plt.figure()
        records[-1][1].plot()
        plot_distribution(records[-1][1], style = "k-")
        plot_variance([(t, variance(d)) for t, d in records])
        _, records = evolve_2d(WalkState2D.localized(), 5, coin_entangled_2d())
        plt.figure()
        plot_distribution(records[-1][1])
        self.assertTrue(len(plt.gcf().axes) == 1)

    def testResults(self):
        plt.figure()
        search_experiment(4, (2, 2), 20, record_every = 0).plot()
        plt.figure()
        decoherence_sweep([0.0, 0.5, 1.0], steps = 8, trajectories = 10).plot("variance")
        self.assertTrue(len(plt.gca().lines) == 1)

def suite():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestPlot))
    return suite

if __name__ == "__main__":
    runner = unittest.TextTestRunner(verbosity = 2)
    runner.run(suite())
