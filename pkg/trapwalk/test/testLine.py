import unittest
import time

from numpy import pi

from trapwalk import *
from trapwalk.lab import cell_reduce_and_walk
from trapwalk.metrics import tvd
from trapwalk.pulses import walk_state_from_traps, default_initial

class TestLine(unittest.TestCase):
    """Full integration of a 14-trap line against the cell reduction
    and the ideal tunneling walk."""
    n_traps = 14
    steps = 5

    @classmethod
    def setUpClass(cls):
        ts = time.time()
        cls.cell = TrapCell()
        cls.grid = cls.cell.make_grid()
        coin, shift = PulseSchedule.pi_half_pulse(), PulseSchedule.pi_pulse()
        cls.coin = calibrate_hold_time(cls.cell, coin, "pi/2", cls.grid).schedule(coin)
        cls.shift = calibrate_hold_time(cls.cell, shift, "pi", cls.grid).schedule(shift)
        cls.line = run_walk_line(cls.n_traps, cls.steps, coin_schedule = cls.coin, shift_schedule = cls.shift,
                                 n_levels = 2)
        cls.cells = cell_reduce_and_walk(cls.coin, cls.shift, 2, cls.steps, n_traps = cls.n_traps,
                                         cell = cls.cell, grid = cls.grid)
        print(cls.line)
        print(cls.cells)
        print('line and cells done,   time=%7.5f s' % (time.time() - ts))

    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testCellReduction(self):
        for t in range(self.steps + 1):
            d = tvd(self.line.qubit_distribution(t), self.cells.records[t][1])
            self.assertTrue(d <= 0.05, "TVD {0} at step {1}".format(d, t))
        d = tvd(self.line.trap_distribution(self.steps), self.cells.trap_distribution())
        self.assertTrue(d <= 0.05, "trap TVD {0}".format(d))

    def testIdealWalk(self):
        # the first three steps stay clear of the idle boundary traps
        state = walk_state_from_traps(default_initial(self.n_traps), 1, 0, (0, self.n_traps // 2 - 1))
        _, ideal = evolve_1d(state, 3, tunneling_coin(pi / 2), CoinOp(tunneling_coin(pi).matrix))
        for t in range(4):
            d = tvd(self.line.qubit_distribution(t), ideal[t][1])
            self.assertTrue(d <= 0.05, "TVD {0} at step {1}".format(d, t))

    def testPopulations(self):
        for t in range(self.steps + 1):
            total = self.line.populations[t].sum()
            self.assertTrue(0.98 <= total <= 1 + 1e-9, "population {0} at step {1}".format(total, t))
        self.assertTrue(self.line.ground_population(self.steps) > 0.98)
        self.assertAlmostEqual(self.line.wavefunction().norm(), 1.0, places = 10)

    def testGridTooSmall(self):
        line = TrapLine(2, 60.0, dx = 60.0 / 256, margin = 0.0)
        self.assertRaises(NumericalGuardError, line.check_grid, 1)

def suite():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestLine))
    return suite

if __name__ == "__main__":
    runner = unittest.TextTestRunner(verbosity = 2)
    runner.run(suite())
