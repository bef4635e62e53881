import unittest
import time
import os

from numpy import pi, exp, arange, argmin, allclose, array_equal, inf

from trapwalk import *
from trapwalk.lab import *
from trapwalk.lab.search import step_bound
from trapwalk.lab.cells import step_unitaries
from trapwalk.lab.thermal import harmonic_levels
from trapwalk.metrics import tvd
from trapwalk.pulses import walk_state_from_traps

long_jobs = os.environ.get("TRAPWALK_LONG_JOBS") == "1"

class TestThermal(unittest.TestCase):
    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testClosedForms(self):
        for P0 in [0.25, 0.5, 0.9]:
            spec = ThermalSpec(ground_population = P0)
            self.assertTrue(abs(spec.ground_population() - P0) < 1e-12)
            self.assertTrue(abs(1 - exp(-spec.beta) - P0) < 1e-12)
            n = (spec.weights() * arange(len(spec.energies))).sum()
            self.assertTrue(abs(n - mean_quanta(P0)) < 1e-12, "<n> = {0}".format(n))

    def testTemperatures(self):
        self.assertTrue(abs(temperature_mapping(0.5, 1e5, "Rb87") / 1.1e-6 - 1) < 0.02)
        self.assertTrue(abs(temperature_mapping(0.25, 1e5, "Rb87") / 2.7e-6 - 1) < 0.02)
        self.assertAlmostEqual(mean_quanta(0.5), 1.0, places = 14)
        self.assertAlmostEqual(mean_quanta(0.25), 3.0, places = 14)
        T = temperature_mapping(0.4)
        self.assertTrue(abs(ground_population_from_temperature(T) - 0.4) < 1e-12)
        self.assertEqual(temperature_mapping(1.0), 0.0)
        self.assertRaises(ValueError, temperature_mapping, 0.5, 1e5, "H1")

    def testZeroTemperature(self):
        spec = ThermalSpec(ground_population = 1.0)
        self.assertEqual(spec.beta, inf)
        self.assertEqual(spec.retained(), 1)
        self.assertEqual(list(spec.retained_weights()), [1.0])
        self.assertEqual(ThermalSpec().retained(), 1)

    def testTruncation(self):
        spec = ThermalSpec(ground_population = 0.5, truncation = 0.99)
        self.assertEqual(spec.retained(), 7)
        self.assertAlmostEqual(spec.retained_weights().sum(), 1.0, places = 14)
        self.assertTrue(allclose(thermal_weights(spec), spec.retained_weights()))
        spec = ThermalSpec(ground_population = 0.34, energies = harmonic_levels(3))
        self.assertEqual(spec.retained(), 3)

    def testBoundLevels(self):
        self.assertEqual(GaussianTrap(0.0, 2.0).bound_levels(), 3)
        self.assertTrue(GaussianTrap(0.0, 200.0).bound_levels() > 200)
        spec = ThermalSpec(ground_population = 0.5, truncation = 0.99, bound_levels = 7)
        self.assertEqual(spec.retained(), 7)
        spec = ThermalSpec(ground_population = 0.5, truncation = 0.99, bound_levels = 3)
        self.assertRaises(NumericalGuardError, spec.retained)
        self.assertRaises(NumericalGuardError, spec.retained_weights)
        spec = ThermalSpec(ground_population = 0.5, truncation = 0.99, bound_levels = inf)
        self.assertEqual(spec.retained(), 7)

    def testSpectrum(self):
        E = -200 + harmonic_levels(20)
        spec = ThermalSpec(ground_population = 0.5, energies = E)
        self.assertTrue(abs(spec.ground_population() - 0.5) < 1e-9)
        self.assertRaises(ValueError, ThermalSpec, None, 0.01, harmonic_levels(3))

    def testMixture(self):
        a = SiteDistribution(0, [1.0])
        b = SiteDistribution(2, [1.0])
        m = thermal_average([a, b], [0.5, 0.5])
        self.assertEqual(m.offset, 0)
        self.assertTrue(allclose(m.probs, [0.5, 0.0, 0.5]))
        self.assertRaises(NumericalGuardError, thermal_average, [a], [0.5, 0.5])

    def testErrors(self):
        self.assertRaises(ValueError, ThermalSpec, 1.0, 0.5)
        self.assertRaises(ValueError, ThermalSpec, None, 0.0)
        self.assertRaises(ValueError, ThermalSpec, -1.0)
        self.assertRaises(ValueError, mean_quanta, 1.5)

    def testBudget(self):
        low = decoherence_budget(scattering_rate = 0.1, steps = 17)
        high = decoherence_budget(scattering_rate = 1.0, steps = 17)
        self.assertAlmostEqual(low.p, 5e-4, places = 15)
        self.assertAlmostEqual(high.p, 5e-3, places = 15)
        self.assertAlmostEqual(low.tp, 0.0085, places = 15)
        self.assertAlmostEqual(high.tp, 0.085, places = 15)
        self.assertAlmostEqual(decoherence_budget(1e5, 500, 1.0).step_duration, 5e-3, places = 15)
        self.assertRaises(ValueError, decoherence_budget, None, None, -1.0)

class TestSearch(unittest.TestCase):
    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testStationary(self):
        for side in [4, 6]:
            res = search_experiment(side, None, 20, record_every = 0)
            self.assertTrue(res.deviations.max() <= 1e-10, "deviation {0}".format(res.deviations.max()))

    def testAmplification(self):
        N = 64
        for marked in [(4, 4), (1, 1)]:
            res = search_experiment(8, marked, 200, record_every = 0)
            res.summary()
            self.assertTrue(res.maximum[1] >= 10.0 / N, "{0}: {1}".format(marked, res.maximum))
            self.assertTrue(res.peak is not None)
            self.assertAlmostEqual(res.probabilities[0], 1.0 / N, places = 14)
        self.assertTrue(200 <= step_bound(N))

    def testPeaks(self):
        for marked, t_peak, p_peak in [((4, 4), 77, 0.3604), ((1, 1), 186, 0.3407)]:
            res = search_experiment(8, marked, 200, record_every = 0)
            t, p = res.maximum
            self.assertEqual(t, t_peak)
            self.assertAlmostEqual(p, p_peak, delta = 1e-3)
            t1, p1 = res.peak
            self.assertTrue(t1 > 2 and t1 <= t_peak, "first peak {0}".format(res.peak))
            self.assertTrue(p1 * 64 >= 10.0)

    def testRecords(self):
        res = search_experiment(4, (2, 2), 10, record_every = 5)
        self.assertEqual([t for t, _ in res.distributions], [0, 5, 10])
        self.assertAlmostEqual(res.distributions[-1][1].total(), 1.0, places = 12)

    def testLocalMaximum(self):
        self.assertEqual(first_local_maximum([0, 1, 2, 1, 3]), (2, 2))
        self.assertEqual(first_local_maximum([0, 1, 2, 3]), None)
        # the early bump is skipped
        self.assertEqual(first_local_maximum([0.0156, 0.0625, 0.01, 0.2, 0.05], 10.0 / 64), (3, 0.2))
        self.assertEqual(first_local_maximum([0, 1, 2, 1, 3], 2.5), None)
        self.assertRaises(ValueError, search_experiment, 4, (5, 5), 10)

class TestDecoherenceSweeps(unittest.TestCase):
    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testSweep(self):
        res = decoherence_sweep([0.0, 1.0], steps = 10, trajectories = 200, seed = 2)
        v = res.metrics["variance"]
        self.assertTrue(v[0] > v[1])
        self.assertEqual(res.control, "p")
        self.assertTrue(res.metrics["exponent"][0] > res.metrics["exponent"][1])
        again = decoherence_sweep([0.0, 1.0], steps = 10, trajectories = 200, seed = 2)
        self.assertEqual(res.metrics, again.metrics)
        res.summary()

    def testRateSweep(self):
        res = decoherence_rate_sweep([0.1, 1.0], steps = 17, trajectories = 20)
        self.assertEqual(res.control, "rate")
        self.assertEqual(res.values, [0.1, 1.0])
        self.assertAlmostEqual(res.budgets[0].tp, 0.0085, places = 15)

class TestCells(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.cell = TrapCell()
        cls.grid = cls.cell.make_grid()
        coin, shift = PulseSchedule.pi_half_pulse(), PulseSchedule.pi_pulse()
        cls.coin = calibrate_hold_time(cls.cell, coin, "pi/2", cls.grid).schedule(coin)
        cls.shift = calibrate_hold_time(cls.cell, shift, "pi", cls.grid).schedule(shift)

    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testIdealWalk(self):
        res = cell_reduce_and_walk(self.coin, self.shift, 1, 5, cell = self.cell, grid = self.grid)
        state = walk_state_from_traps({0: 1.0, 1: 1.0})
        _, ideal = evolve_1d(state, 5, tunneling_coin(pi / 2), CoinOp(tunneling_coin(pi).matrix))
        for t in range(6):
            d = tvd(res.records[t][1], ideal[t][1])
            self.assertTrue(d <= 0.01, "TVD {0} at step {1}".format(d, t))
        self.assertTrue(res.leakage <= params.lab.cell_max_leakage)

    def testSharedUnitaries(self):
        us = step_unitaries(self.coin, self.shift, 1, 3, self.cell, self.grid, ShakingSpec(0.0))
        self.assertTrue(us[0] is us[1] and us[1] is us[2])

    def testZeroShaking(self):
        res = shaking_sweep([0.0], 3, 1, self.coin, self.shift, cell = self.cell, grid = self.grid)
        ref = cell_reduce_and_walk(self.coin, self.shift, 1, 3, cell = self.cell, grid = self.grid)
        for (t, d), (s, e) in zip(res.records[0], ref.records):
            self.assertEqual(t, s)
            self.assertTrue(array_equal(d.probs, e.probs))

    def testShakingReproducible(self):
        a = shaking_sweep([0.09], 2, 1, self.coin, self.shift, seed = 3, cell = self.cell, grid = self.grid)
        b = shaking_sweep([0.09], 2, 1, self.coin, self.shift, seed = 3, cell = self.cell, grid = self.grid)
        self.assertTrue(array_equal(a.distribution(0).probs, b.distribution(0).probs))
        self.assertAlmostEqual(a.distribution(0).total(), 1.0, places = 10)

    def testThermalWalk(self):
        spec = ThermalSpec(ground_population = 0.99)
        self.assertEqual(spec.retained(), 2)
        res = thermal_walk(spec, self.coin, self.shift, 3, cell = self.cell, grid = self.grid)
        w = spec.retained_weights()
        self.assertTrue(abs(res.ground_populations[0] - w[0]) < 1e-12)
        for t, d in res.records:
            self.assertAlmostEqual(d.total(), 1.0, places = 10)
        self.assertEqual(len(res.per_level), 2)

    def testLeakageGuard(self):
        self.assertRaises(NumericalGuardError, extract_cell_unitaries, self.coin, self.shift, 1,
                          self.cell, self.grid, None, 0, 1e-12)

    def testExcitedLevelSpreadsSlower(self):
        # fast ramps excite the upper level out of its doublet, its walk
        # loses the ballistic spreading of the ground level
        ground = cell_reduce_and_walk(self.coin, self.shift, 2, 12, cell = self.cell, grid = self.grid)
        fast = lambda s: PulseSchedule(t_r = 25.0, t_i = s.t_i, ramp_shape = s.ramp_shape, name = s.name)
        excited = cell_reduce_and_walk(fast(self.coin), fast(self.shift), 3, 12, level = 1,
                                       cell = self.cell, grid = self.grid, max_leakage = 1.0)
        e0 = scaling_exponent([s for s in ground.variance_series() if s[0] >= 5])
        e1 = scaling_exponent([s for s in excited.variance_series() if s[0] >= 5])
        self.assertTrue(e1 < e0, "exponents: excited {0}, ground {1}".format(e1, e0))

    def testShakenGroundPopulation(self):
        g = []
        for amp in [0.0, 0.1, 0.3]:
            res = cell_reduce_and_walk(self.coin, self.shift, 3, 6, shaking = ShakingSpec(amp, seed = 1),
                                       cell = self.cell, grid = self.grid, max_leakage = 0.2)
            g.append(res.ground_populations[-1])
        self.assertTrue(g[0] > 0.99, "unshaken ground population {0}".format(g[0]))
        self.assertTrue(g[2] < g[1] < g[0], "ground populations {0}".format(g))

    def testShakingSignatureSmall(self):
        res = shaking_sweep([0.0, 0.03, 0.09], 6, 2, self.coin, self.shift, seed = 5,
                            cell = self.cell, grid = self.grid)
        res.summary()
        g = res.metrics["ground_population"]
        self.assertTrue(g[2] < g[1] < g[0], "ground populations {0}".format(g))
        for i in range(3):
            self.assertAlmostEqual(res.distribution(i).total(), 1.0, places = 8)
            self.assertTrue(res.metrics["nu"][i] is not None)
        self.assertTrue(tvd(res.distribution(2), res.distribution(0)) > 1e-4)

    @unittest.skipUnless(long_jobs, "set TRAPWALK_LONG_JOBS=1")
    def testShakingSignature(self):
        res = shaking_sweep(params.lab.shake_amplitudes, params.lab.sweep_steps, 2, self.coin, self.shift,
                            cell = self.cell, grid = self.grid)
        res.summary()
        nu = res.metrics["nu"]
        i = int(argmin(nu))
        self.assertTrue(0 < i < len(nu) - 1, "nu {0}".format(nu))
        g = res.metrics["ground_population"]
        self.assertTrue(g[-1] < g[0])

def suite():
    suite = unittest.TestSuite()
    for case in [TestThermal, TestSearch, TestDecoherenceSweeps, TestCells]:
        suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(case))
    return suite

if __name__ == "__main__":
    runner = unittest.TextTestRunner(verbosity = 2)
    runner.run(suite())
