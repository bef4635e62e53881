import unittest
import time
import os
import shutil
import tempfile

from numpy import array, sqrt, zeros, eye, exp, pi, allclose

from trapwalk import *
from trapwalk.solver import gaussian_packet, lowdin

class TestSolver(unittest.TestCase):
    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testGrid(self):
        self.assertRaises(ValueError, SimGrid, 0.0, 10.0, 100)
        self.assertRaises(ValueError, SimGrid, 0.0, 100.0, 128)
        self.assertRaises(ValueError, SimGrid, 1.0, 1.0, 128)
        g = SimGrid.covering(-30.0, 30.0, 0.2, 10.0)
        self.assertEqual(g.n_points, 512)
        self.assertTrue(g.x[0] <= -40 and g.x[-1] >= 40)
        self.assertAlmostEqual(g.x[g.index(0.0)], 0.0, places = 12)

    def testPotential(self):
        v = potential([0.0, 1.0, -1.0], [0.0, 2.0], "piecewise_harmonic")
        self.assertTrue(allclose(v, [0.0, 1.0, 1.0]))
        v = potential([0.0], [GaussianTrap(0.0, 200.0)])
        self.assertAlmostEqual(v[0], -200.0)
        self.assertRaises(ValueError, potential, [0.0], [0.0], "square")
        self.assertRaises(ValueError, GaussianTrap, 0.0, -1.0)

    def testMinGaussian(self):
        x = array([0.0, 1.7, 5.0])
        v = potential(x, [-1.7, 1.7], "min_gaussian", 200.0)
        self.assertAlmostEqual(v[0], -200.0 * exp(-1.7**2 / 400.0), places = 12)
        self.assertAlmostEqual(v[1], -200.0, places = 12)
        self.assertTrue(allclose(v, GaussianTrap(1.7, 200.0)(x), rtol = 0, atol = 1e-12))
        # the sum has no barrier at this distance
        s = potential(x, [-1.7, 1.7], "sum_gaussian", 200.0)
        self.assertTrue(s[0] < s[1])
        v = potential([0.0], [GaussianTrap(-1.0, 100.0), GaussianTrap(1.0, 200.0)], "min_gaussian")
        self.assertAlmostEqual(v[0], -200.0 * exp(-1.0 / 400.0), places = 12)

    def testDoubleWell(self):
        # cell at the tunneling distance: a ground doublet well below the
        # next pair of levels
        cell = TrapCell()
        grid = cell.make_grid()
        E = eigenstates(cell.potential_on(grid, params.pulses.a_min), 3, grid).energies
        splitting = E[1] - E[0]
        self.assertTrue(0.05 < splitting < 0.25, "splitting {0}".format(splitting))
        self.assertTrue(E[2] - E[0] > 0.7, "gap {0}".format(E[2] - E[0]))
        # a full tunneling period fits in the longest hold time
        self.assertTrue(2 * pi / splitting < params.calibration.t_max)
        E = eigenstates(cell.potential_on(grid, params.pulses.a_max), 2, grid).energies
        self.assertTrue(E[1] - E[0] < 1e-10)

    def testHarmonicLevels(self):
        grid = SimGrid(-12.8, 12.8, 128)
        basis = eigenstates(lambda x: 0.5 * x**2, 4, grid)
        for j, E in enumerate(basis.energies):
            self.assertTrue(abs(E - (j + 0.5)) < 1e-6, "E_{0} = {1}".format(j, E))
        self.assertTrue(allclose(basis.gram(), eye(4), rtol = 0, atol = 1e-10))

    def testGaussianLevels(self):
        grid = SimGrid.covering(-10.0, 10.0)
        basis = eigenstates(GaussianTrap(0.0, 200.0), 2, grid)
        E0, E1 = basis.energies
        self.assertTrue(abs((E1 - E0) - 1) < 0.02, "E1 - E0 = {0}".format(E1 - E0))
        self.assertTrue(abs(E0 - (-200 + 0.5)) < 0.02 * 0.5 + 0.02)
        self.assertTrue(allclose(basis.gram(), eye(2), rtol = 0, atol = 1e-10))
        # sign convention: positive j-th moment
        self.assertTrue((basis.states[1].real * grid.x).sum() > 0)
        self.assertRaises(ValueError, eigenstates, GaussianTrap(0.0, 2.0), 10, grid)
        self.assertRaises(ValueError, eigenstates, GaussianTrap(0.0), 0, grid)

    def testStationary(self):
        grid = SimGrid.covering(-10.0, 10.0)
        trap = GaussianTrap(0.0, 200.0)
        V = trap(grid.x)
        phi = eigenstates(trap, 1, grid).states[0]
        E0 = energy_expectation(phi, V, grid)
        psi = propagate(phi, lambda t: V, 0.0, 1000 * grid.dt, grid)
        overlap = abs(grid.inner(phi, psi))**2
        self.assertTrue(1 - overlap < 1e-8, "ground state lost {0}".format(1 - overlap))
        self.assertTrue(abs(grid.norm(psi) - 1) < 1e-12)
        self.assertTrue(abs(energy_expectation(psi, V, grid) - E0) < 1e-8 * abs(E0))

    def testEnergyConservation(self):
        grid = SimGrid.covering(-10.0, 10.0)
        V = GaussianTrap(0.0, 200.0)(grid.x)
        psi = gaussian_packet(grid, 0.3, sqrt(0.5))
        E = energy_expectation(psi, V, grid)
        psi = propagate(psi, lambda t: V, 0.0, 1000 * grid.dt, grid)
        self.assertTrue(abs(energy_expectation(psi, V, grid) - E) < 1e-8 * abs(E))

    def testFreeSpreading(self):
        grid = SimGrid.covering(-20.0, 20.0)
        zero = zeros(grid.n_points)
        for sigma0 in [1.0, 1.5]:
            psi = gaussian_packet(grid, 0.0, sigma0)
            t = 5.0
            psi = propagate(psi, lambda s: zero, 0.0, t, grid)
            var = WaveFunction(grid, psi).variance_x()
            expected = sigma0**2 + t**2 / (4 * sigma0**2)
            self.assertTrue(abs(var - expected) < 1e-4, "variance {0}, expected {1}".format(var, expected))

    def testSplitStepUnitary(self):
        grid = SimGrid.covering(-10.0, 10.0)
        V = GaussianTrap(1.0)(grid.x)
        psi = gaussian_packet(grid, 2.0, 0.8, 1.0)
        out = split_step(psi, V, grid.dt, grid)
        self.assertTrue(abs(grid.norm(out) - 1) < 1e-12)
        back = split_step(out, V, -grid.dt, grid)
        self.assertTrue(allclose(back, psi, rtol = 0, atol = 1e-12))

    def testBackwardPropagation(self):
        grid = SimGrid.covering(-10.0, 10.0)
        V = lambda t: GaussianTrap(0.1 * t)(grid.x)
        psi = gaussian_packet(grid, 0.0, 0.7)
        out = propagate(psi, V, 0.0, 1.0, grid)
        back = propagate(out, V, 0.0, 1.0, grid, backward = True)
        self.assertTrue(allclose(back, psi, rtol = 0, atol = 1e-10))

    def testConvergenceOrder(self):
        dts, errors, order = convergence_study()
        self.assertTrue(all(e1 > e2 for e1, e2 in zip(errors, errors[1:])))
        self.assertTrue(abs(order - 2) < 0.2, "order {0}".format(order))

    def testLowdin(self):
        grid = SimGrid.covering(-10.0, 10.0)
        a = gaussian_packet(grid, -0.5, 1.0)
        b = gaussian_packet(grid, 0.5, 1.0)
        s = lowdin(array([a, b]), grid.dx)
        self.assertTrue(abs(grid.inner(s[0], s[1])) < 1e-12)
        self.assertTrue(abs(grid.norm(s[0]) - 1) < 1e-12)

    def testBoundary(self):
        grid = SimGrid.covering(-10.0, 10.0)
        self.assertRaises(NumericalGuardError, grid.check_boundary, gaussian_packet(grid, grid.x[0], 1.0))
        self.assertTrue(grid.check_boundary(gaussian_packet(grid, 0.0, 1.0)) < 1e-6)

    def testWaveFunctionCsv(self):
        grid = SimGrid.covering(-10.0, 10.0)
        psi = WaveFunction(grid, gaussian_packet(grid, 0.0, 1.0))
        self.assertAlmostEqual(psi.norm(), 1.0, places = 12)
        self.assertAlmostEqual(psi.mean_x(), 0.0, places = 10)
        d = tempfile.mkdtemp()
        try:
            path = psi.to_csv(os.path.join(d, "psi.csv"))
            with open(path) as f:
                lines = f.read().splitlines()
            self.assertEqual(lines[0], "x,re,im")
            self.assertEqual(len(lines), grid.n_points + 1)
            x, re, im = [float(v) for v in lines[1 + grid.index(0.0)].split(",")]
            self.assertAlmostEqual(x, 0.0, places = 12)
            self.assertAlmostEqual(re, (2 * 3.141592653589793)**-0.25, places = 10)
        finally:
            shutil.rmtree(d)

def suite():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestSolver))
    return suite

if __name__ == "__main__":
    runner = unittest.TextTestRunner(verbosity = 2)
    runner.run(suite())
