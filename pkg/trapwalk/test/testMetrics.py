import unittest
import time

from numpy import allclose

from trapwalk import *
from trapwalk.metrics import uniform_reference, l1_distance, variance_series

class TestMetrics(unittest.TestCase):
    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testVariance(self):
        d = SiteDistribution(-1, [0.25, 0.5, 0.25])
        self.assertAlmostEqual(variance(d), 0.5, places = 15)
        self.assertAlmostEqual(variance(d, origin = 1), 0.5 + 1.0, places = 15)
        self.assertAlmostEqual(d.mean(), 0.0, places = 15)
        self.assertEqual(d[5], 0.0)
        self.assertEqual(d.as_dict(), {-1: 0.25, 0: 0.5, 1: 0.25})

    def testFromDict(self):
        d = SiteDistribution.from_dict({3: 0.5, -1: 0.5})
        self.assertEqual(d.offset, -1)
        self.assertEqual(len(d.probs), 5)
        self.assertAlmostEqual(d.mirrored()[1], 0.5)

    def testQubitDistribution(self):
        q = qubit_distribution(SiteDistribution(0, [0.1, 0.2, 0.3, 0.4]))
        self.assertEqual(q.offset, 0)
        self.assertTrue(allclose(q.probs, [0.3, 0.7]))

    def testScalingExponent(self):
        self.assertAlmostEqual(scaling_exponent([(1, 1.0), (2, 4.0), (4, 16.0)]), 2.0, places = 12)
        self.assertAlmostEqual(scaling_exponent([(t, 3.0 * t) for t in range(1, 20)]), 1.0, places = 12)
        self.assertRaises(ValueError, scaling_exponent, [(1, 1.0), (2, 2.0)])
        self.assertRaises(ValueError, scaling_exponent, [(1, 1.0), (2, 0.0), (3, 3.0)])

    def testHadamardBallistic(self):
        _, records = evolve_1d(WalkState1D.localized(0, "sym"), 100, hadamard_coin())
        e = scaling_exponent([s for s in variance_series(records) if s[0] >= 10])
        self.assertTrue(abs(e - 2) < 0.1, "exponent {0}".format(e))

    def testUniformReference(self):
        u = uniform_reference(10)
        self.assertEqual(u.offset, -7)
        self.assertEqual(len(u.probs), 15)
        self.assertAlmostEqual(u.total(), 1.0, places = 14)
        self.assertAlmostEqual(total_variational_distance(u, 10), 0.0, places = 14)
        self.assertRaises(ValueError, uniform_reference, 0)


    def testNuExamples(self):
        point = SiteDistribution(0, [1.0])
        self.assertAlmostEqual(total_variational_distance(point, 2), 4.0 / 3, places = 14)
        _, records = evolve_1d(WalkState1D.localized(0, "sym"), 17, hadamard_coin())
        t, d = records[-1]
        self.assertEqual(t, 17)
        self.assertAlmostEqual(total_variational_distance(d, 17), 1.0641015625, places = 9)

    def testDistances(self):
        a = SiteDistribution(0, [1.0])
        b = SiteDistribution(3, [1.0])
        self.assertAlmostEqual(l1_distance(a, b), 2.0)
        self.assertAlmostEqual(tvd(a, b), 1.0)
        self.assertAlmostEqual(tvd(a, a), 0.0)

    def testClassicalDistribution(self):
        d = classical_distribution(20)
        self.assertAlmostEqual(d.total(), 1.0, places = 12)
        self.assertAlmostEqual(d.variance(), 20.0, places = 10)
        self.assertEqual(d[1], 0.0)

    def testLatticeDistribution(self):
        _, records = evolve_2d(WalkState2D.localized((0, 0), "++"), 3, coin_separable_2d())
        d = records[-1][1]
        self.assertAlmostEqual(sum(p for _, _, p in d.items()), 1.0, places = 12)
        self.assertAlmostEqual(d.marginal_k().total(), 1.0, places = 12)

def suite():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestMetrics))
    return suite

if __name__ == "__main__":
    runner = unittest.TextTestRunner(verbosity = 2)
    runner.run(suite())
