import unittest
import time

from numpy import array, eye, kron, sqrt, pi, allclose, abs as np_abs

from trapwalk import *
from trapwalk.coins import unitarity_error, nearest_unitary, schmidt_rank
from trapwalk.coins import entangled_decomposition, c0_decomposition, c1_decomposition
from sympy import Rational

from trapwalk.sympy_utils import exact_coin, exact_biased_coin, verify_identities, decomposition_residuals, is_unitary

class TestCoins(unittest.TestCase):
    def setUp(self):
        print("""====Test starting=============================""")
        self.ts = time.time()

    def tearDown(self):
        te = time.time()
        print('test done,   time=%7.5f s' % (te - self.ts))

    def testUnitarity(self):
        for c in [hadamard_coin(), tunneling_coin(pi / 3), biased_coin(0.8, 0.3), phase_coin(0.4, 4),
                  coin_separable_2d(), coin_entangled_2d(), coin_c0(), coin_c1(),
                  coin_x_not(), coin_x_phase(), coin_x_prime_not()]:
            self.assertTrue(c.unitarity_error() <= 1e-12, "{0}: {1}".format(c.getName(), c.unitarity_error()))

    def testNotUnitary(self):
        self.assertRaises(ValueError, CoinOp, [[1, 1], [0, 1]])
        self.assertRaises(ValueError, CoinOp, eye(3))
        self.assertRaises(ValueError, CoinOp, [1, 0])

    def testBiasedCoin(self):
        self.assertTrue(biased_coin(0.5).allclose(hadamard_coin()))
        U = biased_coin(0.8, 0.3).matrix
        self.assertAlmostEqual(np_abs(U[0, 0])**2, 0.8, places = 12)
        self.assertAlmostEqual(np_abs(U[1, 0])**2, 0.2, places = 12)
        self.assertRaises(ValueError, biased_coin, 1.5)
        self.assertRaises(ValueError, biased_coin, -0.1)
        self.assertTrue(is_unitary(exact_biased_coin(Rational(4, 5), Rational(3, 10))))

    def testTunnelingCoin(self):
        self.assertTrue(tunneling_coin(pi).allclose([[0, 1j], [1j, 0]]))
        self.assertTrue(tunneling_coin(0).allclose(eye(2)))
        U = tunneling_coin(pi / 2).matrix
        self.assertTrue(allclose(np_abs(U)**2, 0.5, rtol = 0, atol = 1e-15))

    def testDecompositions(self):
        self.assertTrue(entangled_decomposition().allclose(coin_entangled_2d()))
        self.assertTrue((-c0_decomposition()).allclose(coin_c0()))
        self.assertTrue((-c1_decomposition()).allclose(coin_c1()))
        self.assertTrue((coin_c0() @ coin_c0()).allclose(eye(4)))

    def testExactIdentities(self):
        self.assertTrue(verify_identities())
        for name, m in decomposition_residuals().items():
            self.assertTrue(all(e == 0 for e in m), name)
        self.assertRaises(ValueError, exact_coin, "nope")

    def testSchmidtRank(self):
        self.assertEqual(schmidt_rank(coin_separable_2d()), 1)
        self.assertEqual(schmidt_rank(coin_entangled_2d()), 2)
        self.assertEqual(schmidt_rank(hadamard_coin().kron(coin_x_phase())), 1)

    def testKron(self):
        h = hadamard_coin()
        self.assertTrue(h.kron(h).allclose(coin_separable_2d()))
        self.assertTrue((h @ h.dagger()).allclose(eye(2)))

    def testMultilevel(self):
        m = 1.0000001 * kron(hadamard_coin().matrix, eye(2))
        c = multilevel_coin(m)
        self.assertEqual(c.dim, 4)
        self.assertTrue(c.unitarity_error() <= 1e-12)
        self.assertTrue(c.allclose(kron(hadamard_coin().matrix, eye(2)), atol = 1e-6))
        self.assertTrue(unitarity_error(nearest_unitary([[1, 0.1], [0, 1]])) < 1e-12)

    def testCoinVectors(self):
        from trapwalk.coins import coin_vector
        self.assertTrue(allclose(coin_vector("sym"), array([1, 1j]) / sqrt(2)))
        self.assertTrue(allclose(coin_vector("+-", 4), [0, 1, 0, 0]))
        self.assertRaises(ValueError, coin_vector, "x")
        self.assertRaises(ValueError, coin_vector, "+", 6)

    def testByName(self):
        self.assertTrue(coin_by_name("biased", p = 0.8, delta_c = 0.3).allclose(biased_coin(0.8, 0.3)))
        self.assertTrue(coin_by_name("c1").allclose(-eye(4)))
        self.assertRaises(ValueError, coin_by_name, "grover")

def suite():
    suite = unittest.TestSuite()
    suite.addTest(unittest.defaultTestLoader.loadTestsFromTestCase(TestCoins))
    return suite

if __name__ == "__main__":
    runner = unittest.TextTestRunner(verbosity = 2)
    runner.run(suite())
