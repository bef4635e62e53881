#!=====================================================
#! Separable and entangled coins on the square lattice
#!=====================================================

from __future__ import print_function

from pylab import figure, title, subplot, show

from trapwalk import *
from trapwalk.coins import schmidt_rank, entangled_decomposition
from trapwalk.sympy_utils import verify_identities

if __name__ == "__main__":
    print("pulse decompositions exact:", verify_identities())
    print("decomposition matches C2D_ent:", entangled_decomposition().allclose(coin_entangled_2d()))
    steps = 20
    figure()
    for i, coin in enumerate([coin_separable_2d(), coin_entangled_2d()]):
        state, records = evolve_2d(WalkState2D.localized((0, 0), "++"), steps, coin)
        d = records[-1][1]
        print(coin.getName(), "Schmidt rank", schmidt_rank(coin),
              "variance k", d.marginal_k().variance(), "l", d.marginal_l().variance())
        subplot(1, 2, i + 1)
        title(coin.getName())
        d.plot()
    show()
