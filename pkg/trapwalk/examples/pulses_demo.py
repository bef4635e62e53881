#!=================================================
#! Tunneling pulses, cell reduction and the full line
#!=================================================

from __future__ import print_function

import time

from pylab import figure, title, legend, show

from trapwalk import *
from trapwalk.lab import cell_reduce_and_walk
from trapwalk.metrics import tvd
from trapwalk.coins import nearest_unitary

if __name__ == "__main__":
    tic = time.time()
    cell = TrapCell()
    grid = cell.make_grid()
    print(grid)

    #!-------------------------------------------
    #! calibrate the pi/2 (coin) and pi (shift)
    #!-------------------------------------------
    coin = PulseSchedule.pi_half_pulse()
    shift = PulseSchedule.pi_pulse()
    cal_coin = calibrate_hold_time(cell, coin, "pi/2", grid)
    cal_shift = calibrate_hold_time(cell, shift, "pi", grid)
    print(cal_coin)
    print(cal_shift)
    coin, shift = cal_coin.schedule(coin), cal_shift.schedule(shift)
    U = extract_effective_unitary(cell, coin, 2, grid)
    print(U)
    print("p, delta_c =", fit_coin_params(nearest_unitary(U.coin_block(0))))
    U = extract_effective_unitary(cell, shift, 2, grid)
    print("c, delta_o =", fit_shift_params(nearest_unitary(U.block(0))))

    #!-------------------------------------------
    #! full line against the cell reduction
    #!-------------------------------------------
    steps = 5
    line = run_walk_line(14, steps, coin_schedule = coin, shift_schedule = shift)
    print(line)
    cells = cell_reduce_and_walk(coin, shift, 2, steps, n_traps = 14, cell = cell, grid = grid)
    print(cells)
    figure()
    title("trap populations after {0} steps".format(steps))
    line.trap_distribution(steps).plot(style = "bo-", label = "full line")
    cells.trap_distribution().plot(style = "r.--", label = "cell reduction")
    legend()
    print("TVD", tvd(line.trap_distribution(steps), cells.trap_distribution()))
    print("time===", time.time() - tic)
    show()
