"""TrapWalk, quantum walks of atoms in optical microtraps."""

from __future__ import print_function

from . import params

from .utils import NumericalGuardError

from .coins import CoinOp
from .coins import identity_coin, hadamard_coin, tunneling_coin, biased_coin, phase_coin, multilevel_coin
from .coins import coin_x_not, coin_x_phase, coin_x_prime_not
from .coins import coin_separable_2d, coin_entangled_2d, coin_c0, coin_c1, coin_by_name

from .walk import WalkState1D, WalkState2D, GeneralShiftParams, SearchSetup
from .walk import apply_coin, shift_standard_1d, shift_flipflop_1d, shift_general_1d, shift_pair_1d
from .walk import shift_2d, shift_flipflop_2d, walk_step_1d, walk_step_2d, phase_walk_step
from .walk import evolve_1d, evolve_2d, build_search_initial, search_step

from .metrics import SiteDistribution, LatticeDistribution, position_distribution, qubit_distribution
from .metrics import variance, scaling_exponent, total_variational_distance, tvd, classical_distribution

from .decoherence import DecoherenceModel, decohere_evolve

from .solver import SimGrid, GaussianTrap, WaveFunction, potential, split_step, propagate
from .solver import eigenstates, energy_expectation, export_wavefunction_csv, convergence_study

from .pulses import PulseSchedule, ShakingSpec, TrapCell, TrapLine, EffectiveUnitary
from .pulses import localized_basis, run_pulse, calibrate_hold_time, extract_effective_unitary
from .pulses import fit_coin_params, fit_shift_params, run_walk_line, ground_state_population
