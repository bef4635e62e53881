"""Experiments built from the walk engine and the trap solver."""

from .thermal import ThermalSpec, thermal_weights, thermal_average, mean_quanta
from .thermal import temperature_mapping, ground_population_from_temperature, decoherence_budget
from .cells import CellUnitaries, extract_cell_unitaries, cell_reduce_and_walk, thermal_walk
from .sweeps import SweepResult, shaking_sweep, decoherence_sweep, decoherence_rate_sweep
from .search import SearchResult, search_experiment, first_local_maximum
