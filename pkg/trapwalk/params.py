"""Default parameters of TrapWalk.

Parameters are grouped in nested classes, each class is a section that
can be printed with str_params() and changed at runtime, e.g.

    from trapwalk import params
    params.solver.dt = 0.0025
"""

from __future__ import print_function

import os
from inspect import getmembers


def _str_params_list(p, depth = 0):
    """Recursively print parameters"""
    slist = ["    " * depth + "==" + p.__name__ + "=="]
    for par, v in getmembers(p):
        if par[0] == '_' or par in ["str", "str_params", "finfo", "double",
                                    "params_class", "getmembers", "os",
                                    "published_defaults", "print_function", "in_use"]:
            continue
        if hasattr(v, "__dict__"):
            slist += _str_params_list(v, depth + 1)
        else:
            slist.append("    " * (depth+1) + str(par) + ": " + str(v))
    return slist
def str_params(p = None):
    if p is None:
        from . import params
        p = params
    slist = _str_params_list(p)
    return "\n".join(slist)

class params_class(object):
    """Base class for sets of parameters."""
    @classmethod
    def str(c):
        return str_params(c)

###########################
#### global parameters ####
###########################

class general(params_class):
    # every parallel job draws its own stream from (seed, job index), so
    # results do not depend on this switch
    parallel = False
    nprocs = None
    process_pool = None
    debug_info = False

# disable threading in openblas when parallel computing is used, this
# must be done before numpy does any work
if general.parallel:
    try:
        os.environ["OPENBLAS_NUM_THREADS"] = "1"
    except:
        print("WARNING: could not disable openblas threading")


##################################
#### abstract coined walks ####
##################################

class walk(params_class):
    unitarity_tol = 1e-12   # max |U^+ U - I| accepted for a coin
    norm_tol = 1e-10        # accepted drift of the walker norm
    debug_info = False

class decoherence(params_class):
    trajectories = 1000
    target = "both"         # coin, position or both
    seed = 0
    debug_info = False

class metrics(params_class):
    min_fit_points = 3      # scaling exponent needs at least this many points
    zero_eps = 1e-15        # probabilities below are treated as empty sites


################################
#### continuous-space solver ####
################################

class solver(params_class):
    V0 = 200.0              # trap depth in units of hbar*omega_x
    potential_form = "min_gaussian"  # sum_gaussian, min_gaussian or piecewise_harmonic
    dx = 0.2                # grid spacing in units of 1/alpha
    dt = 0.005              # time step in units of 1/omega_x
    margin = 10.0           # free space on each side of the outermost traps
    max_dx = 0.25           # coarser grids do not resolve the ground state
    boundary_width = 1.0    # edge region checked for population
    boundary_tol = 1e-6     # population allowed in the edge region
    eig_maxn = 4000         # largest local grid for dense diagonalization
    debug_info = False

class pulses(params_class):
    a_max = 60.0            # resting trap distance
    a_min = 3.4             # distance at which tunneling takes place
    t_r = 100.0             # ramp time
    t_i_pi = 10.0           # uncalibrated hold time of the pi pulse
    t_i_pi_half = 54.0      # uncalibrated hold time of the pi/2 pulse
    ramp_shape = "smootherstep"
    max_leakage = 0.2       # band truncation is invalid above this
    omega_shake = 0.01
    shake_amplitude = 0.0
    debug_info = False

class calibration(params_class):
    target_fidelity = 0.99
    t_max = 250.0           # longest hold time searched
    scan_step = 0.5         # coarse scan resolution in units of 1/omega_x
    debug_info = False

class line(params_class):
    n_traps = 14
    steps = 5
    level = 0
    long_n_traps = 62       # reproduction of the long line, opt-in only
    long_steps = 30


#########################
#### experiment layer ####
#########################

class lab(params_class):
    thermal_truncation = 0.999
    cell_max_leakage = 0.05
    sweep_steps = 17
    shake_amplitudes = [0.0, 0.03, 0.06, 0.09, 0.12, 0.2, 0.3]
    decoherence_rates = [0.1, 1.0]     # photon scattering rates in 1/s
    step_duration = 5e-3               # duration of one walk step in s
    omega_x_SI = 1e5                   # trap frequency in 1/s
    species = "Rb87"
    fit_t_min = 5                      # first step used for scaling exponents of sweeps
    debug_info = False

class search(params_class):
    side = 8
    max_steps = 200
    peak_threshold = 10.0              # first peak only counts above this many times 1/N
    debug_info = False

class cli(params_class):
    record_every = 1
    long_jobs = False
    build = "trapwalk-0.1.0"


#######################################
#### defaults taken from the source ####
#######################################

# (name, published value, where it is stated), echoed by the provenance
# printout next to the value in use
published_defaults = [
    ("V0", 200.0, "§2.2"),
    ("a_max", 60.0, "Fig. 3 caption"),
    ("a_min", 28.8, "Fig. 3 caption"),
    ("t_r", 100.0, "Fig. 3 caption"),
    ("t_i_pi", 20.25, "Fig. 3 caption"),
    ("t_i_pi_half", 112.0, "Fig. 3 caption"),
    ("omega_shake", 0.01, "§3.2, Fig. 5 caption"),
    ("sweep_steps", 17, "Fig. 5 caption"),
    ("step_duration", 5e-3, "§3.2"),
    ("omega_x_SI", 1e5, "§3.2"),
    ("long_n_traps", 62, "Fig. 3 caption"),
    ]

def in_use(name):
    """Current value of a published parameter."""
    for section in [solver, pulses, line, lab]:
        if name in vars(section):
            return getattr(section, name)
    raise KeyError(name)

if __name__ == "__main__":
    print(str_params())
    print()
    print(str_params(pulses))
