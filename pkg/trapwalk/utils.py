#    TrapWalk - quantum walks of atoms in optical microtraps
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Helpers shared by the engines: errors, random streams, root
finding, parallel maps and file output."""

from __future__ import print_function

import os
import tempfile
import multiprocessing

from numpy import isfinite, nan
from numpy.random import SeedSequence, default_rng

from scipy.optimize import brentq

from . import params


class NumericalGuardError(RuntimeError):
    """A numerical result left its range of validity (boundary
    population, leakage, unreachable calibration target, ...)."""
    pass


# Random streams

def job_rng(seed, index = 0):
    """Independent generator for job number index of a run seeded with
    seed.  Streams do not depend on the order jobs are evaluated in."""
    ss = SeedSequence(entropy = int(seed) % 2**64, spawn_key = (int(index),))
    return default_rng(ss)


# Root finding

def findinv(fun, a = 0.0, b = 1.0, c = 0.5, **kwargs):
    """find solution of equation f(x)=c, on interval [a, b]"""
    return brentq(lambda x : fun(x) - c, a, b, **kwargs)
def findinv_pinf(fun, a = 0.0, c = 0.5, increasing = True, maxiter = 200, **kwargs):
    """Find fun(x)==c above a, growing the bracket to the right."""
    s = 1 if increasing else -1
    b = a + max(1, 0.1*abs(a))
    fb = fun(b)
    if not s*(fun(a) - c) <= 0:
        return nan
    for i in range(maxiter):
        if not isfinite(b) or s*(fb - c) >= 0:
            break
        d = (b - a) * 1.2
        a, b = b, b + d
        fb = fun(b)
    else:
        return nan
    if isfinite(b):
        return findinv(fun, a, b, c, **kwargs)
    return b
def bisect_index(f, ia, ib, maxiter = 64):
    """Bisection over integers: f(ia) and f(ib) have opposite signs,
    returns the index next to the sign change with the smaller |f|."""
    fa = f(ia)
    fb = f(ib)
    if fa*fb > 0: raise RuntimeError("Interval does not contain zero")
    if fa == 0: return ia
    if fb == 0: return ib
    for i in range(maxiter):
        if ib - ia <= 1:
            break
        im = (ia + ib) // 2
        fm = f(im)
        if fm == 0:
            return im
        if fm*fa > 0:
            ia, fa = im, fm
        else:
            ib, fb = im, fm
    else:
        print("WARNING: index bisection did not converge")
    return ia if abs(fa) <= abs(fb) else ib


# Parallel maps

def list_map(*args):
    """map returning a list in line with multiprocessing Pool.map"""
    return list(map(*args))
def init_trapwalk_worker():
    worker_name = "TrapWalk__worker__" + str(os.getpid())
    multiprocessing.current_process().name = worker_name
def get_parmap():
    if params.general.parallel:
        p = multiprocessing.current_process()
        if p.name.startswith("TrapWalk__worker__"):
            pmap = list_map
        else:
            if params.general.process_pool is None:
                params.general.process_pool = multiprocessing.Pool(params.general.nprocs,
                                                                   initializer=init_trapwalk_worker)
            pmap = params.general.process_pool.map
    else:
        pmap = list_map
    return pmap


# Output

def atomic_write(path, data):
    """Write text or bytes to path through a temporary file in the same
    directory followed by a rename."""
    path = os.path.abspath(path)
    dirname = os.path.dirname(path)
    if dirname and not os.path.isdir(dirname):
        os.makedirs(dirname)
    if isinstance(data, bytes):
        kw = dict(mode = "wb")
    else:
        kw = dict(mode = "w", encoding = "utf-8", newline = "")
    fd, tmp = tempfile.mkstemp(prefix = ".tmp_", dir = dirname)
    try:
        with os.fdopen(fd, **kw) as f:
            f.write(data)
        os.replace(tmp, path)
    except:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    return path

def debug_print(section, *args):
    """print(*args) if section.debug_info is set"""
    if getattr(section, "debug_info", False):
        print(*args)
