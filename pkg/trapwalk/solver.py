"""Split-operator solver of the one-dimensional Schroedinger equation
for atoms in optical microtraps.

Units: hbar = m = omega_x = 1, lengths in 1/alpha = sqrt(hbar/(m omega_x)).
A trap of depth V0 is V(x) = -V0 exp(-(x - x_i)^2/(2 V0)), its bottom is
harmonic with unit frequency."""

from __future__ import print_function

from numpy import arange, array, asarray, atleast_2d, zeros, exp, sqrt, pi, log2
from numpy import abs as np_abs, vdot, minimum, ceil, polyfit, log
from numpy import savetxt, column_stack, inf, full
from numpy.fft import fft, ifft, fftfreq
from scipy.linalg import eigh, circulant

from . import params
from .utils import NumericalGuardError, atomic_write, debug_print


class SimGrid(object):
    """Uniform periodic grid of n_points (a power of two) starting at
    x_min, spacing (x_max - x_min)/n_points."""
    def __init__(self, x_min, x_max, n_points, dt = None):
        n = int(n_points)
        if n < 2 or n & (n - 1):
            raise ValueError("number of grid points must be a power of two, got {0}".format(n_points))
        if not x_max > x_min:
            raise ValueError("empty grid [{0}, {1}]".format(x_min, x_max))
        self.x_min = float(x_min)
        self.x_max = float(x_max)
        self.n_points = n
        self.dx = (self.x_max - self.x_min) / n
        if self.dx > params.solver.max_dx:
            raise ValueError("grid spacing {0:g} does not resolve the ground state (max {1:g})".format(
                self.dx, params.solver.max_dx))
        self.dt = params.solver.dt if dt is None else float(dt)
        self.x = self.x_min + self.dx * arange(n)
        self.k = 2 * pi * fftfreq(n, self.dx)
        self._kinetic = {}
    @classmethod
    def covering(cls, lo, hi, dx = None, margin = None, dt = None):
        """Smallest power of two grid with spacing dx containing
        [lo - margin, hi + margin], centered on the interval."""
        dx = params.solver.dx if dx is None else float(dx)
        margin = params.solver.margin if margin is None else float(margin)
        length = (hi - lo) + 2 * margin
        n = 2 ** int(ceil(log2(max(length / dx, 2))))
        center = 0.5 * (lo + hi)
        # keep the center on a node
        x_min = center - dx * (n // 2)
        return cls(x_min, x_min + n * dx, n, dt)
    def kinetic_factor(self, dt):
        """exp(-i k^2/2 dt), cached per dt"""
        if dt not in self._kinetic:
            self._kinetic[dt] = exp(-0.5j * self.k**2 * dt)
        return self._kinetic[dt]
    def index(self, x):
        """Index of the node closest to x."""
        return int(round((x - self.x_min) / self.dx))
    def inner(self, a, b):
        return vdot(a, b) * self.dx
    def norm(self, psi):
        return (np_abs(psi)**2).sum(axis = -1) * self.dx
    def edge_population(self, psi, width = None):
        width = params.solver.boundary_width if width is None else width
        m = max(1, int(round(width / self.dx)))
        p = np_abs(atleast_2d(psi))**2
        return float(((p[:, :m].sum(axis = 1) + p[:, -m:].sum(axis = 1)) * self.dx).max())
    def check_boundary(self, psi, tol = None):
        tol = params.solver.boundary_tol if tol is None else tol
        pop = self.edge_population(psi)
        if pop > tol:
            raise NumericalGuardError("boundary population {0:.3g} exceeds {1:g}: grid too small".format(pop, tol))
        return pop
    def __str__(self):
        return "SimGrid([{0:g}, {1:g}), n={2}, dx={3:g}, dt={4:g})".format(
            self.x_min, self.x_max, self.n_points, self.dx, self.dt)

class GaussianTrap(object):
    def __init__(self, center, V0 = None):
        V0 = params.solver.V0 if V0 is None else float(V0)
        if not V0 > 0:
            raise ValueError("trap depth V0 must be positive, got {0}".format(V0))
        self.center = float(center)
        self.V0 = V0
    def __call__(self, x):
        return -self.V0 * exp(-(asarray(x) - self.center)**2 / (2 * self.V0))
    def bound_levels(self):
        """Semiclassical number of bound levels, the phase integral of the
        well over pi plus one half."""
        return int(2 * self.V0 * sqrt(2 / pi) + 0.5)
    def __str__(self):
        return "GaussianTrap(center={0:g}, V0={1:g})".format(self.center, self.V0)

def potential(x, traps, form = None, V0 = None):
    """Potential of a set of traps.  sum_gaussian adds the Gaussian
    wells, min_gaussian takes at every x the deepest of them (each well
    stays harmonic up to the cusp between neighbours) and
    piecewise_harmonic is the min over traps of (x - x_i)^2.  traps
    holds GaussianTrap objects or centers."""
    form = form or params.solver.potential_form
    x = asarray(x, dtype = float)
    centers = [t.center if isinstance(t, GaussianTrap) else float(t) for t in traps]
    if form in ("sum_gaussian", "min_gaussian"):
        depths = [t.V0 if isinstance(t, GaussianTrap) else (params.solver.V0 if V0 is None else V0)
                  for t in traps]
        if form == "sum_gaussian":
            v = zeros(x.shape)
            for c, d in zip(centers, depths):
                v -= d * exp(-(x - c)**2 / (2 * d))
            return v
        if len(set(depths)) == 1:
            # one exp on the distance to the nearest trap
            d2 = full(x.shape, inf)
            for c in centers:
                d2 = minimum(d2, (x - c)**2)
            return -depths[0] * exp(-d2 / (2 * depths[0]))
        v = zeros(x.shape)
        for c, d in zip(centers, depths):
            v = minimum(v, -d * exp(-(x - c)**2 / (2 * d)))
        return v
    if form == "piecewise_harmonic":
        v = full(x.shape, inf)
        for c in centers:
            v = minimum(v, (x - c)**2)
        return v
    raise ValueError("unknown potential form {0!r}".format(form))

class WaveFunction(object):
    """Complex field on a SimGrid."""
    def __init__(self, grid, values):
        self.grid = grid
        self.values = array(values, dtype = complex)
        if self.values.shape != (grid.n_points,):
            raise ValueError("wave function of shape {0} on a grid of {1} points".format(
                self.values.shape, grid.n_points))
    def norm(self):
        return float(self.grid.norm(self.values))
    def normalized(self):
        return WaveFunction(self.grid, self.values / sqrt(self.norm()))
    def density(self):
        return np_abs(self.values)**2
    def mean_x(self):
        return float((self.grid.x * self.density()).sum() * self.grid.dx / self.norm())
    def variance_x(self):
        m = self.mean_x()
        return float(((self.grid.x - m)**2 * self.density()).sum() * self.grid.dx / self.norm())
    def to_csv(self, path):
        return export_wavefunction_csv(self, path)

def export_wavefunction_csv(psi, path, grid = None):
    """Write rows x,re,im."""
    if isinstance(psi, WaveFunction):
        grid, values = psi.grid, psi.values
    else:
        values = asarray(psi)
    from io import StringIO
    buf = StringIO()
    buf.write("x,re,im\n")
    savetxt(buf, column_stack([grid.x, values.real, values.imag]), delimiter = ",", fmt = "%.17g")
    return atomic_write(path, buf.getvalue())

def gaussian_packet(grid, x0 = 0.0, sigma = 1.0, k0 = 0.0):
    """Normalized Gaussian with density standard deviation sigma."""
    x = grid.x
    psi = exp(-(x - x0)**2 / (4 * sigma**2) + 1j * k0 * x)
    return psi / sqrt(grid.norm(psi))


#### propagation ####

def split_step(psi, V, dt, grid):
    """One Strang step: half kinetic, full potential, half kinetic.
    psi may hold several wave functions along its first axis."""
    kin = grid.kinetic_factor(0.5 * dt)
    psi = ifft(kin * fft(psi, axis = -1), axis = -1)
    psi = exp(-1j * dt * V) * psi
    return ifft(kin * fft(psi, axis = -1), axis = -1)

def propagate(psi, potential_at, t0, duration, grid, dt = None, backward = False, monitor = None):
    """Integrate from t0 over duration with potential_at(t) evaluated at
    step midpoints.  backward applies the exact inverse steps in reverse
    order, i.e. the adjoint of the forward propagator."""
    dt = grid.dt if dt is None else dt
    n = int(round(duration / dt))
    psi = array(psi, dtype = complex)
    order = range(n - 1, -1, -1) if backward else range(n)
    h = -dt if backward else dt
    for i in order:
        psi = split_step(psi, potential_at(t0 + (i + 0.5) * dt), h, grid)
        if monitor is not None:
            monitor(i, psi)
    return psi

def energy_expectation(psi, V, grid):
    tpsi = ifft(0.5 * grid.k**2 * fft(psi))
    return float((vdot(psi, tpsi) + vdot(psi, V * psi)).real * grid.dx / grid.norm(psi))


#### bound states ####

class VibrationalBasis(object):
    """Lowest eigenstates of one trap on the nodes of a grid."""
    def __init__(self, grid, energies, states, center = 0.0):
        self.grid = grid
        self.energies = asarray(energies)
        self.states = asarray(states, dtype = complex)   # (N, n_points)
        self.center = center
    @property
    def N(self):
        return len(self.energies)
    def overlaps(self, psi):
        """<phi_j|psi> for each level j (psi may be a batch)."""
        return atleast_2d(psi).dot(self.states.conj().T).T * self.grid.dx
    def populations(self, psi):
        return np_abs(self.overlaps(psi))**2
    def gram(self):
        return self.states.conj().dot(self.states.T) * self.grid.dx
    def __str__(self):
        return "VibrationalBasis(N={0}, center={1:g}, E={2})".format(self.N, self.center, self.energies)

def eigenstates(trap, N, grid, window = None):
    """Lowest N eigenpairs of -1/2 d^2/dx^2 + V.  trap is a GaussianTrap
    (diagonalized on a window around its center), a callable V(x) or
    the potential on the grid (diagonalized on the whole grid)."""
    if N < 1:
        raise ValueError("need at least one level, got {0}".format(N))
    if isinstance(trap, GaussianTrap):
        center = trap.center
        window = 12.0 + 2 * sqrt(2 * N + 1) if window is None else window
        i0 = max(grid.index(center - window), 0)
        i1 = min(grid.index(center + window) + 1, grid.n_points)
        V = trap(grid.x[i0:i1])
        # levels above the rim are not bound
        vmax = -trap.V0 * exp(-window**2 / (2 * trap.V0))
    else:
        center = 0.0
        i0, i1 = 0, grid.n_points
        V = trap(grid.x) if callable(trap) else asarray(trap, dtype = float)
        vmax = None
    n = i1 - i0
    if n > params.solver.eig_maxn:
        raise ValueError("{0} grid points are too many for dense diagonalization".format(n))
    if N >= n:
        raise ValueError("cannot compute {0} levels on {1} points".format(N, n))
    H = _fourier_kinetic(n, grid.dx)
    H[range(n), range(n)] += V
    E, vec = eigh(H, subset_by_index = [0, N - 1])
    if vmax is not None and E[-1] >= vmax:
        raise ValueError("trap holds fewer than {0} bound levels".format(N))
    states = zeros((N, grid.n_points), dtype = complex)
    x = grid.x[i0:i1] - center
    for j in range(N):
        v = vec[:, j] / sqrt(grid.dx)
        # j-th moment positive, the same convention in every trap
        if (v * x**j).sum() < 0:
            v = -v
        states[j, i0:i1] = v
    debug_print(params.solver, "levels", E)
    return VibrationalBasis(grid, E, states, center)

def _fourier_kinetic(n, dx):
    """Fourier grid kinetic matrix, real symmetric circulant."""
    k = 2 * pi * fftfreq(n, dx)
    return circulant(ifft(0.5 * k**2).real)

def lowdin(states, dx):
    """Symmetric orthonormalization of the rows of states."""
    S = states.conj().dot(states.T) * dx
    w, U = eigh(S)
    inv_sqrt = U.dot((1.0 / sqrt(w))[:, None] * U.conj().T)
    return inv_sqrt.T.dot(states)


#### convergence study ####

def convergence_study(dts = (0.04, 0.02, 0.01, 0.005), t_end = 2.0, V0 = None, x0 = 1.0, refine = 8):
    """Error of the split-step solution of a displaced packet in a
    Gaussian trap against a run with step min(dts)/refine.  Returns
    (dts, errors, fitted order)."""
    trap = GaussianTrap(0.0, V0)
    grid = SimGrid.covering(-10.0, 10.0)
    V = trap(grid.x)
    psi0 = gaussian_packet(grid, x0, sqrt(0.5))
    static = lambda t: V
    ref_dt = min(dts) / refine
    ref = propagate(psi0, static, 0.0, t_end, grid, dt = ref_dt)
    errors = []
    for dt in dts:
        psi = propagate(psi0, static, 0.0, t_end, grid, dt = dt)
        errors.append(float(sqrt(grid.norm(psi - ref))))
        debug_print(params.solver, "dt", dt, "error", errors[-1])
    order, _ = polyfit(log(asarray(dts)), log(asarray(errors)), 1)
    return list(dts), errors, float(order)
