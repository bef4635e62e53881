"""Discrete-time coined quantum walks on the line and on the square
lattice.

States store a window of sites.  On the infinite line (and lattice) the
window grows by one site on each side with every shift, on finite
lines and grids (bounds given) it is fixed and blocked moves are
reflected: the walker stays in place and its coin ends in the state
which keeps the shift a permutation of the basis.  For the flip-flop
shift this leaves the coin unchanged, for the standard shift it
reverses it.

Coins of dimension 2N are ordered (side, level), side-major: the first
N entries belong to '+', the last N to '-'."""

from __future__ import print_function

from numpy import array, asarray, zeros, zeros_like, concatenate, sqrt, exp
from numpy import eye, kron, vdot, array_equal, abs as np_abs

from . import params
from .coins import CoinOp, coin_vector, phase_coin, coin_c0, coin_c1
from .utils import NumericalGuardError, debug_print


#### walker states ####

class WalkState1D(object):
    """Walker on a line: amplitudes[i, c] is the amplitude of site
    offset + i with coin index c."""
    def __init__(self, offset, amplitudes, bounds = None):
        amps = array(amplitudes, dtype = complex)
        if amps.ndim != 2 or amps.shape[1] % 2 != 0:
            raise ValueError("amplitudes must have shape (n_sites, 2N), got {0}".format(amps.shape))
        self.offset = int(offset)
        self.amplitudes = amps
        self.bounds = None
        if bounds is not None:
            lo, hi = int(bounds[0]), int(bounds[1])
            if self.offset != lo or amps.shape[0] != hi - lo + 1:
                raise ValueError("window of a finite line must cover its bounds {0}".format((lo, hi)))
            self.bounds = (lo, hi)
    @classmethod
    def localized(cls, k = 0, coin = "+", dim = 2, bounds = None):
        """Walker at site k with the given coin state (name or vector)."""
        if isinstance(coin, str):
            vec = zeros(dim, dtype = complex)
            vec[:: dim // 2] = coin_vector(coin, 2)
        else:
            vec = asarray(coin, dtype = complex)
            dim = len(vec)
        vec = vec / sqrt(vdot(vec, vec).real)
        if bounds is None:
            amps = vec.reshape(1, dim)
            return cls(k, amps)
        lo, hi = bounds
        if not lo <= k <= hi:
            raise ValueError("initial site {0} outside the line {1}".format(k, bounds))
        amps = zeros((hi - lo + 1, dim), dtype = complex)
        amps[k - lo] = vec
        return cls(lo, amps, bounds)
    @property
    def coin_dim(self):
        return self.amplitudes.shape[1]
    @property
    def n_sites(self):
        return self.amplitudes.shape[0]
    def sites(self):
        from numpy import arange
        return arange(self.offset, self.offset + self.n_sites)
    def norm(self):
        return (np_abs(self.amplitudes)**2).sum()
    def check_norm(self, tol = None):
        if tol is None:
            tol = params.walk.norm_tol
        err = abs(self.norm() - 1.0)
        if err > tol:
            raise NumericalGuardError("walker norm drifted by {0:g}".format(err))
        return err
    def copy(self):
        return WalkState1D(self.offset, self.amplitudes.copy(), self.bounds)
    def amplitude(self, k, c):
        i = k - self.offset
        if 0 <= i < self.n_sites:
            return self.amplitudes[i, c]
        return 0j
    def __str__(self):
        return "WalkState1D(sites {0}..{1}, coin dim {2}, norm {3:.12f})".format(
            self.offset, self.offset + self.n_sites - 1, self.coin_dim, self.norm())

class WalkState2D(object):
    """Walker on the square lattice: amplitudes[i, j, c] belongs to site
    (k_offset + i, l_offset + j), coin c in (++, +-, -+, --)."""
    def __init__(self, k_offset, l_offset, amplitudes, bounds = None):
        amps = array(amplitudes, dtype = complex)
        if amps.ndim != 3 or amps.shape[2] != 4:
            raise ValueError("amplitudes must have shape (n_k, n_l, 4), got {0}".format(amps.shape))
        self.k_offset = int(k_offset)
        self.l_offset = int(l_offset)
        self.amplitudes = amps
        self.bounds = None
        if bounds is not None:
            (klo, khi), (llo, lhi) = bounds
            if (self.k_offset, self.l_offset) != (klo, llo) or amps.shape[:2] != (khi - klo + 1, lhi - llo + 1):
                raise ValueError("window of a finite grid must cover its bounds {0}".format(bounds))
            self.bounds = ((int(klo), int(khi)), (int(llo), int(lhi)))
    @classmethod
    def localized(cls, site = (0, 0), coin = "++", bounds = None):
        vec = coin_vector(coin, 4) if isinstance(coin, str) else asarray(coin, dtype = complex)
        vec = vec / sqrt(vdot(vec, vec).real)
        k, l = site
        if bounds is None:
            return cls(k, l, vec.reshape(1, 1, 4))
        (klo, khi), (llo, lhi) = bounds
        if not (klo <= k <= khi and llo <= l <= lhi):
            raise ValueError("initial site {0} outside the grid {1}".format(site, bounds))
        amps = zeros((khi - klo + 1, lhi - llo + 1, 4), dtype = complex)
        amps[k - klo, l - llo] = vec
        return cls(klo, llo, amps, bounds)
    @property
    def coin_dim(self):
        return 4
    @property
    def shape(self):
        return self.amplitudes.shape[:2]
    def norm(self):
        return (np_abs(self.amplitudes)**2).sum()
    def check_norm(self, tol = None):
        if tol is None:
            tol = params.walk.norm_tol
        err = abs(self.norm() - 1.0)
        if err > tol:
            raise NumericalGuardError("walker norm drifted by {0:g}".format(err))
        return err
    def copy(self):
        return WalkState2D(self.k_offset, self.l_offset, self.amplitudes.copy(), self.bounds)
    def __str__(self):
        nk, nl = self.shape
        return "WalkState2D(k {0}..{1}, l {2}..{3}, norm {4:.12f})".format(
            self.k_offset, self.k_offset + nk - 1, self.l_offset, self.l_offset + nl - 1, self.norm())


#### parameters of the walks ####

class GeneralShiftParams(object):
    """Transfer probability c and phase delta_o of an imperfect shift."""
    def __init__(self, c = 1.0, delta_o = 0.0):
        if not 0 <= c <= 1:
            raise ValueError("shift transfer c must lie in [0, 1], got {0}".format(c))
        self.c = float(c)
        self.delta_o = float(delta_o)
    def pair_matrix(self):
        """Action on the pair (|k,+>, |k+1,->)."""
        a, b = sqrt(1 - self.c), sqrt(self.c)
        return array([[a * exp(1j*self.delta_o), b],
                      [b, -a * exp(-1j*self.delta_o)]])
    def __str__(self):
        return "GeneralShiftParams(c={0:g}, delta_o={1:g})".format(self.c, self.delta_o)

class SearchSetup(object):
    """side x side grid with sites 1..side in both directions."""
    def __init__(self, side, marked = None):
        side = int(side)
        if side < 2:
            raise ValueError("search grid side must be at least 2, got {0}".format(side))
        if marked is not None:
            marked = (int(marked[0]), int(marked[1]))
            if not (1 <= marked[0] <= side and 1 <= marked[1] <= side):
                raise ValueError("marked vertex {0} outside the {1}x{1} grid".format(marked, side))
        self.side = side
        self.marked = marked
        self.boundary = "reflecting"
    @property
    def N(self):
        return self.side**2
    def bounds(self):
        return ((1, self.side), (1, self.side))
    def site_coins(self, marked_coin = None):
        if self.marked is None:
            return None
        return {self.marked: marked_coin or coin_c1()}
    def __str__(self):
        return "SearchSetup({0}x{0}, marked={1})".format(self.side, self.marked)


#### coin ####

def _is_identity(coin):
    return array_equal(coin.matrix, eye(coin.dim))

def apply_coin(state, coin, site_override = None):
    """Apply coin at every site, sites in site_override (site -> CoinOp)
    get their own coin.  Returns a new state."""
    if coin.dim != state.coin_dim:
        raise ValueError("coin of dimension {0} on a walker with coin dimension {1}".format(coin.dim, state.coin_dim))
    new = state.copy()
    if not _is_identity(coin):
        new.amplitudes = state.amplitudes.dot(coin.matrix.T)
    if site_override:
        for site, c in site_override.items():
            if c.dim != state.coin_dim:
                raise ValueError("override coin at {0} has dimension {1}".format(site, c.dim))
            idx = _site_index(state, site)
            if idx is not None:
                new.amplitudes[idx] = c.matrix.dot(state.amplitudes[idx])
    return new

def _site_index(state, site):
    if isinstance(state, WalkState1D):
        i = int(site) - state.offset
        return i if 0 <= i < state.n_sites else None
    i, j = site[0] - state.k_offset, site[1] - state.l_offset
    nk, nl = state.shape
    if 0 <= i < nk and 0 <= j < nl:
        return (i, j)
    return None


#### shifts ####

def _shift_axis(a, flip, finite):
    """Move a[:, ..., 0] one site up and a[:, ..., 1] one site down along
    axis 0.  flip exchanges the coin on a move.  Infinite windows grow by
    one site on each side."""
    plus, minus = a[..., 0], a[..., 1]
    tp, tm = (1, 0) if flip else (0, 1)
    if finite:
        out = zeros_like(a)
        out[1:, ..., tp] += plus[:-1]
        out[:-1, ..., tm] += minus[1:]
        out[-1, ..., 1 - tp] += plus[-1]
        out[0, ..., 1 - tm] += minus[0]
    else:
        out = zeros((a.shape[0] + 2,) + a.shape[1:], dtype = complex)
        out[2:, ..., tp] += plus
        out[:-2, ..., tm] += minus
    return out

def _shift_1d(state, flip):
    n, d = state.amplitudes.shape
    a = state.amplitudes.reshape(n, 2, d // 2).transpose(0, 2, 1)
    out = _shift_axis(a, flip, state.bounds is not None)
    amps = out.transpose(0, 2, 1).reshape(out.shape[0], d)
    offset = state.offset if state.bounds is not None else state.offset - 1
    return WalkState1D(offset, amps, state.bounds)

def shift_standard_1d(state):
    """|k,+-> -> |k+-1,+->"""
    return _shift_1d(state, flip = False)

def shift_flipflop_1d(state):
    """|k,+-> -> |k+-1,-+>"""
    return _shift_1d(state, flip = True)

def _grown(state):
    if state.bounds is not None:
        return state.offset, state.amplitudes.copy()
    n, d = state.amplitudes.shape
    amps = zeros((n + 2, d), dtype = complex)
    amps[1:-1] = state.amplitudes
    return state.offset - 1, amps

def shift_pair_1d(state, pair_op, edge_op = None):
    """Apply pair_op (2N x 2N) to every neighbouring pair
    (|k,+ levels>, |k+1,- levels>).  Unpaired edge amplitudes of a finite
    line belong to idle boundary traps, edge_op (N x N) acts on them,
    by default they are left alone."""
    m = pair_op.matrix if isinstance(pair_op, CoinOp) else asarray(pair_op, dtype = complex)
    d = state.coin_dim
    if m.shape != (d, d):
        raise ValueError("pair operator of shape {0} on coin dimension {1}".format(m.shape, d))
    offset, amps = _grown(state)
    h = d // 2
    v = concatenate([amps[:-1, :h], amps[1:, h:]], axis = 1)
    w = v.dot(m.T)
    amps[:-1, :h] = w[:, :h]
    amps[1:, h:] = w[:, h:]
    if edge_op is not None and state.bounds is not None:
        e = asarray(edge_op, dtype = complex)
        if e.shape != (h, h):
            raise ValueError("edge operator of shape {0} on {1} levels".format(e.shape, h))
        amps[0, h:] = e.dot(amps[0, h:])
        amps[-1, :h] = e.dot(amps[-1, :h])
    return WalkState1D(offset, amps, state.bounds)

def shift_general_1d(state, shift_params):
    """O'|k,+-> = sqrt(c)|k+-1,-+> +- sqrt(1-c) e^{+-i delta_o}|k,+->"""
    if not 0 <= shift_params.c <= 1:
        raise ValueError("shift transfer c must lie in [0, 1], got {0}".format(shift_params.c))
    m = kron(shift_params.pair_matrix(), eye(state.coin_dim // 2))
    return shift_pair_1d(state, m)

def _shift_2d(state, flip_k, flip_l):
    finite = state.bounds is not None
    nk, nl, _ = state.amplitudes.shape
    a = state.amplitudes.reshape(nk, nl, 2, 2)
    # k moves with the SD sign
    a = _shift_axis(a.transpose(0, 1, 3, 2), flip_k, finite).transpose(0, 1, 3, 2)
    # l moves with the HF sign
    a = _shift_axis(a.transpose(1, 0, 2, 3), flip_l, finite).transpose(1, 0, 2, 3)
    amps = a.reshape(a.shape[0], a.shape[1], 4)
    if finite:
        return WalkState2D(state.k_offset, state.l_offset, amps, state.bounds)
    return WalkState2D(state.k_offset - 1, state.l_offset - 1, amps)

def shift_2d(state):
    """|(k,l),ab> -> |(k+a,l+b),(-a)b>"""
    return _shift_2d(state, flip_k = True, flip_l = False)

def shift_flipflop_2d(state, boundary = "reflecting"):
    """|(k,l),ab> -> |(k+a,l+b),(-a)(-b)>; on a finite grid a blocked
    component keeps its position and its coin sign."""
    if boundary != "reflecting":
        raise ValueError("unknown boundary rule {0!r}".format(boundary))
    return _shift_2d(state, flip_k = True, flip_l = True)

_shifts_1d = {"standard": shift_standard_1d, "flipflop": shift_flipflop_1d}
_shifts_2d = {"standard": shift_2d, "flipflop": shift_flipflop_2d}


#### steps and evolution ####

def walk_step_1d(state, coin, shift = "standard", shift_params = None, site_override = None):
    """Coin followed by one shift.  shift is 'standard', 'flipflop',
    'general' (with shift_params) or a pair operator."""
    state = apply_coin(state, coin, site_override)
    if isinstance(shift, str):
        if shift == "general":
            return shift_general_1d(state, shift_params or GeneralShiftParams())
        if shift not in _shifts_1d:
            raise ValueError("unknown shift {0!r}".format(shift))
        return _shifts_1d[shift](state)
    return shift_pair_1d(state, shift)

def walk_step_2d(state, coin, shift = "flipflop", site_override = None):
    state = apply_coin(state, coin, site_override)
    if shift not in _shifts_2d:
        raise ValueError("unknown shift {0!r}".format(shift))
    return _shifts_2d[shift](state)

def phase_walk_step(state, phi, coin, shift = "standard", shift_params = None):
    """Step of the phase walk: diag(1, e^{i phi}) on the coin, then a
    normal step."""
    state = apply_coin(state, phase_coin(phi, state.coin_dim))
    return walk_step_1d(state, coin, shift, shift_params)

def evolve_1d(state, steps, coin, shift = "standard", shift_params = None,
              site_override = None, record_every = 1, phi = None, coins = None):
    """Run steps walk steps.  Returns the final state and a list of
    (t, distribution) for t = 0, record_every, ... and the last step.

    coins, if given, is a sequence of coins used cyclically instead of
    coin; phi turns on the phase walk."""
    from .metrics import position_distribution
    if steps < 0:
        raise ValueError("number of steps must be nonnegative, got {0}".format(steps))
    records = [(0, position_distribution(state))]
    for t in range(1, steps + 1):
        c = coin if coins is None else coins[(t - 1) % len(coins)]
        if phi is None:
            state = walk_step_1d(state, c, shift, shift_params, site_override)
        else:
            state = phase_walk_step(state, phi, c, shift, shift_params)
        if t % record_every == 0 or t == steps:
            records.append((t, position_distribution(state)))
        debug_print(params.walk, "step", t, state)
    state.check_norm()
    return state, records

def evolve_2d(state, steps, coin, shift = "flipflop", site_override = None, record_every = 1):
    from .metrics import position_distribution
    if steps < 0:
        raise ValueError("number of steps must be nonnegative, got {0}".format(steps))
    records = [(0, position_distribution(state))]
    for t in range(1, steps + 1):
        state = walk_step_2d(state, coin, shift, site_override)
        if t % record_every == 0 or t == steps:
            records.append((t, position_distribution(state)))
        debug_print(params.walk, "step", t, state)
    state.check_norm()
    return state, records


#### search ####

def build_search_initial(setup):
    """Uniform superposition over all sites and coin states."""
    s = setup.side
    amps = zeros((s, s, 4), dtype = complex) + 1.0 / (2 * s)
    return WalkState2D(1, 1, amps, setup.bounds())

def search_step(state, setup, unmarked_coin = None):
    """C0 everywhere except C1 at the marked vertex, then the flip-flop
    shift with reflecting boundaries."""
    coin = unmarked_coin or coin_c0()
    return walk_step_2d(state, coin, "flipflop", setup.site_coins())

def eigen_residual(state, step):
    """Residual |W psi - lambda psi| with lambda = <psi|W psi>."""
    new = step(state)
    lam = vdot(state.amplitudes.ravel(), new.amplitudes.ravel())
    res = new.amplitudes - lam * state.amplitudes
    return sqrt((np_abs(res)**2).sum()), lam
