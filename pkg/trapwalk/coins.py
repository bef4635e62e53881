"""Coin operators of the walks.

One-dimensional coins act on the basis (+, -).  Two-dimensional coins
act on (++, +-, -+, --) where the first sign is the spatially
delocalized qubit (SD) and the second the hyperfine qubit (HF); every
4x4 matrix in the package uses this ordering."""

from __future__ import print_function

from numpy import array, asarray, eye, kron, diag, exp, sqrt, cos, sin, pi
from numpy import abs as np_abs
from numpy import outer, allclose
from scipy.linalg import polar

from . import params

class CoinOp(object):
    """Dense unitary acting on the coin of a walker."""
    def __init__(self, matrix, name = None, tol = None):
        m = array(matrix, dtype = complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("coin must be a square matrix, got shape {0}".format(m.shape))
        if m.shape[0] % 2 != 0:
            raise ValueError("coin dimension must be even, got {0}".format(m.shape[0]))
        if tol is None:
            tol = params.walk.unitarity_tol
        err = unitarity_error(m)
        if err > tol:
            raise ValueError("coin {0} is not unitary: max|U^+U - I| = {1:g}".format(name, err))
        self.matrix = m
        self.dim = m.shape[0]
        self.name = name
    def __matmul__(self, other):
        return CoinOp(self.matrix.dot(other.matrix), name = "{0}*{1}".format(self.getName(), other.getName()))
    def __neg__(self):
        return CoinOp(-self.matrix, name = "-" + self.getName())
    def kron(self, other):
        """Tensor product, self acting on the first factor."""
        return CoinOp(kron(self.matrix, other.matrix), name = "{0}x{1}".format(self.getName(), other.getName()))
    def dagger(self):
        return CoinOp(self.matrix.conj().T, name = self.getName() + "^+")
    def allclose(self, other, atol = 1e-12):
        other = other.matrix if isinstance(other, CoinOp) else asarray(other)
        return allclose(self.matrix, other, rtol = 0, atol = atol)
    def unitarity_error(self):
        return unitarity_error(self.matrix)
    def getName(self):
        if self.name is None:
            return "U{0}".format(self.dim)
        return self.name
    def __str__(self):
        return "{0}(dim={1})\n{2}".format(self.getName(), self.dim, self.matrix)
    def __repr__(self):
        return "CoinOp({0}, dim={1})".format(self.getName(), self.dim)

def unitarity_error(m):
    m = asarray(m)
    return np_abs(m.conj().T.dot(m) - eye(m.shape[0])).max()

def nearest_unitary(m):
    """Unitary factor of the polar decomposition of m."""
    u, _ = polar(asarray(m, dtype = complex))
    return u


#### one-dimensional coins ####

def identity_coin(dim = 2):
    return CoinOp(eye(dim), name = "I" + str(dim))

def hadamard_coin():
    return CoinOp(array([[1, 1], [1, -1]]) / sqrt(2), name = "H")

def tunneling_coin(theta):
    """Coin of a tunneling pulse of area theta, pi/2 pulse splits and
    pi pulse exchanges the populations."""
    c, s = cos(theta / 2.0), sin(theta / 2.0)
    return CoinOp([[c, 1j*s], [1j*s, c]], name = "T({0:g})".format(theta))

def biased_coin(p, delta_c = 0.0):
    """C'|+> = sqrt(p)|+> + sqrt(1-p) e^{i delta_c}|->, C'|-> is the
    orthogonal completion sqrt(1-p) e^{-i delta_c}|+> - sqrt(p)|->."""
    if not 0 <= p <= 1:
        raise ValueError("bias p must lie in [0, 1], got {0}".format(p))
    a, b = sqrt(p), sqrt(1 - p)
    return CoinOp([[a, b * exp(-1j*delta_c)],
                   [b * exp(1j*delta_c), -a]],
                  name = "C'({0:g},{1:g})".format(p, delta_c))

def phase_coin(phi, dim = 2):
    """diag(1, e^{i phi}) on the (+, -) coin, repeated over levels."""
    d = [1.0] * (dim // 2) + [exp(1j*phi)] * (dim // 2)
    return CoinOp(diag(d), name = "P({0:g})".format(phi))

def multilevel_coin(matrix, name = None):
    """Coin over (side, level) with side-major ordering, e.g. an
    effective pulse unitary.  Input that is not unitary (a pulse map
    with leakage) is replaced by its nearest unitary."""
    m = asarray(matrix, dtype = complex)
    if unitarity_error(m) > params.walk.unitarity_tol:
        m = nearest_unitary(m)
    return CoinOp(m, name = name or "M{0}".format(m.shape[0]))


#### helper operators of the two-dimensional walk ####

_PLUS = outer([1, 0], [1, 0])
_MINUS = outer([0, 1], [0, 1])
_X = array([[0, 1], [1, 0]])

def coin_x_not():
    return CoinOp(_X, name = "X_NOT")

def coin_x_phase():
    return CoinOp(diag([1, -1]), name = "X_PHASE")

def coin_x_prime_not():
    """|+><+| (x) X + |-><-| (x) I, a NOT on HF controlled by SD."""
    return CoinOp(kron(_PLUS, _X) + kron(_MINUS, eye(2)), name = "X'_NOT")


#### two-dimensional coins ####

def coin_separable_2d():
    return CoinOp(kron(hadamard_coin().matrix, hadamard_coin().matrix), name = "C2D")

def coin_entangled_2d():
    return CoinOp(0.5 * array([[1,  1,  1, -1],
                               [1, -1,  1,  1],
                               [1,  1, -1,  1],
                               [1, -1, -1, -1]]), name = "C2D_ent")

def coin_c0():
    """Grover diffusion coin: -1/2 on the diagonal, 1/2 elsewhere."""
    return CoinOp(0.5 * (array([[1.0] * 4] * 4) - 2 * eye(4)), name = "C0")

def coin_c1():
    return CoinOp(-eye(4), name = "C1")

def entangled_decomposition():
    """(I x H_HF) (H_SD x |+><+| + X_NOT H_SD x |-><-|)"""
    h = hadamard_coin().matrix
    m = kron(eye(2), h).dot(kron(h, _PLUS) + kron(_X.dot(h), _MINUS))
    return CoinOp(m, name = "C2D_ent(pulses)")

def c0_decomposition():
    """X'_NOT (H_SD x X_PHASE) X'_NOT (H_SD x X_PHASE) X'_NOT, equals -C0"""
    xp = coin_x_prime_not()
    hz = hadamard_coin().kron(coin_x_phase())
    return xp @ hz @ xp @ hz @ xp

def c1_decomposition():
    """(H_SD x X_PHASE)^2, equals -C1"""
    hz = hadamard_coin().kron(coin_x_phase())
    return hz @ hz

def schmidt_rank(coin, tol = 1e-10):
    """Operator Schmidt rank of a 4x4 coin with respect to SD x HF."""
    from numpy.linalg import svd
    m = coin.matrix.reshape(2, 2, 2, 2)          # (sd_out, hf_out, sd_in, hf_in)
    r = m.transpose(0, 2, 1, 3).reshape(4, 4)    # (sd_out sd_in, hf_out hf_in)
    sv = svd(r, compute_uv = False)
    return int((sv > tol).sum())


#### coin states and lookup by name ####

def coin_vector(name, dim = 2):
    """Initial coin state: '+', '-' or 'sym' for (|+> + i|->)/sqrt(2);
    in the 2D case two signs, e.g. '++'."""
    one = {"+": array([1, 0], dtype = complex),
           "-": array([0, 1], dtype = complex),
           "sym": array([1, 1j]) / sqrt(2)}
    if dim == 2:
        if name not in one:
            raise ValueError("unknown coin state {0!r}".format(name))
        return one[name]
    if dim == 4:
        if len(name) != 2 or name[0] not in "+-" or name[1] not in "+-":
            raise ValueError("unknown 2D coin state {0!r}".format(name))
        return kron(one[name[0]], one[name[1]])
    raise ValueError("no named coin states for dimension {0}".format(dim))

def coin_by_name(name, **kwargs):
    """Coin for a configuration name, parameters as keyword arguments."""
    if name == "hadamard":
        return hadamard_coin()
    if name == "tunneling":
        return tunneling_coin(kwargs.get("theta", pi / 2))
    if name == "biased":
        return biased_coin(kwargs.get("p", 0.5), kwargs.get("delta_c", 0.0))
    if name == "identity":
        return identity_coin(kwargs.get("dim", 2))
    if name == "separable":
        return coin_separable_2d()
    if name == "entangled":
        return coin_entangled_2d()
    if name == "c0":
        return coin_c0()
    if name == "c1":
        return coin_c1()
    raise ValueError("unknown coin {0!r}".format(name))

if __name__ == "__main__":
    print(coin_entangled_2d())
    print(entangled_decomposition())
    print(-c0_decomposition())
    print("Schmidt rank of C2D_ent:", schmidt_rank(coin_entangled_2d()))
