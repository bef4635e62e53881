"""Exact versions of the coin operators.

The pulse decompositions of the two-dimensional coins are checked here
with exact arithmetic, the floating point checks live in coins.py."""

import sympy
from sympy import Matrix, Rational, sqrt, eye, I, exp, cos, sin
from sympy.physics.quantum import TensorProduct

_half = Rational(1, 2)

def _kron(a, b):
    return Matrix(TensorProduct(a, b))

def _plus():
    return Matrix([[1, 0], [0, 0]])
def _minus():
    return Matrix([[0, 0], [0, 1]])

_exact = {
    "H": lambda: Matrix([[1, 1], [1, -1]]) / sqrt(2),
    "X_NOT": lambda: Matrix([[0, 1], [1, 0]]),
    "X_PHASE": lambda: Matrix([[1, 0], [0, -1]]),
    "C2D_ent": lambda: _half * Matrix([[1,  1,  1, -1],
                                       [1, -1,  1,  1],
                                       [1,  1, -1,  1],
                                       [1, -1, -1, -1]]),
    "C0": lambda: _half * (Matrix.ones(4, 4) - 2 * eye(4)),
    "C1": lambda: -eye(4),
    }
_exact["C2D"] = lambda: _kron(_exact["H"](), _exact["H"]())
_exact["X'_NOT"] = lambda: (_kron(_plus(), _exact["X_NOT"]()) +
                            _kron(_minus(), eye(2)))

def exact_coin(name):
    """sympy Matrix of a named coin in the (++, +-, -+, --) ordering."""
    if name not in _exact:
        raise ValueError("no exact form for coin {0!r}".format(name))
    return _exact[name]()

def exact_tunneling_coin(theta = None):
    if theta is None:
        theta = sympy.Symbol("theta", real = True)
    return Matrix([[cos(theta / 2), I * sin(theta / 2)],
                   [I * sin(theta / 2), cos(theta / 2)]])

def exact_biased_coin(p = None, delta = None):
    if p is None:
        p = sympy.Symbol("p", positive = True)
    if delta is None:
        delta = sympy.Symbol("Delta_C", real = True)
    return Matrix([[sqrt(p), sqrt(1 - p) * exp(-I * delta)],
                   [sqrt(1 - p) * exp(I * delta), -sqrt(p)]])

def decomposition_residuals():
    """Exact differences between each 2D coin and its pulse sequence,
    all entries are zero when the identities hold."""
    h = exact_coin("H")
    x = exact_coin("X_NOT")
    xp = exact_coin("X'_NOT")
    hz = _kron(h, exact_coin("X_PHASE"))
    ent = _kron(eye(2), h) * (_kron(h, _plus()) +
                                      _kron(x * h, _minus()))
    res = {
        "C2D_ent": exact_coin("C2D_ent") - ent,
        "-C0": -exact_coin("C0") - xp * hz * xp * hz * xp,
        "-C1": -exact_coin("C1") - hz * hz,
        "C0^2": exact_coin("C0") ** 2 - eye(4),
        }
    return dict((k, sympy.simplify(v)) for k, v in res.items())

def verify_identities():
    """True if all pulse decompositions hold exactly."""
    return all(all(e == 0 for e in m) for m in decomposition_residuals().values())

def is_unitary(m):
    d = sympy.simplify(m.H * m - eye(m.shape[0]))
    return all(e == 0 for e in d)

if __name__ == "__main__":
    for k, v in decomposition_residuals().items():
        print(k, v)
    print("biased coin unitary:", is_unitary(exact_biased_coin(Rational(4, 5), Rational(3, 10))))
