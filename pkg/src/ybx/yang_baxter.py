"""Unitary Yang-Baxter gate family for two qudits.

Building blocks are the cyclic shift matrices ``P_r`` on C^d (``P_0`` is the
identity).  The coupling matrix

    M = sum_{r=1}^{d-1} P_r (x) P_r

is Hermitian with integer entries and satisfies the Hecke-type quadratic
relation ``M^2 = (d-2) M + (d-1) 1`` exactly, plus the braid-type relation
``M1 M2 M1 - M2 M1 M2 + (d-1)(M1 - M2) = 0`` on three sites.  The resulting
two-qudit gate, with spectral parameter x = e^{i theta} on the unit circle, is

    R(x) = (1/d) * ( [(d-1) x + 1/x] * 1  -  (x - 1/x) * M ).

This expanded form is finite for every theta, unlike the factored form
F(x) * (1 + G(x) M) whose weight functions blow up where (d-1)x + 1/x = 0
(reachable only at d=2, theta = pi/2 or 3*pi/2).  The residual helpers below
verify unitarity, the inverse property R(x)^dag = R(1/x), and the three-site
Yang-Baxter equation itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import tensor
from .errors import IndexOutOfRange

#: Supported qudit dimensions.  The ceiling keeps three-site checks at
#: matrices of size d^3 <= 512.
MIN_DIM = 2
MAX_DIM = 8

TWO_PI = 2.0 * math.pi


def validate_dimension(d: int) -> int:
    """Check 2 <= d <= 8 and return d as a plain int."""
    if int(d) != d:
        raise ValueError(f"qudit dimension must be an integer, got {d!r}")
    d = int(d)
    if not MIN_DIM <= d <= MAX_DIM:
        raise ValueError(f"qudit dimension must be in [{MIN_DIM}, {MAX_DIM}], got {d}")
    return d


def canonical_angle(theta: float) -> float:
    """Reduce an angle to [0, 2*pi)."""
    t = float(theta) % TWO_PI
    # fmod can round up to the period itself for tiny negative inputs
    if t >= TWO_PI:
        t -= TWO_PI
    return t


@dataclass(frozen=True)
class HeckeConstants:
    """Constants of the quadratic and braid relations for dimension d."""

    alpha: float
    beta: float
    g: float

    @classmethod
    def for_dimension(cls, d: int) -> "HeckeConstants":
        d = validate_dimension(d)
        return cls(alpha=float(d - 2), beta=float(d - 1), g=float(d - 1))


def circulation_matrix(d: int, r: int) -> np.ndarray:
    """Cyclic shift P_r = sum_i |i><(i+r) mod d| as an integer matrix.

    P_0 is the d x d identity; every P_r is a permutation matrix, hence
    unitary, and traceless for r != 0.
    """
    d = validate_dimension(d)
    if not 0 <= r < d:
        raise IndexOutOfRange(f"shift index {r} outside [0, {d})")
    p = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        p[i, (i + r) % d] = 1
    return p


def adjacent_transposition(d: int, k: int) -> np.ndarray:
    """Permutation matrix swapping basis states |k> and |k+1>."""
    d = validate_dimension(d)
    if not 0 <= k < d - 1:
        raise IndexOutOfRange(f"transposition index {k} outside [0, {d - 1})")
    p = np.eye(d, dtype=np.int64)
    p[k, k] = 0
    p[k + 1, k + 1] = 0
    p[k, k + 1] = 1
    p[k + 1, k] = 1
    return p


def adjacent_transposition_product(d: int) -> list[np.ndarray]:
    """Adjacent transpositions whose left-to-right product equals P_1.

    Returns ``[T(d-2,d-1), ..., T(1,2), T(0,1)]``; multiplying them out in
    that order reproduces ``circulation_matrix(d, 1)`` exactly.  All d-1
    transpositions are required, including T(0,1): chasing basis vectors
    through the product shows e_0 -> e_{d-1} and e_j -> e_{j-1} otherwise,
    which is precisely the P_1 permutation.
    """
    d = validate_dimension(d)
    return [adjacent_transposition(d, k) for k in range(d - 2, -1, -1)]


def m_matrix(d: int) -> np.ndarray:
    """Integer coupling matrix M = sum_{r=1}^{d-1} P_r (x) P_r on C^{d^2}."""
    d = validate_dimension(d)
    m = np.zeros((d * d, d * d), dtype=np.int64)
    for r in range(1, d):
        p = circulation_matrix(d, r)
        m += tensor.kron(p, p)
    return m


@dataclass(frozen=True)
class WeightPair:
    """Weight functions of the factored gate form at one spectral point.

    F = ((d-1) x + 1/x) / d and G = -(x - 1/x) / ((d-1) x + 1/x) with
    x = e^{i theta}.  ``singular`` marks the points where the denominator of
    G vanishes; there G is reported as 0 and must not be used.
    """

    F: complex
    G: complex
    singular: bool


SINGULAR_TOL = 1e-12


def weight_functions(d: int, theta: float) -> WeightPair:
    """Evaluate the weight pair (F, G) at x = e^{i theta}.

    On the unit circle 1/x is the complex conjugate of x, which is exact.
    F(theta=0) = 1 and G(theta=0) = 0, matching the gate's identity limit.
    """
    d = validate_dimension(d)
    x = np.exp(1j * canonical_angle(theta))
    xinv = np.conj(x)
    denom = (d - 1) * x + xinv
    f = denom / d
    if abs(denom) < SINGULAR_TOL:
        return WeightPair(F=complex(f), G=0j, singular=True)
    g = -(x - xinv) / denom
    return WeightPair(F=complex(f), G=complex(g), singular=False)


@dataclass(frozen=True)
class YangBaxterGate:
    """A unitary two-qudit gate R(x) with x = e^{i theta}.

    ``theta`` is stored canonicalized to [0, 2*pi).  At theta = 0 the matrix
    is the exact identity (integer entries, no rounding).
    """

    d: int
    theta: float
    matrix: np.ndarray = field(repr=False)


def r_matrix(d: int, theta: float) -> YangBaxterGate:
    """Build R(x) = (1/d) { [(d-1)x + 1/x] 1 - (x - 1/x) M } at x = e^{i theta}."""
    d = validate_dimension(d)
    t = canonical_angle(theta)
    dim = d * d
    if t == 0.0:
        return YangBaxterGate(d=d, theta=0.0, matrix=np.eye(dim, dtype=complex))
    x = np.exp(1j * t)
    xinv = np.conj(x)
    a = ((d - 1) * x + xinv) / d
    b = -(x - xinv) / d
    mat = a * np.eye(dim, dtype=complex) + b * m_matrix(d)
    return YangBaxterGate(d=d, theta=t, matrix=mat)


def _three_site_pair(d: int, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """Embed R(theta) on sites (1,2) and (2,3) of a three-qudit register."""
    gate = r_matrix(d, theta).matrix
    ident = np.eye(d, dtype=complex)
    return tensor.kron(gate, ident), tensor.kron(ident, gate)


def ybe_residual(d: int, theta1: float, theta2: float) -> float:
    """Max-norm residual of the Yang-Baxter equation at (x, y).

    With x = e^{i theta1}, y = e^{i theta2} this evaluates
    ``R1(x) R2(xy) R1(y) - R2(y) R1(xy) R2(x)`` on the d^3-dimensional
    three-site space, where R1 = R (x) 1 and R2 = 1 (x) R.
    """
    d = validate_dimension(d)
    r1_x, r2_x = _three_site_pair(d, theta1)
    r1_y, r2_y = _three_site_pair(d, theta2)
    r1_xy, r2_xy = _three_site_pair(d, theta1 + theta2)
    lhs = r1_x @ r2_xy @ r1_y
    rhs = r2_y @ r1_xy @ r2_x
    return tensor.max_norm_distance(lhs, rhs)


def unitarity_residuals(d: int, theta: float) -> tuple[float, float]:
    """(r_unit, r_inverse) for the gate at theta.

    r_unit is the unitarity residual max |R R^dag - 1|; r_inverse is
    max |R(x)^dag - R(1/x)| with 1/x realized as the angle -theta.
    """
    gate = r_matrix(d, theta).matrix
    inv_gate = r_matrix(d, -theta).matrix
    r_unit = tensor.unitarity_residual(gate)
    r_inverse = tensor.max_norm_distance(tensor.dagger(gate), inv_gate)
    return r_unit, r_inverse


def hecke_quadratic_residual(d: int) -> int:
    """Max |M^2 - (d-2) M - (d-1) 1| in exact integer arithmetic."""
    d = validate_dimension(d)
    m = m_matrix(d)
    dim = d * d
    res = m @ m - (d - 2) * m - (d - 1) * np.eye(dim, dtype=np.int64)
    return int(np.max(np.abs(res)))


def braid_hecke_residual(d: int) -> int:
    """Max-norm of the three-site braid relation, exact integer arithmetic.

    With M1 = M (x) 1 and M2 = 1 (x) M on the d^3 space this evaluates
    ``M1 M2 M1 - M2 M1 M2 + (d-1)(M1 - M2)``, which vanishes identically.
    """
    d = validate_dimension(d)
    m = m_matrix(d)
    ident = np.eye(d, dtype=np.int64)
    m1 = tensor.kron(m, ident)
    m2 = tensor.kron(ident, m)
    res = m1 @ m2 @ m1 - m2 @ m1 @ m2 + (d - 1) * (m1 - m2)
    return int(np.max(np.abs(res)))
