"""Schmidt decomposition and entanglement invariants for two-qudit pure states.

A pure state of two d-level systems is a unit vector of d^2 amplitudes
mu_ij (row index = subsystem A, column index = subsystem B).  Its
entanglement content is carried entirely by the Schmidt coefficients
kappa_j >= 0, or equivalently by the d-1 invariants

    I_j      = Tr[rho_A^(j+1)] = sum_r kappa_r^(2(j+1)),      j = 1..d-1,
    I'_j     = d^j / (d^j - 1) * (1 - I_j)        in [0, 1],

with the generalized concurrence C = sqrt( d/(d-1) * (1 - I_1) ).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import tensor
from .errors import DimMismatch, NotNormalized
from .yang_baxter import validate_dimension

NORM_TOL = 1e-12

#: Schmidt coefficients below this are treated as zero when building the
#: B-side local basis (the corresponding columns are completed by
#: Gram-Schmidt instead of dividing by a vanishing kappa).
KAPPA_CUTOFF = 1e-9


@dataclass(frozen=True)
class TwoQuditState:
    """Unit vector of d^2 amplitudes mu_ij, stored at index i*d + j."""

    d: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        d = validate_dimension(self.d)
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != d * d:
            raise DimMismatch(f"expected {d * d} amplitudes, got {amps.size}")
        tensor.require_finite(amps, "state amplitudes")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def matrix(self) -> np.ndarray:
        """Amplitudes reshaped to the d x d coefficient matrix."""
        return self.amplitudes.reshape(self.d, self.d)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def basis_state(d: int, i: int, j: int) -> TwoQuditState:
    """The computational product state |i>|j>."""
    d = validate_dimension(d)
    amps = np.zeros(d * d, dtype=complex)
    amps[i * d + j] = 1.0
    return TwoQuditState(d=d, amplitudes=amps)


def _require_normalized(state: TwoQuditState) -> None:
    if abs(state.norm() - 1.0) > NORM_TOL:
        raise NotNormalized(f"state norm {state.norm():.15f} is not 1 within {NORM_TOL:.0e}")


def reduced_density(state: TwoQuditState, side: str = "A") -> np.ndarray:
    """Reduced density matrix of one subsystem; Hermitian, PSD, unit trace."""
    _require_normalized(state)
    a = state.matrix
    if side == "A":
        return a @ a.conj().T
    if side == "B":
        return a.T @ a.conj()
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


@dataclass(frozen=True)
class SchmidtDecomposition:
    """kappa (descending, >= 0) and the local unitaries realizing them.

    The input state is recovered, up to the decomposition's numerical error,
    as ``(local_A (x) local_B) sum_j kappa_j |jj>``: column j of ``local_A``
    and of ``local_B`` are the A- and B-side Schmidt vectors.
    """

    kappa: np.ndarray
    local_A: np.ndarray = field(repr=False)
    local_B: np.ndarray = field(repr=False)

    def reassemble(self) -> np.ndarray:
        """Amplitude vector of (local_A (x) local_B) sum_j kappa_j |jj>."""
        coeff = self.local_A @ np.diag(self.kappa) @ self.local_B.T
        return coeff.reshape(-1)


def _complete_orthonormal(columns: np.ndarray, filled: int) -> np.ndarray:
    """Fill the remaining columns by Gram-Schmidt against the first ones."""
    d = columns.shape[0]
    out = columns.copy()
    k = filled
    for cand in range(d):
        if k == d:
            break
        v = np.zeros(d, dtype=complex)
        v[cand] = 1.0
        for j in range(k):
            v -= out[:, j] * np.vdot(out[:, j], v)
        nrm = np.linalg.norm(v)
        if nrm > 0.5:  # candidate not (nearly) inside the current span
            out[:, k] = v / nrm
            k += 1
    if k != d:
        raise RuntimeError("orthonormal completion failed")  # unreachable for d <= 8
    return out


def schmidt_decompose(state: TwoQuditState) -> SchmidtDecomposition:
    """Schmidt coefficients and local bases via the spectral form of rho_A.

    kappa_j are the descending square roots of the eigenvalues of rho_A; the
    A-side vectors are the eigenvectors and the B-side vectors follow as
    b_j = (coeff matrix)^T conj(u_j) / kappa_j.  Phases are absorbed into
    local_B so every kappa_j is real and non-negative; columns belonging to
    vanishing kappa are completed by Gram-Schmidt.
    """
    _require_normalized(state)
    d = state.d
    rho = reduced_density(state, "A")
    evals, evecs = tensor.hermitian_eigensystem(rho)
    kappa = np.sqrt(np.clip(evals, 0.0, None))
    a = state.matrix
    local_b = np.zeros((d, d), dtype=complex)
    filled = 0
    for j in range(d):
        if kappa[j] > KAPPA_CUTOFF:
            local_b[:, j] = (a.T @ np.conj(evecs[:, j])) / kappa[j]
            filled = j + 1
    local_b = _complete_orthonormal(local_b, filled)
    return SchmidtDecomposition(kappa=kappa, local_A=evecs, local_B=local_b)


@dataclass(frozen=True)
class InvariantVector:
    """Invariants I_j, normalized I'_j (j = 1..d-1) and the concurrence."""

    d: int
    I: np.ndarray
    Iprime: np.ndarray
    concurrence: float


def invariants_from_kappa_sq(d: int, kappa_sq: np.ndarray) -> InvariantVector:
    """Invariants of a state whose squared Schmidt coefficients are given."""
    d = validate_dimension(d)
    ks = np.asarray(kappa_sq, dtype=float)
    orders = np.arange(2, d + 1)  # I_j uses power j+1 of the kappa^2
    i_vals = np.array([float(np.sum(ks ** p)) for p in orders])
    weights = np.array([d ** j / (d ** j - 1.0) for j in range(1, d)])
    iprime = weights * (1.0 - i_vals)
    conc = math.sqrt(max(0.0, d / (d - 1.0) * (1.0 - i_vals[0])))
    return InvariantVector(d=d, I=i_vals, Iprime=iprime, concurrence=conc)


def invariants(state: TwoQuditState) -> InvariantVector:
    """Entanglement invariants of a normalized two-qudit pure state."""
    _require_normalized(state)
    rho = reduced_density(state, "A")
    evals, _ = tensor.hermitian_eigensystem(rho)
    return invariants_from_kappa_sq(state.d, np.clip(evals, 0.0, None))


def concurrence_closed_d2(theta: float) -> float:
    """|sin(2 theta)|, the closed-form concurrence of the d=2 gate on |00>."""
    return abs(math.sin(2.0 * float(theta)))


def max_entanglement_angle(d: int) -> float | None:
    """Smallest theta in (0, pi] with cos(2 theta) = 1 - d/2, if any.

    At this angle the gate maps |00> to a maximally entangled state (all
    kappa_j equal).  The condition is solvable only for d <= 4; for d >= 5
    the required cosine falls outside [-1, 1] and None is returned.
    """
    d = validate_dimension(d)
    target = 1.0 - d / 2.0
    if abs(target) > 1.0:
        return None
    return math.acos(target) / 2.0
