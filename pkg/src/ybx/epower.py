"""Entangling power of two-qudit unitaries: Monte-Carlo and closed form.

The entangling power e_p(U) is the average linear entropy E = 1 - Tr[rho_A^2]
of U applied to Haar-random product states.  It has a closed form

    e_p(U) = (d/(d+1))^2 [ E(U) + E(US) - E(S) ]

where S is the swap and E(.) on an operator is its linear entropy under the
input/output index regrouping (operator entanglement).  The generalized
orders j >= 2 average the normalized invariant I'_j instead and have no known
closed form, so they are Monte-Carlo only.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import sampling, tensor
from .entanglement import TwoQuditState
from .errors import DimMismatch, NotUnitary
from .yang_baxter import validate_dimension


def swap_matrix(d: int) -> np.ndarray:
    """The two-qudit permutation S|ij> = |ji> as a d^2 x d^2 0/1 matrix."""
    d = validate_dimension(d)
    s = np.zeros((d * d, d * d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            s[j * d + i, i * d + j] = 1
    return s


def _square_qudit_dim(u: np.ndarray) -> int:
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {u.shape}")
    d = math.isqrt(u.shape[0])
    if d * d != u.shape[0]:
        raise DimMismatch(f"matrix side {u.shape[0]} is not a perfect square")
    return d


def operator_linear_entropy(u) -> float:
    """Linear entropy of the operator itself under index regrouping.

    Treating U_{(ij),(kl)} as amplitudes and regrouping into the bipartition
    (i,k | j,l) gives the matrix W; the result is 1 - Tr[(WW+)^2]/d^4.  Zero
    exactly for identity and for any A (x) B.
    """
    u = np.asarray(u, dtype=complex)
    d = _square_qudit_dim(u)
    w = u.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    m = w @ w.conj().T
    return 1.0 - float(np.sum(np.abs(m) ** 2)) / d**4


def _require_unitary(u: np.ndarray) -> None:
    res = tensor.unitarity_residual(u)
    if res > 1e-10:
        raise NotUnitary(f"unitarity residual {res:.3e} exceeds 1e-10")


def entangling_power_closed(u, d: int | None = None) -> float:
    """Closed-form e_p(U) via operator linear entropies and the swap."""
    u = np.asarray(u, dtype=complex)
    d_found = _square_qudit_dim(u)
    if d is not None and validate_dimension(d) != d_found:
        raise DimMismatch(f"matrix side {u.shape[0]} does not match d={d}")
    d = d_found
    _require_unitary(u)
    s = swap_matrix(d).astype(complex)
    scale = (d / (d + 1.0)) ** 2
    return scale * (operator_linear_entropy(u) + operator_linear_entropy(u @ s) - operator_linear_entropy(s))


def haar_product_state(d: int, rng: np.random.Generator) -> TwoQuditState:
    """|Phi_A> (x) |Phi_B> with independent Haar-random unit factors."""
    d = validate_dimension(d)
    a = sampling.haar_vector(rng, d)[0]
    b = sampling.haar_vector(rng, d)[0]
    return TwoQuditState(d=d, amplitudes=np.outer(a, b).reshape(-1))


@dataclass(frozen=True)
class EntanglingPowerEstimate:
    """Monte-Carlo mean and standard error of the order-j entangling power."""

    mean: float
    std_error: float
    n_samples: int
    j: int


def _epower_block(seed: int, block: int, size: int, u: np.ndarray = None, j: int = 1):
    d = math.isqrt(u.shape[0])
    rng = sampling.block_generator(seed, block)
    a = sampling.haar_vector(rng, d, size)
    b = sampling.haar_vector(rng, d, size)
    prod = np.einsum("ni,nj->nij", a, b).reshape(size, d * d)
    out = (prod @ u.T).reshape(size, d, d)
    rho = out @ np.conj(np.transpose(out, (0, 2, 1)))
    if j == 1:
        # raw linear entropy 1 - Tr[rho^2]; Tr[rho^2] = squared Frobenius norm
        purity = np.einsum("nij,nij->n", rho, np.conj(rho)).real
        return (1.0 - purity,)
    evals = np.linalg.eigvalsh(rho)
    i_j = np.sum(np.clip(evals, 0.0, None) ** (j + 1), axis=1)
    return (d**j / (d**j - 1.0) * (1.0 - i_j),)


def entangling_power_mc(
    u, j: int = 1, n: int = 100_000, seed: int = 42, workers: int | None = None
) -> EntanglingPowerEstimate:
    """Average order-j output entanglement over n Haar product inputs.

    j=1 averages the raw linear entropy (matching the closed form); j >= 2
    averages the normalized invariant I'_j.  Deterministic in (seed, n) and
    independent of the worker count.
    """
    u = np.asarray(u, dtype=complex)
    d = _square_qudit_dim(u)
    if not 1 <= j <= d - 1:
        raise ValueError(f"invariant order j must be in 1..{d - 1}, got {j}")
    _require_unitary(u)
    fn = functools.partial(_epower_block, u=u, j=j)
    (values,) = sampling.run_blocks(fn, seed, n, workers)
    mean = float(np.mean(values))
    std_error = float(np.std(values, ddof=1) / math.sqrt(n)) if n > 1 else float("inf")
    return EntanglingPowerEstimate(mean=mean, std_error=std_error, n_samples=n, j=j)
