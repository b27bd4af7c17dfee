"""Dense complex linear algebra sized for small quantum systems.

Matrices are plain numpy arrays in row-major order (complex128 for generic
values, int64 where exact arithmetic matters); state vectors are 1-D arrays.
Dimensions stay at or below 512 (three qudits of dimension <= 8), so a dense
representation and a Jacobi eigensolver are entirely adequate.

All functions are pure and all arrays are treated as immutable, so values can
be shared freely between concurrent workers.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import DimMismatch, NotHermitian

#: Tolerance below which a matrix counts as unitary.
UNITARY_TOL = 1e-12

#: Tolerance for the Hermiticity precondition of the eigensolver.
HERMITIAN_TOL = 1e-10


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; entry ((i*rB+k),(j*cB+l)) = A[i,j] * B[k,l].

    Thin alias for ``numpy.kron`` so the whole toolkit uses one spelling.
    Integer inputs stay integer, which keeps the Hecke checks exact.
    """
    return np.kron(a, b)


def kron_vec(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Tensor product of two state vectors, index convention i*len(v)+j."""
    return np.kron(u, v)


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def max_norm_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Largest entrywise absolute difference between two equal-shape arrays."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimMismatch(f"shape mismatch: {a.shape} vs {b.shape}")
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a - b)))


def unitarity_residual(a: np.ndarray) -> float:
    """max |A A^dag - 1|; zero iff A is exactly unitary."""
    a = np.asarray(a)
    n = a.shape[0]
    return max_norm_distance(a @ dagger(a), np.eye(n))


def is_unitary(a: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    return unitarity_residual(a) <= tol


def hermiticity_residual(a: np.ndarray) -> float:
    """max |A - A^dag|."""
    return max_norm_distance(a, dagger(np.asarray(a)))


def hermitian_eigensystem(
    h: np.ndarray,
    off_tol: float = 1e-14,
    max_sweeps: int = 100,
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvectors of a Hermitian matrix.

    Cyclic Jacobi rotations on the full complex matrix.  A sweep visits every
    off-diagonal pair once; iteration stops when the off-diagonal Frobenius
    norm drops below ``off_tol`` or after ``max_sweeps`` sweeps.  Returns
    ``(w, v)`` with ``h ~ v @ diag(w) @ v.conj().T`` and the columns of ``v``
    orthonormal.

    Raises ``NotHermitian`` when max |H - H^dag| exceeds 1e-10.  Within a
    degenerate eigenvalue cluster the eigenvector basis is arbitrary; only
    the spectrum and the spanned subspaces are meaningful.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {h.shape}")
    res = hermiticity_residual(h)
    if res > HERMITIAN_TOL:
        raise NotHermitian(f"max |H - H^dag| = {res:.3e} exceeds {HERMITIAN_TOL:.0e}")

    n = h.shape[0]
    a = 0.5 * (h + dagger(h))  # remove the sub-tolerance asymmetry
    v = np.eye(n, dtype=complex)
    if n == 1:
        return np.array([a[0, 0].real]), v

    off_mask = ~np.eye(n, dtype=bool)
    for _ in range(max_sweeps):
        # summed directly over the off-diagonal entries: subtracting the
        # diagonal from the full Frobenius norm cancels catastrophically
        # and cannot resolve values below ~sqrt(eps)*||a||
        off = math.sqrt(float(np.sum(np.abs(a[off_mask]) ** 2)))
        if off <= off_tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-150:
                    # negligible against off_tol; rotating would overflow 1/mag
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                if tau == 0.0:
                    t = 1.0
                else:
                    t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # A <- J^dag A J and V <- V J with the plane rotation
                # J[p,p]=c, J[p,q]=s*phase, J[q,p]=-s*conj(phase), J[q,q]=c.
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * col_p - s * np.conj(phase) * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                vec_p = v[:, p].copy()
                vec_q = v[:, q].copy()
                v[:, p] = c * vec_p - s * np.conj(phase) * vec_q
                v[:, q] = s * phase * vec_p + c * vec_q

    w = np.real(np.diag(a)).copy()
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def require_finite(a: np.ndarray, what: str = "array") -> None:
    """Reject NaN/Inf payloads before they poison downstream arithmetic."""
    a = np.asarray(a)
    if not (np.all(np.isfinite(a.real)) and np.all(np.isfinite(a.imag))):
        raise ValueError(f"{what} contains non-finite entries")


# ---------------------------------------------------------------------------
# JSON serialization
#
# Matrix files: {"rows": n, "cols": m, "entries": [[re, im], ...]} row-major.
# Vector files: {"dim": n, "amplitudes": [[re, im], ...]}.
# ---------------------------------------------------------------------------

def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimMismatch(f"expected a 2-D array, got shape {a.shape}")
    flat = a.reshape(-1)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "entries": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    rows = int(obj["rows"])
    cols = int(obj["cols"])
    entries = obj["entries"]
    if rows <= 0 or cols <= 0:
        raise DimMismatch(f"matrix dims must be positive, got {rows}x{cols}")
    if len(entries) != rows * cols:
        raise DimMismatch(
            f"entry count {len(entries)} does not match {rows}x{cols}"
        )
    flat = np.array([complex(re, im) for re, im in entries])
    require_finite(flat, "matrix")
    return flat.reshape(rows, cols)


def vector_to_json(v: np.ndarray) -> dict:
    v = np.asarray(v, dtype=complex).reshape(-1)
    return {
        "dim": int(v.size),
        "amplitudes": [[float(z.real), float(z.imag)] for z in v],
    }


def vector_from_json(obj: dict) -> np.ndarray:
    dim = int(obj["dim"])
    amps = obj["amplitudes"]
    if len(amps) != dim:
        raise DimMismatch(f"amplitude count {len(amps)} does not match dim {dim}")
    v = np.array([complex(re, im) for re, im in amps])
    require_finite(v, "vector")
    return v


def save_matrix(path, a: np.ndarray) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(a), fh)
        fh.write("\n")


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


def save_vector(path, v: np.ndarray) -> None:
    with open(path, "w") as fh:
        json.dump(vector_to_json(v), fh)
        fh.write("\n")


def load_vector(path) -> np.ndarray:
    with open(path) as fh:
        return vector_from_json(json.load(fh))
