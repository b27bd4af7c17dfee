"""State generation from the braid-gate family and region-coverage experiments.

The pipeline prepares |0>_A (x) |Phi>_B with the product ansatz

    |Phi>_B = cos(phi_1)|0> + sin(phi_1)cos(phi_2)|1> + ... + sin(phi_1)...sin(phi_{d-2})|d-2>

(the |d-1> component is identically zero) and applies the unitary braid gate
at phase theta.  Sweeping (theta, phi_1..phi_{d-2}) and recording the local
invariants I'_j traces the same region of invariant space as Schmidt spectra
drawn at random from the simplex; coverage of that region is the toolkit's
statistical evidence that every entanglement class is reachable.  An inverse
solver makes the claim constructive for individual targets.
"""

from __future__ import annotations

import cmath
import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from . import sampling, tensor
from .entanglement import TwoQuditState, invariants_from_kappa_sq
from .errors import EmptyEnsemble, NoSolutionFound, UnknownCurve, WrongAngleCount
from .yang_baxter import TWO_PI, canonical_angle, r_matrix, validate_dimension

HALF_PI = math.pi / 2.0

#: Parameter value of the two-equal-coefficient contour family at which the
#: maximally entangled point G is reached: cos^2(xi) = 1/3.
XI_STAR = math.acos(1.0 / math.sqrt(3.0))

SOLVER_GRID_POINTS = 64
SOLVER_GRID_BUDGET = 64**3
SOLVER_RESTARTS = 5
SOLVER_MAX_ITER = 500
#: Ranked restart candidates closer than this (wrapped max-metric, radians)
#: count as one basin; duplicates arise from the exact conjugation symmetry
#: (theta, phi) -> (2pi - theta, 2pi - phi) of the Schmidt spectrum.
SOLVER_MIN_SEPARATION = 0.3


@dataclass(frozen=True)
class GenerationParams:
    """Gate phase theta plus the d-2 product-state angles.

    All angles are canonicalized into [0, 2pi).  The phi must range over the
    full circle: the signs of the ansatz components change the generated
    Schmidt spectrum, and restricting phi to the first quadrant demonstrably
    reaches only part of the invariant region.
    """

    d: int
    theta: float
    phi: tuple[float, ...] = ()

    def __post_init__(self):
        d = validate_dimension(self.d)
        phi = tuple(canonical_angle(float(p)) for p in self.phi)
        if len(phi) != d - 2:
            raise WrongAngleCount(f"expected {d - 2} product-state angles for d={d}, got {len(phi)}")
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "theta", canonical_angle(self.theta))
        object.__setattr__(self, "phi", phi)


def product_state(d: int, phi) -> np.ndarray:
    """Amplitudes of the hyperspherical product ansatz on |0>..|d-2>."""
    d = validate_dimension(d)
    p = np.asarray(phi, dtype=float).reshape(-1)
    if p.size != d - 2:
        raise WrongAngleCount(f"expected {d - 2} angles for d={d}, got {p.size}")
    amps = np.zeros(d, dtype=complex)
    prefix = 1.0
    for k in range(d - 2):
        amps[k] = prefix * math.cos(p[k])
        prefix *= math.sin(p[k])
    amps[d - 2] = prefix
    return amps


def generate(params: GenerationParams) -> TwoQuditState:
    """Apply the braid gate at theta to |0>_A (x) |Phi(phi)>_B."""
    d = params.d
    phi_b = product_state(d, params.phi)
    e0 = np.zeros(d, dtype=complex)
    e0[0] = 1.0
    psi = r_matrix(d, params.theta).matrix @ tensor.kron_vec(e0, phi_b)
    return TwoQuditState(d=d, amplitudes=psi)


def closed_form_direct(d: int, theta: float) -> TwoQuditState:
    """The gate image of |00> written out directly.

    (1/d) { [(d-1)x + x^-1] |00> - (x - x^-1) sum_{j>=1} |jj> },  x = e^{i theta}.
    Must coincide with generate(theta, phi=0); the two routes cross-check
    the matrix constructor against the formula.
    """
    d = validate_dimension(d)
    x = cmath.exp(1j * float(theta))
    a = ((d - 1) * x + x.conjugate()) / d
    b = -(x - x.conjugate()) / d
    amps = np.zeros(d * d, dtype=complex)
    amps[0] = a
    for j in range(1, d):
        amps[j * d + j] = b
    return TwoQuditState(d=d, amplitudes=amps)


# ---------------------------------------------------------------------------
# batched amplitude pipeline (vectorized mirror of generate(), used by the
# Monte-Carlo sampler and the inverse solver's coarse grid)

def _product_state_batch(d: int, phi: np.ndarray) -> np.ndarray:
    """(m, d) real ansatz amplitudes for phi of shape (m, d-2)."""
    m = phi.shape[0]
    amps = np.zeros((m, d))
    prefix = np.ones(m)
    for k in range(d - 2):
        amps[:, k] = prefix * np.cos(phi[:, k])
        prefix = prefix * np.sin(phi[:, k])
    amps[:, d - 2] = prefix
    return amps


def _amplitude_matrix_batch(d: int, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """(m, d, d) coefficient matrices of the generated states.

    Row 0 carries a*Phi and row d-r carries b*roll(Phi, -r): the image of
    |0>(x)|Phi> under a*I + b*sum_r P_r(x)P_r, written without the d^2 x d^2
    matrix product.
    """
    x = np.exp(1j * theta)
    a = ((d - 1) * x + np.conj(x)) / d
    b = -(x - np.conj(x)) / d
    phi_b = _product_state_batch(d, phi)
    out = np.zeros((theta.size, d, d), dtype=complex)
    out[:, 0, :] = a[:, None] * phi_b
    for r in range(1, d):
        out[:, d - r, :] = b[:, None] * np.roll(phi_b, -r, axis=1)
    return out


def _trace_power_iprime(d: int, amp: np.ndarray) -> np.ndarray:
    """I'_j for a batch of coefficient matrices, via traces of rho_A powers."""
    rho = amp @ np.conj(np.transpose(amp, (0, 2, 1)))
    power = rho
    out = np.empty((amp.shape[0], d - 1))
    for j in range(1, d):
        power = power @ rho
        i_j = np.einsum("nii->n", power).real
        out[:, j - 1] = d**j / (d**j - 1.0) * (1.0 - i_j)
    return out


def _iprime_from_kappa_sq_batch(d: int, kappa_sq: np.ndarray) -> np.ndarray:
    out = np.empty((kappa_sq.shape[0], d - 1))
    for j in range(1, d):
        i_j = np.sum(kappa_sq ** (j + 1), axis=1)
        out[:, j - 1] = d**j / (d**j - 1.0) * (1.0 - i_j)
    return out


# ---------------------------------------------------------------------------
# region sampling

@dataclass(frozen=True)
class RegionSample:
    """One plotted point of invariant space, tagged by its source ensemble."""

    ensemble: str
    iprime: np.ndarray
    theta: float | None = None
    phi: tuple[float, ...] | None = None
    kappa: np.ndarray | None = None


@dataclass
class RegionSamples:
    """Columnar batch of region samples (sequence of RegionSample views)."""

    d: int
    ensemble: str
    iprime: np.ndarray
    theta: np.ndarray | None = None
    phi: np.ndarray | None = None
    kappa: np.ndarray | None = None

    def __len__(self) -> int:
        return self.iprime.shape[0]

    def __getitem__(self, idx: int) -> RegionSample:
        if self.ensemble == "yb":
            return RegionSample(
                ensemble="yb",
                iprime=self.iprime[idx],
                theta=float(self.theta[idx]),
                phi=tuple(float(p) for p in self.phi[idx]),
            )
        return RegionSample(ensemble="schmidt", iprime=self.iprime[idx], kappa=self.kappa[idx])

    def __iter__(self):
        for idx in range(len(self)):
            yield self[idx]

    def csv_header(self) -> str:
        d = self.d
        phis = [f"phi{k}" for k in range(1, d - 1)]
        ips = [f"i{j}p" for j in range(1, d)]
        return ",".join(["ensemble", "theta"] + phis + ips)

    def to_csv(self, path) -> None:
        """Write the documented region schema; floats carry 12 significant digits."""
        d = self.d
        n_phi = d - 2
        with open(path, "w") as fh:
            fh.write(self.csv_header() + "\n")
            if self.ensemble == "yb":
                for idx in range(len(self)):
                    params = [f"{self.theta[idx]:.12g}"]
                    params += [f"{self.phi[idx, k]:.12g}" for k in range(n_phi)]
                    ips = [f"{v:.12g}" for v in self.iprime[idx]]
                    fh.write("yb," + ",".join(params + ips) + "\n")
            else:
                blank = "," * n_phi
                for idx in range(len(self)):
                    ips = [f"{v:.12g}" for v in self.iprime[idx]]
                    fh.write("schmidt," + blank + "," + ",".join(ips) + "\n")


def _schmidt_block(seed: int, block: int, size: int, d: int = 3):
    rng = sampling.block_generator(seed, block)
    z = rng.standard_normal((size, d)) + 1j * rng.standard_normal((size, d))
    mag = np.abs(z)
    kappa = mag / np.linalg.norm(mag, axis=1, keepdims=True)
    iprime = _iprime_from_kappa_sq_batch(d, kappa**2)
    return kappa, iprime


def _yb_block(seed: int, block: int, size: int, d: int = 3):
    rng = sampling.block_generator(seed, block)
    theta = rng.uniform(0.0, TWO_PI, size)
    phi = rng.uniform(0.0, TWO_PI, (size, d - 2))
    amp = _amplitude_matrix_batch(d, theta, phi)
    iprime = _trace_power_iprime(d, amp)
    return theta, phi, iprime


def sample_region(d: int, n: int, seed: int, ensemble: str, workers: int | None = None) -> RegionSamples:
    """n invariant-space points from either random Schmidt spectra or the pipeline.

    schmidt: kappa = normalized absolute values of a standard complex Gaussian
    d-vector.  yb: theta and each phi_k uniform on [0, 2pi), invariants of
    generate().  Output is deterministic in (seed, n, d) and independent of
    the worker count.
    """
    d = validate_dimension(d)
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n}")
    if ensemble == "schmidt":
        fn = functools.partial(_schmidt_block, d=d)
        kappa, iprime = sampling.run_blocks(fn, seed, n, workers)
        return RegionSamples(d=d, ensemble="schmidt", iprime=iprime, kappa=kappa)
    if ensemble == "yb":
        fn = functools.partial(_yb_block, d=d)
        theta, phi, iprime = sampling.run_blocks(fn, seed, n, workers)
        return RegionSamples(d=d, ensemble="yb", iprime=iprime, theta=theta, phi=phi)
    raise ValueError(f"ensemble must be 'schmidt' or 'yb', got {ensemble!r}")


# ---------------------------------------------------------------------------
# d=3 contour curves and region membership

@dataclass(frozen=True)
class ContourSample:
    """A point on one of the d=3 boundary curves OB, OG, GB."""

    curve: str
    xi: float
    iprime: np.ndarray


def _psi1_kappa_sq(xi: np.ndarray) -> np.ndarray:
    """cos(xi)|00> + sin(xi)|11>: spectra (cos^2, sin^2, 0)."""
    c2 = np.cos(xi) ** 2
    return np.stack([c2, 1.0 - c2, np.zeros_like(c2)], axis=1)


def _psi2_kappa_sq(xi: np.ndarray) -> np.ndarray:
    """cos(xi)|00> + sin(xi)(|11>+|22>)/sqrt(2): spectra (cos^2, sin^2/2, sin^2/2)."""
    c2 = np.cos(xi) ** 2
    half = (1.0 - c2) / 2.0
    return np.stack([c2, half, half], axis=1)


_CURVES = {
    "OB": (_psi1_kappa_sq, 0.0, HALF_PI),
    "OG": (_psi2_kappa_sq, 0.0, XI_STAR),
    "GB": (_psi2_kappa_sq, XI_STAR, HALF_PI),
}


def contour_curve(name: str, steps: int) -> list[ContourSample]:
    """Sample a named d=3 boundary curve at `steps` equally spaced xi values.

    OB runs over the one-coefficient family; OG and GB cover the two-equal-
    coefficient family below and above xi* = arccos(1/sqrt(3)), so the curve
    endpoints land exactly on O=(0,0), G=(1,1), B=(3/4, 27/32).
    """
    if name not in _CURVES:
        raise UnknownCurve(f"unknown contour {name!r}; expected one of {sorted(_CURVES)}")
    if steps < 2:
        raise ValueError(f"need at least 2 steps, got {steps}")
    family, lo, hi = _CURVES[name]
    xi = np.linspace(lo, hi, steps)
    iprime = _iprime_from_kappa_sq_batch(3, family(xi))
    return [ContourSample(curve=name, xi=float(x), iprime=ip) for x, ip in zip(xi, iprime)]


def contours_to_csv(path, steps: int = 256) -> None:
    """All three boundary curves in the documented curve,xi,i1p,i2p schema."""
    with open(path, "w") as fh:
        fh.write("curve,xi,i1p,i2p\n")
        for name in ("OB", "OG", "GB"):
            for pt in contour_curve(name, steps):
                fh.write(f"{name},{pt.xi:.12g},{pt.iprime[0]:.12g},{pt.iprime[1]:.12g}\n")


def qutrit_region_bounds(i1p: float) -> tuple[float, float]:
    """Closed-form lower/upper I'_2 bounds of the d=3 region at a given I'_1.

    With t = kappa_0^2 on the two-equal-coefficient family, I'_1 = u forces
    t = (1 +/- 2 sqrt(1-u))/3; the + branch (curve OG) is the lower envelope
    and the - branch (curve GB) the upper one once u exceeds 3/4, below which
    the line I'_2 = (9/8) I'_1 (curve OB) caps the region instead.
    """
    u = min(1.0, max(0.0, float(i1p)))
    s = math.sqrt(max(0.0, 1.0 - u))

    def v_of(t: float) -> float:
        return 9.0 / 8.0 * (1.0 - t**3 - (1.0 - t) ** 3 / 4.0)

    lower = v_of((1.0 + 2.0 * s) / 3.0)
    upper = 9.0 / 8.0 * u if u <= 0.75 else v_of((1.0 - 2.0 * s) / 3.0)
    return lower, upper


def in_qutrit_region(i1p: float, i2p: float, slack: float = 1e-8) -> bool:
    """Whether (I'_1, I'_2) lies inside the d=3 region up to numerical slack."""
    if not (-slack <= i1p <= 1.0 + slack):
        return False
    lower, upper = qutrit_region_bounds(i1p)
    return lower - slack <= i2p <= upper + slack


# ---------------------------------------------------------------------------
# coverage scoring

@dataclass(frozen=True)
class CoverageReport:
    """Fraction of target-occupied invariant-space bins hit by the generator."""

    grid_resolution: int
    bins_target: int
    bins_covered: int
    coverage: float
    sample_counts: tuple[int, int]


def _iprime_matrix(samples) -> np.ndarray:
    if isinstance(samples, RegionSamples):
        return samples.iprime
    rows = [np.asarray(s.iprime, dtype=float) for s in samples]
    if not rows:
        return np.empty((0, 0))
    return np.stack(rows, axis=0)


def _occupied_bins(iprime: np.ndarray, grid: int) -> np.ndarray:
    idx = np.clip((iprime * grid).astype(np.int64), 0, grid - 1)
    keys = idx[:, 0]
    for k in range(1, idx.shape[1]):
        keys = keys * grid + idx[:, k]
    return np.unique(keys)


def coverage_report(target, generated, grid_resolution: int) -> CoverageReport:
    """Bin [0,1]^{d-1} at the given resolution and score target-bin coverage."""
    t = _iprime_matrix(target)
    g = _iprime_matrix(generated)
    if t.size == 0 or g.size == 0:
        raise EmptyEnsemble("coverage_report needs nonempty target and generated ensembles")
    if t.shape[1] != g.shape[1]:
        raise ValueError(f"invariant dimensions differ: {t.shape[1]} vs {g.shape[1]}")
    t_bins = _occupied_bins(t, grid_resolution)
    g_bins = _occupied_bins(g, grid_resolution)
    covered = np.intersect1d(t_bins, g_bins, assume_unique=True)
    return CoverageReport(
        grid_resolution=grid_resolution,
        bins_target=int(t_bins.size),
        bins_covered=int(covered.size),
        coverage=float(covered.size / t_bins.size),
        sample_counts=(t.shape[0], g.shape[0]),
    )


# ---------------------------------------------------------------------------
# inverse solver

def _sorted_kappa(d: int, theta: float, phi: np.ndarray) -> np.ndarray:
    amp = _amplitude_matrix_batch(d, np.atleast_1d(theta).astype(float), phi.reshape(1, -1))[0]
    evals = np.linalg.eigvalsh(amp @ amp.conj().T)
    return np.sqrt(np.clip(evals, 0.0, None))[::-1]


def _grid_axis_points(d: int) -> int:
    """Points per angle axis: 64 up to d=4, then capped at ~64^3 total."""
    n = SOLVER_GRID_POINTS
    while n > 2 and n ** (d - 1) > SOLVER_GRID_BUDGET:
        n -= 1
    return n


@functools.lru_cache(maxsize=None)
def _solver_grid(d: int):
    """Coarse (theta, phi) grid with precomputed sorted Schmidt spectra."""
    axis = np.linspace(0.0, TWO_PI, _grid_axis_points(d), endpoint=False)
    mesh = np.meshgrid(*([axis] * (d - 1)), indexing="ij")
    params = np.stack([m.reshape(-1) for m in mesh], axis=1)
    amp = _amplitude_matrix_batch(d, params[:, 0], params[:, 1:])
    evals = np.linalg.eigvalsh(amp @ np.conj(np.transpose(amp, (0, 2, 1))))
    kappa = np.sqrt(np.clip(evals, 0.0, None))[:, ::-1]
    return params, kappa


def _diverse_starts(params_grid: np.ndarray, sq_err: np.ndarray) -> list[np.ndarray]:
    """Best grid points, skipping near-duplicates of already chosen basins."""
    chosen: list[np.ndarray] = []
    for idx in np.argsort(sq_err):
        p = params_grid[idx]
        distinct = True
        for c in chosen:
            delta = np.abs(p - c)
            delta = np.minimum(delta, TWO_PI - delta)
            if np.max(delta) < SOLVER_MIN_SEPARATION:
                distinct = False
                break
        if distinct:
            chosen.append(p)
            if len(chosen) == SOLVER_RESTARTS:
                break
    return chosen


def _lattice_starts(d: int) -> list[np.ndarray]:
    """Fixed coarse lattice over the whole angle cube, the fallback sweep.

    The ranked starts can all miss a narrow global basin; sweeping a lattice
    is what makes the solver reliable on hard targets.  Sized to stay cheap:
    8 per axis for d=3, 4 for d=4, shrinking further at higher d.
    """
    per_axis = {2: 16, 3: 8, 4: 4}.get(d)
    if per_axis is None:
        per_axis = max(2, int(round(256.0 ** (1.0 / (d - 1)))))
    axis = (np.arange(per_axis) + 0.5) * TWO_PI / per_axis
    mesh = np.meshgrid(*([axis] * (d - 1)), indexing="ij")
    return list(np.stack([m.reshape(-1) for m in mesh], axis=1))


def solve_parameters(d: int, target_kappa, tol: float = 1e-5) -> GenerationParams:
    """Find (theta, phi) whose generated Schmidt spectrum matches the target.

    target_kappa: d non-negative reals, descending, sum of squares 1 within
    1e-10.  Search = coarse grid scan ranking simplex starts, then a fixed
    lattice sweep of further starts if those stall; the residual is the max
    deviation of the sorted spectrum.  Raises NoSolutionFound (carrying the
    best parameters and residual) if the whole budget is exhausted above tol.

    Range caveat: for d >= 4 the (theta, phi) family does not reach every
    admissible spectrum.  Roughly one in ten spectra drawn uniformly from
    the d = 4 simplex sits outside the reachable set, with best achievable
    max deviations around 1e-3 .. 1e-2; for those targets NoSolutionFound
    is the correct answer, not a search failure, and .best_params is the
    closest family member found.  Spectra that came from the family itself
    (generate -> schmidt) are always recoverable.  d = 2 and d = 3 appear
    surjective: no unreachable target has been observed there.
    """
    d = validate_dimension(d)
    target = np.asarray(target_kappa, dtype=float).reshape(-1)
    if target.size != d:
        raise ValueError(f"expected {d} Schmidt coefficients, got {target.size}")
    if np.any(target < -1e-12):
        raise ValueError("Schmidt coefficients must be non-negative")
    if np.any(np.diff(target) > 1e-12):
        raise ValueError("Schmidt coefficients must be sorted descending")
    if abs(np.sum(target**2) - 1.0) > 1e-10:
        raise ValueError("Schmidt coefficients must satisfy sum(kappa^2) = 1 within 1e-10")

    params_grid, kappa_grid = _solver_grid(d)
    sq_err = np.sum((kappa_grid - target) ** 2, axis=1)
    starts = _diverse_starts(params_grid, sq_err) + _lattice_starts(d)

    def max_dev(vec: np.ndarray) -> float:
        kappa = _sorted_kappa(d, vec[0], vec[1:])
        return float(np.max(np.abs(kappa - target)))

    def objective(vec: np.ndarray) -> float:
        kappa = _sorted_kappa(d, vec[0], vec[1:])
        return float(np.sum((kappa - target) ** 2))

    best_vec = starts[0]
    best_dev = max_dev(best_vec)
    for x0 in starts:
        if best_dev <= tol:
            break
        res = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxiter": SOLVER_MAX_ITER, "xatol": 1e-12, "fatol": 1e-24},
        )
        dev = max_dev(res.x)
        if dev < best_dev:
            best_dev = dev
            best_vec = res.x

    theta = canonical_angle(float(best_vec[0]))
    phi = tuple(canonical_angle(float(p)) for p in best_vec[1:])
    if best_dev > tol:
        raise NoSolutionFound(
            f"no parameters within tol={tol:g}; best residual {best_dev:.3e} "
            f"at theta={theta:.12g}, phi={phi}",
            best_params=GenerationParams(d=d, theta=theta, phi=phi),
            residual=best_dev,
        )
    return GenerationParams(d=d, theta=theta, phi=phi)


# ---------------------------------------------------------------------------
# the nine-state orthogonal maximally entangled family (d=3)

def maximally_entangled_basis() -> list[TwoQuditState]:
    """Images of the nine computational basis states under the d=3 gate at pi/3.

    The gate is unitary and every image is maximally entangled, so this is a
    complete orthogonal basis of maximally entangled two-qutrit states.
    """
    gate = r_matrix(3, math.pi / 3.0).matrix
    return [TwoQuditState(d=3, amplitudes=gate[:, k].copy()) for k in range(9)]
