import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ybx import entanglement as ent
from ybx import generation as gen
from ybx import tensor
from ybx.errors import NoSolutionFound, UnknownCurve, WrongAngleCount
from ybx.generation import GenerationParams
from ybx.yang_baxter import TWO_PI, weight_functions

angles = st.floats(min_value=-10.0, max_value=10.0,
                   allow_nan=False, allow_infinity=False)


def kappa_of(params):
    sd = ent.schmidt_decompose(gen.generate(params))
    return sd.kappa


# ---------------------------------------------------------------------------
# parameters and product ansatz

def test_params_canonicalize_angles():
    p = GenerationParams(3, -1.0, (TWO_PI + 0.25,))
    assert abs(p.theta - (TWO_PI - 1.0)) <= 1e-12
    assert abs(p.phi[0] - 0.25) <= 1e-12


def test_params_reject_wrong_angle_count():
    with pytest.raises(WrongAngleCount):
        GenerationParams(3, 0.5, ())
    with pytest.raises(WrongAngleCount):
        GenerationParams(2, 0.5, (0.1,))
    with pytest.raises(WrongAngleCount):
        GenerationParams(5, 0.5, (0.1, 0.2))


def test_product_state_d2_and_d3():
    assert np.array_equal(gen.product_state(2, ()), [1.0, 0.0])
    phi = 0.8
    got = gen.product_state(3, (phi,))
    assert np.max(np.abs(got - [math.cos(phi), math.sin(phi), 0.0])) <= 1e-15


def test_product_state_d4_hyperspherical():
    p1, p2 = 0.7, 2.1
    got = gen.product_state(4, (p1, p2))
    expected = [math.cos(p1),
                math.sin(p1) * math.cos(p2),
                math.sin(p1) * math.sin(p2),
                0.0]
    assert np.max(np.abs(got - np.array(expected))) <= 1e-15


@given(st.sampled_from([2, 3, 4, 6, 8]), st.lists(angles, min_size=6, max_size=6))
@settings(max_examples=60, deadline=None)
def test_product_state_normalized(d, raw):
    amps = gen.product_state(d, raw[: d - 2])
    assert abs(np.linalg.norm(amps) - 1.0) <= 1e-12
    assert amps[d - 1] == 0.0  # the top level never enters the ansatz


# ---------------------------------------------------------------------------
# the generation pipeline

def test_generate_identity_angle_is_product():
    params = GenerationParams(4, 0.0, (0.3, 1.2))
    got = gen.generate(params).amplitudes
    e0 = np.zeros(4)
    e0[0] = 1.0
    expected = tensor.kron_vec(e0, gen.product_state(4, params.phi))
    assert np.max(np.abs(got - expected)) <= 1e-15


@given(angles, st.sampled_from(list(range(2, 9))))
@settings(max_examples=60, deadline=None)
def test_generate_matches_direct_form(theta, d):
    params = GenerationParams(d, theta, (0.0,) * (d - 2))
    via_matrix = gen.generate(params).amplitudes
    direct = gen.closed_form_direct(d, theta).amplitudes
    assert np.max(np.abs(via_matrix - direct)) <= 1e-14


def test_generate_amplitude_structure():
    # row 0 of the coefficient matrix carries a*Phi, row d-r carries the
    # cyclically shifted ansatz scaled by b
    d, theta = 4, 1.3
    phi = (0.5, 1.9)
    w = weight_functions(d, theta)
    a = w.F
    b = w.F * w.G
    m = gen.generate(GenerationParams(d, theta, phi)).matrix
    phi_b = gen.product_state(d, phi)
    assert np.max(np.abs(m[0] - a * phi_b)) <= 1e-14
    for r in range(1, d):
        assert np.max(np.abs(m[d - r] - b * np.roll(phi_b, -r))) <= 1e-14


def test_generate_d2_bell_pair():
    s = 1.0 / math.sqrt(2.0)
    amps = gen.generate(GenerationParams(2, math.pi / 4, ())).amplitudes
    expected = np.array([s, 0.0, 0.0, -1j * s])
    assert np.max(np.abs(amps - expected)) <= 1e-12


@given(angles, angles, angles)
@settings(max_examples=60, deadline=None)
def test_generate_normalized(theta, p1, p2):
    amps = gen.generate(GenerationParams(4, theta, (p1, p2))).amplitudes
    assert abs(np.linalg.norm(amps) - 1.0) <= 1e-12


# ---------------------------------------------------------------------------
# known spectra

def test_quarter_turn_spectrum_d3():
    kappa = kappa_of(GenerationParams(3, math.pi / 2, (0.0,)))
    assert np.max(np.abs(kappa - np.array([2, 2, 1]) / 3.0)) <= 1e-12
    iv = ent.invariants_from_kappa_sq(3, kappa**2)
    assert abs(iv.Iprime[0] - 8.0 / 9.0) <= 1e-12
    assert abs(iv.Iprime[1] - 25.0 / 27.0) <= 1e-12


def test_third_turn_is_maximally_entangled_d3():
    kappa = kappa_of(GenerationParams(3, math.pi / 3, (0.0,)))
    assert np.max(np.abs(kappa - 1.0 / math.sqrt(3.0))) <= 1e-12


def test_zero_angle_is_separable():
    iv = ent.invariants(gen.generate(GenerationParams(3, 0.0, (0.7,))))
    assert np.max(np.abs(iv.Iprime)) <= 1e-14


# ---------------------------------------------------------------------------
# region geometry

def test_region_bounds_at_landmarks():
    lo, up = gen.qutrit_region_bounds(0.0)
    assert lo == 0.0 and up == 0.0
    lo, up = gen.qutrit_region_bounds(1.0)
    assert abs(lo - 1.0) <= 1e-12 and abs(up - 1.0) <= 1e-12
    lo, up = gen.qutrit_region_bounds(0.75)
    assert abs(lo - 25.0 / 32.0) <= 1e-12
    assert abs(up - 27.0 / 32.0) <= 1e-12


def test_region_membership_points():
    assert gen.in_qutrit_region(0.5, 0.55)
    assert gen.in_qutrit_region(0.5, 0.5625)   # on the upper line
    assert not gen.in_qutrit_region(0.5, 0.60)
    assert not gen.in_qutrit_region(0.5, 0.53)
    assert not gen.in_qutrit_region(-0.1, 0.0)
    assert not gen.in_qutrit_region(1.1, 1.0)


def test_region_bounds_ordered():
    for u in np.linspace(0.0, 1.0, 101):
        lo, up = gen.qutrit_region_bounds(float(u))
        assert lo <= up + 1e-15
        assert -1e-15 <= lo and up <= 1.0 + 1e-15


@given(angles, angles)
@settings(max_examples=150, deadline=None)
def test_generated_invariants_stay_in_region(theta, phi):
    iv = ent.invariants(gen.generate(GenerationParams(3, theta, (phi,))))
    assert gen.in_qutrit_region(iv.Iprime[0], iv.Iprime[1], slack=1e-8)


# ---------------------------------------------------------------------------
# contour curves

def test_contour_endpoints():
    # the one-coefficient family retraces the OB segment symmetrically, so
    # both of its ends sit on O and the B corner is reached at the midpoint
    ob = gen.contour_curve("OB", 65)
    og = gen.contour_curve("OG", 64)
    gb = gen.contour_curve("GB", 64)
    o = np.array([0.0, 0.0])
    b = np.array([0.75, 27.0 / 32.0])
    g = np.array([1.0, 1.0])
    assert np.max(np.abs(ob[0].iprime - o)) <= 1e-10
    assert np.max(np.abs(ob[-1].iprime - o)) <= 1e-10
    assert abs(ob[32].xi - math.pi / 4) <= 1e-12
    assert np.max(np.abs(ob[32].iprime - b)) <= 1e-10
    assert np.max(np.abs(og[0].iprime - o)) <= 1e-10
    assert np.max(np.abs(og[-1].iprime - g)) <= 1e-10
    assert np.max(np.abs(gb[0].iprime - g)) <= 1e-10
    assert np.max(np.abs(gb[-1].iprime - b)) <= 1e-10


def test_contour_ob_symmetric_about_quarter_turn():
    ob = gen.contour_curve("OB", 33)
    for k in range(33):
        assert np.max(np.abs(ob[k].iprime - ob[32 - k].iprime)) <= 1e-12


def test_contour_points_lie_in_region():
    for name in ("OB", "OG", "GB"):
        for pt in gen.contour_curve(name, 200):
            assert gen.in_qutrit_region(pt.iprime[0], pt.iprime[1], slack=1e-9)


def test_contour_split_angle():
    # the two-equal-coefficient family passes through the flat spectrum
    # exactly where cos(xi)^2 = 1/3
    assert abs(math.cos(gen.XI_STAR) ** 2 - 1.0 / 3.0) <= 1e-15


def test_contour_rejects_unknown_curve():
    with pytest.raises(UnknownCurve):
        gen.contour_curve("XY", 16)
    with pytest.raises(ValueError):
        gen.contour_curve("OB", 1)


def test_contours_csv_schema(tmp_path):
    path = tmp_path / "contours.csv"
    gen.contours_to_csv(path, steps=16)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["curve", "xi", "i1p", "i2p"]
    assert len(rows) == 1 + 3 * 16
    assert {r[0] for r in rows[1:]} == {"OB", "OG", "GB"}
    for r in rows[1:]:
        float(r[1]), float(r[2]), float(r[3])


# ---------------------------------------------------------------------------
# ensembles, CSV, coverage

def test_sample_region_shapes_and_ranges():
    s = gen.sample_region(3, 500, seed=7, ensemble="schmidt")
    y = gen.sample_region(3, 500, seed=7, ensemble="yb")
    assert len(s) == len(y) == 500
    assert s.iprime.shape == (500, 2) and y.iprime.shape == (500, 2)
    assert s.kappa.shape == (500, 3)
    assert y.theta.shape == (500,) and y.phi.shape == (500, 1)
    assert np.all((0.0 <= y.theta) & (y.theta < TWO_PI))
    for samples in (s, y):
        assert np.all(samples.iprime >= -1e-9)
        assert np.all(samples.iprime <= 1.0 + 1e-9)


def test_sample_region_points_respect_geometry():
    for ensemble in ("schmidt", "yb"):
        r = gen.sample_region(3, 2000, seed=3, ensemble=ensemble)
        for u, v in r.iprime:
            assert gen.in_qutrit_region(float(u), float(v), slack=1e-7)


def test_sample_region_deterministic_across_workers():
    a = gen.sample_region(3, 20000, seed=11, ensemble="yb", workers=1)
    b = gen.sample_region(3, 20000, seed=11, ensemble="yb", workers=2)
    assert np.array_equal(a.theta, b.theta)
    assert np.array_equal(a.phi, b.phi)
    assert np.array_equal(a.iprime, b.iprime)


def test_sample_region_matches_slow_route():
    r = gen.sample_region(3, 50, seed=5, ensemble="yb")
    for idx in (0, 17, 49):
        one = r[idx]
        iv = ent.invariants(gen.generate(GenerationParams(3, one.theta, one.phi)))
        assert np.max(np.abs(iv.Iprime - one.iprime)) <= 1e-10


def test_region_samples_iteration():
    r = gen.sample_region(4, 10, seed=1, ensemble="schmidt")
    pts = list(r)
    assert len(pts) == 10
    assert pts[3].ensemble == "schmidt"
    assert pts[3].theta is None
    assert np.array_equal(pts[3].iprime, r.iprime[3])


def test_region_csv_yb_schema(tmp_path):
    path = tmp_path / "yb.csv"
    r = gen.sample_region(3, 20, seed=2, ensemble="yb")
    r.to_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["ensemble", "theta", "phi1", "i1p", "i2p"]
    assert len(rows) == 21
    for row, idx in zip(rows[1:], range(20)):
        assert row[0] == "yb"
        assert abs(float(row[1]) - r.theta[idx]) <= 1e-11
        assert abs(float(row[2]) - r.phi[idx, 0]) <= 1e-11
        assert abs(float(row[3]) - r.iprime[idx, 0]) <= 1e-11


def test_region_csv_schmidt_blank_parameters(tmp_path):
    path = tmp_path / "schmidt.csv"
    gen.sample_region(4, 5, seed=2, ensemble="schmidt").to_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["ensemble", "theta", "phi1", "phi2", "i1p", "i2p", "i3p"]
    for row in rows[1:]:
        assert row[0] == "schmidt"
        assert row[1] == "" and row[2] == "" and row[3] == ""
        float(row[4]), float(row[5]), float(row[6])


def test_coverage_report_self_is_full():
    r = gen.sample_region(3, 5000, seed=9, ensemble="yb")
    rep = gen.coverage_report(r, r, grid_resolution=100)
    assert rep.coverage == 1.0
    assert rep.bins_covered == rep.bins_target
    assert rep.sample_counts == (5000, 5000)


def test_coverage_report_partial():
    target = gen.sample_region(3, 4000, seed=1, ensemble="schmidt")
    generated = gen.sample_region(3, 4000, seed=2, ensemble="yb")
    rep = gen.coverage_report(target, generated, grid_resolution=60)
    assert 0.0 < rep.coverage <= 1.0
    assert rep.bins_covered <= rep.bins_target
    assert rep.grid_resolution == 60


def test_coverage_report_rejects_empty():
    r = gen.sample_region(3, 10, seed=0, ensemble="yb")
    with pytest.raises(gen.EmptyEnsemble):
        gen.coverage_report([], r, grid_resolution=50)


def test_coverage_report_rejects_mixed_dimensions():
    a = gen.sample_region(3, 10, seed=0, ensemble="yb")
    b = gen.sample_region(4, 10, seed=0, ensemble="yb")
    with pytest.raises(ValueError):
        gen.coverage_report(a, b, grid_resolution=50)


# ---------------------------------------------------------------------------
# inverse solving

def test_solve_round_trip_d3():
    params = GenerationParams(3, 0.9, (0.7,))
    target = kappa_of(params)
    found = gen.solve_parameters(3, target)
    assert np.max(np.abs(kappa_of(found) - target)) <= 1e-5


def test_solve_round_trip_d2():
    target = kappa_of(GenerationParams(2, 1.1, ()))
    found = gen.solve_parameters(2, target)
    assert np.max(np.abs(kappa_of(found) - target)) <= 1e-5


def test_solve_bell_target_d2():
    s = 1.0 / math.sqrt(2.0)
    found = gen.solve_parameters(2, np.array([s, s]))
    assert np.max(np.abs(kappa_of(found) - s)) <= 1e-5


def test_solve_validates_targets():
    with pytest.raises(ValueError):
        gen.solve_parameters(3, np.array([1.0, 0.0]))          # wrong length
    with pytest.raises(ValueError):
        gen.solve_parameters(3, np.array([0.9, 0.5, -0.1]))    # negative
    with pytest.raises(ValueError):
        gen.solve_parameters(3, np.array([0.6, 0.8, 0.0]))     # not sorted
    with pytest.raises(ValueError):
        gen.solve_parameters(3, np.array([0.9, 0.3, 0.3]))     # norm != 1


def test_solve_unreachable_tolerance_reports_best():
    target = kappa_of(GenerationParams(3, 0.4, (1.0,)))
    with pytest.raises(NoSolutionFound) as err:
        gen.solve_parameters(3, target, tol=1e-30)
    assert err.value.best_params is not None
    assert err.value.best_params.d == 3
    assert err.value.residual is not None
    assert err.value.residual > 1e-30


# ---------------------------------------------------------------------------
# the orthonormal entangled family

def test_maximally_entangled_basis():
    states = gen.maximally_entangled_basis()
    assert len(states) == 9
    stack = np.stack([s.amplitudes for s in states], axis=1)
    gram = stack.conj().T @ stack
    assert tensor.max_norm_distance(gram, np.eye(9)) <= 1e-12
    for s in states:
        iv = ent.invariants(s)
        assert abs(iv.Iprime[0] - 1.0) <= 1e-10
