import math

import numpy as np
import pytest

from harmonia import PreconditionError
from harmonia.hulls import (
    CircularSample,
    DownwardHull,
    ExponentialWitness,
    InsideConvexCombination,
    MonomialWitness,
    PointCloud,
    SeparatingFunctional,
    convex_membership,
    downward_closure_hull,
    eb_certify_exterior,
    eb_dichotomy,
    exp_certificate,
    log_region,
    monomial_log_sup,
    monomial_sup,
    poly_hull_membership,
    rationalize_exponent,
    three_lines_check,
    torus_invariance_check,
)
from harmonia.torus import TorusGrid


def _torus_sample(N=16):
    return CircularSample(TorusGrid(2, N).points(), completely_circular=True)


def _circle_points(m=32):
    return np.exp(1j * np.linspace(0, 2 * np.pi, m, endpoint=False))[:, None]


# -- convex membership -------------------------------------------------------


def test_sample_point_is_inside():
    S = PointCloud([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    cert = convex_membership([1.0, 0.0], S)
    assert isinstance(cert, InsideConvexCombination)
    assert cert.verify()


def test_triangle_outside():
    S = PointCloud([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    cert = convex_membership([1.0, 1.0], S)
    assert isinstance(cert, SeparatingFunctional)
    assert cert.verify(S.points)
    # the separating direction points from the projection (1/2, 1/2) to x
    lam = cert.lam / np.linalg.norm(cert.lam)
    assert np.allclose(lam, [math.sqrt(0.5), math.sqrt(0.5)], atol=1e-6)


def test_square_centroid():
    S = PointCloud([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    cert = convex_membership([0.5, 0.5], S)
    assert isinstance(cert, InsideConvexCombination)
    assert cert.verify()
    assert len(cert.weights) <= 3  # Caratheodory: d + 1 support points suffice


def test_convex_membership_random_roundtrip():
    rng = np.random.default_rng(0)
    for _ in range(20):
        d = int(rng.integers(2, 5))
        S = PointCloud(rng.standard_normal((12, d)))
        w = rng.random(12)
        w /= w.sum()
        x = w @ S.points
        cert = convex_membership(x, S)
        assert isinstance(cert, InsideConvexCombination)
        assert cert.verify()
        assert len(cert.weights) <= d + 1
        far = x + 10.0 * np.ones(d)
        cert = convex_membership(far, S)
        assert isinstance(cert, SeparatingFunctional)
        assert cert.verify(S.points)


def test_convex_dimension_mismatch():
    with pytest.raises(PreconditionError):
        convex_membership([1.0], PointCloud([[0.0, 0.0]]))


# -- downward hull -----------------------------------------------------------


def test_downward_cone_of_origin():
    dh = DownwardHull(np.array([[0.0, 0.0]]))
    assert dh.contains([-0.5, -3.0])[0]
    assert dh.contains([0.0, 0.0])[0]
    assert not dh.contains([0.1, -1.0])[0]


def test_downward_segment():
    dh = DownwardHull(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    assert dh.contains([-0.5, -0.5])[0]
    inside, info = dh.contains([-0.2, -0.2])
    assert not inside
    assert np.all(info["lam"] >= 0)
    assert info["margin"] > 0


def test_downward_monotone():
    rng = np.random.default_rng(1)
    dh = DownwardHull(rng.standard_normal((6, 2)))
    for _ in range(10):
        r = rng.standard_normal(2)
        if dh.contains(r)[0]:
            assert dh.contains(r - rng.random(2))[0]


# -- monomials and rationalization -------------------------------------------


def test_monomial_sup_examples():
    E = _torus_sample()
    for alpha in [(0, 0), (3, 1), (7, 2)]:
        assert monomial_sup(E, alpha) == pytest.approx(1.0)
    with pytest.raises(PreconditionError):
        monomial_log_sup(E, (1,))


def test_monomial_sup_vanishing():
    E = CircularSample(np.zeros((3, 2), dtype=complex), completely_circular=True)
    assert monomial_sup(E, (1, 0)) == 0.0
    assert monomial_sup(E, (0, 0)) == 1.0  # 0^0 = 1


def test_rationalize_exponent():
    assert rationalize_exponent([0.5, 1.0], 100) == (1, 2)
    assert rationalize_exponent([1.0, 0.0], 100) == (1, 0)
    assert rationalize_exponent([2.0, 3.0], 100) == (2, 3)
    with pytest.raises(PreconditionError):
        rationalize_exponent([0.0, 0.0], 100)


# -- polynomial hull membership ----------------------------------------------


def test_pol_torus_inside_and_outside():
    E = _torus_sample()
    inside = poly_hull_membership([0.5, 0.9], E)
    assert isinstance(inside, InsideConvexCombination)
    assert inside.verify()
    out = poly_hull_membership([1.1, 0.5], E)
    assert isinstance(out, MonomialWitness)
    assert out.verify(E, [1.1, 0.5])
    assert out.alpha[1] == 0 and out.alpha[0] >= 1


def test_pol_origin_always_inside():
    E = _torus_sample()
    cert = poly_hull_membership([0.0, 0.0], E)
    assert isinstance(cert, InsideConvexCombination)


def test_pol_requires_circular_flag():
    E = CircularSample(TorusGrid(2, 8).points(), completely_circular=False)
    with pytest.raises(PreconditionError):
        poly_hull_membership([0.5, 0.5], E)


def test_pol_multiplicative_midpoint():
    # union of bi-disk boundary samples with radii (2,1) and (1,2)
    th = np.linspace(0, 2 * np.pi, 8, endpoint=False)
    pts = [
        [r1 * np.exp(1j * t1), r2 * np.exp(1j * t2)]
        for (r1, r2) in [(2, 1), (1, 2)]
        for t1 in th
        for t2 in th
    ]
    E = CircularSample(np.array(pts), completely_circular=True)
    s = math.sqrt(2)
    cert = poly_hull_membership([s, s], E)
    assert isinstance(cert, InsideConvexCombination)
    out = poly_hull_membership([2.2, 2.2], E)
    assert isinstance(out, MonomialWitness)
    assert out.verify(E, [2.2, 2.2])


def test_pol_vanishing_pattern():
    # sample lives on the z2 axis; any z with z1 != 0 is excluded outright
    E = CircularSample(
        np.array([[0.0, 0.5], [0.0, 1.0]], dtype=complex), completely_circular=True
    )
    cert = poly_hull_membership([0.5, 0.5], E)
    assert isinstance(cert, MonomialWitness)
    assert cert.log_sup_on_E == -math.inf


def test_hull_idempotence_on_samples():
    E = _torus_sample(8)
    rng = np.random.default_rng(2)
    for idx in rng.choice(E.points.shape[0], 12, replace=False):
        cert = poly_hull_membership(E.points[idx], E)
        assert isinstance(cert, InsideConvexCombination)


def test_torus_invariance():
    E = _torus_sample(8)
    rng = np.random.default_rng(3)
    ts = [np.exp(1j * rng.uniform(0, 2 * np.pi, 2)) for _ in range(8)]
    assert torus_invariance_check(E, [0.5, 0.7], ts)
    assert torus_invariance_check(E, [1.3, 0.2], ts)
    assert torus_invariance_check(E, [0.0, 0.0], ts)


# -- exponential certificates ------------------------------------------------


def test_exp_certificate_point():
    E = CircularSample(np.zeros((1, 1), dtype=complex))
    w = exp_certificate([1.0], E)
    assert isinstance(w, ExponentialWitness)
    assert w.value_at_z > 1.0
    assert w.verify(E.points, [1.0])


def test_exp_certificate_circle():
    pts = _circle_points()
    w = exp_certificate([2.0], CircularSample(pts))
    assert w is not None and w.verify(pts, [2.0])


def test_exp_certificate_inside_not_applicable():
    pts = _circle_points()
    assert exp_certificate([0.2 + 0.1j], CircularSample(pts)) is None


# -- three lines -------------------------------------------------------------


def test_three_lines_constant():
    assert three_lines_check(2.0, 2.0, lambda s: 2.0) <= 1e-12


def test_three_lines_exponential_equality():
    v = three_lines_check(math.exp(-1), 1.0, lambda s: np.exp(s - 1))
    assert abs(v) <= 1e-9


def test_three_lines_multiplicative_convexity():
    # p(g(tau)) for p = z1 z2 along the geometric interpolation of two
    # sample points; boundedness on the strip encodes log-convexity
    rng = np.random.default_rng(4)
    v = np.exp(1j * rng.uniform(0, 2 * np.pi, 2)) * np.array([2.0, 1.0])
    w = np.exp(1j * rng.uniform(0, 2 * np.pi, 2)) * np.array([1.0, 2.0])

    def f(s):
        g = np.abs(v) ** s * np.abs(w) ** (1 - s)
        return g[0] * g[1]

    A0 = abs(w[0] * w[1])
    A1 = abs(v[0] * v[1])
    assert three_lines_check(A0, A1, f) <= 1e-9


# -- E(b) dichotomy ----------------------------------------------------------


def test_eb_rational():
    rep = eb_dichotomy(0.5, 20)
    assert rep["rational"]
    assert rep["beta"] == (1, 2)
    assert rep["monomial_sup"] == pytest.approx(1.0)


def test_eb_rational_degree_cap():
    with pytest.raises(PreconditionError):
        eb_dichotomy(0.25, 2)


def test_eb_irrational():
    rep = eb_dichotomy(math.sqrt(2), 20)
    assert not rep["rational"]
    assert rep["all_achieved"]
    for w in rep["witnesses"]:
        assert w["achieved"]
        # the witness point really lies in E(b) and exceeds the threshold
        x1, x2 = w["point"]
        assert x1 ** math.sqrt(2) * x2 <= 1 + 1e-9
        a1, a2 = w["alpha"]
        assert a1 * math.log(x1) + a2 * math.log(x2) > math.log(1e6)


def test_eb_exterior_witness():
    cert = eb_certify_exterior(0.5, [2.0, 2 ** -0.5 + 0.01])
    assert cert.alpha == (1, 2)
    assert cert.log_value_at_z > 0
    with pytest.raises(PreconditionError):
        eb_certify_exterior(0.5, [1.0, 0.5])


def test_log_region():
    E = CircularSample(
        np.array([[1.0, 0.0], [2.0, 3.0]], dtype=complex), completely_circular=True
    )
    A = log_region(E, (0, 1))
    assert A.points.shape == (1, 2)
    assert np.allclose(A.points[0], [math.log(2), math.log(3)])


def test_downward_closure_hull_roundtrip():
    E = _torus_sample(8)
    A = log_region(E, (0, 1))
    hull = downward_closure_hull(A)
    assert hull.contains([0.0, 0.0])[0]
    assert hull.contains([-1.0, -0.5])[0]
    assert not hull.contains([0.2, 0.0])[0]
