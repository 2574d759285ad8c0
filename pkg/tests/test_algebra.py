import math

import numpy as np
import pytest

from harmonia import ConvergenceError, PreconditionError
from harmonia.algebra import (
    C1FnElement,
    GridFnElement,
    MatrixElement,
    c1_product,
    cstar_checks,
    neumann_inverse,
    operator_norm_power_iteration,
    perturb_invertible,
    spectral_radius,
    spectral_radius_eig,
    volterra_matrix,
    volterra_power_norm,
)


def test_norm_examples():
    assert abs(MatrixElement(np.eye(3)).norm() - 1.0) < 1e-10
    assert GridFnElement(np.full(16, 2 - 1j)).norm() == pytest.approx(abs(2 - 1j))
    x = np.linspace(0, 1, 64)
    f = C1FnElement(x, np.ones(64))
    assert f.norm() == pytest.approx(2.0)


def test_power_iteration_matches_svd():
    rng = np.random.default_rng(0)
    for _ in range(30):
        d = int(rng.integers(1, 7))
        A = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        got, _ = operator_norm_power_iteration(A)
        want = np.linalg.svd(A, compute_uv=False)[0]
        assert abs(got - want) <= 1e-8 * (1 + want)


def test_submultiplicativity_all_carriers():
    rng = np.random.default_rng(1)
    for _ in range(60):
        A = MatrixElement(rng.standard_normal((3, 3)))
        B = MatrixElement(rng.standard_normal((3, 3)))
        assert (A * B).norm() <= A.norm() * B.norm() + 1e-10 * (1 + A.norm() * B.norm())
        f = GridFnElement(rng.standard_normal(32))
        g = GridFnElement(rng.standard_normal(32))
        assert (f * g).norm() <= f.norm() * g.norm() + 1e-12
        u = C1FnElement(rng.standard_normal(32), rng.standard_normal(32))
        v = C1FnElement(rng.standard_normal(32), rng.standard_normal(32))
        prod = u.norm() * v.norm()
        assert (u * v).norm() <= prod + 1e-10 * (1 + prod)


def test_c1_product_rule():
    x = np.linspace(0, 1, 32)
    f = C1FnElement(x, np.ones(32))
    sq = c1_product(f, f)
    assert np.abs(sq.values - x * x).max() < 1e-15
    assert np.abs(sq.deriv - 2 * x).max() < 1e-15
    assert sq.norm() == pytest.approx(3.0)
    c = C1FnElement(np.full(32, 2.5), np.zeros(32))
    assert c.norm() == pytest.approx(2.5)


def test_c1_from_callable_consistency():
    f = C1FnElement.from_callable(lambda t: t * t, lambda t: 2 * t, 200)
    assert f.norm() == pytest.approx(3.0, abs=1e-10)
    with pytest.raises(PreconditionError):
        C1FnElement.from_callable(lambda t: t * t, lambda t: 5.0 + 0 * t, 200)


def test_perturb_invertible():
    assert perturb_invertible(1.0, 0.0)
    assert perturb_invertible(1.9, 0.5)
    assert not perturb_invertible(2.0, 0.5)
    with pytest.raises(PreconditionError):
        perturb_invertible(-1.0, 0.5)


def test_neumann_zero_and_scalar():
    e = MatrixElement(np.eye(3))
    zero = MatrixElement(np.zeros((3, 3)))
    S, bound, terms = neumann_inverse(zero)
    assert np.abs(S.data - np.eye(3)).max() < 1e-12
    assert bound == pytest.approx(1.0)
    S, bound, terms = neumann_inverse(e.scale(0.5))
    assert np.abs(S.data - 2 * np.eye(3)).max() < 1e-9
    assert bound == pytest.approx(2.0)


def test_neumann_nilpotent_large_norm():
    # strictly upper triangular with norm > 1: still invertible via powers
    N = np.zeros((4, 4))
    N[0, 1] = N[1, 2] = N[2, 3] = 3.0
    a = MatrixElement(N)
    assert a.norm() > 1
    S, bound, terms = neumann_inverse(a)
    direct = np.linalg.inv(np.eye(4) - N)
    assert np.abs(S.data - direct).max() < 1e-9


def test_neumann_residual_bound():
    rng = np.random.default_rng(2)
    A = rng.standard_normal((4, 4))
    a = MatrixElement(0.3 * A / np.linalg.norm(A, 2))
    S, bound, terms = neumann_inverse(a, tol=1e-12)
    e = np.eye(4)
    assert np.linalg.norm((e - a.data) @ S.data - e, 2) <= 1e-12 * 10
    assert S.norm() <= bound + 1e-9


def test_neumann_precondition():
    with pytest.raises(PreconditionError):
        neumann_inverse(MatrixElement(2 * np.eye(2)))


def test_spectral_radius_gridfn():
    f = GridFnElement(np.array([0.3, -0.8, 0.5]* 4))
    est, seq = spectral_radius(f, 64)
    for n, v in seq:
        assert v == pytest.approx(0.8, abs=1e-12)
    assert est == pytest.approx(0.8)


def test_spectral_radius_c1():
    x = np.linspace(0, 1, 400)
    f = C1FnElement(x, np.ones(400))
    est, seq = spectral_radius(f, 64)
    for n, v in seq:
        assert v == pytest.approx((1.0 + n) ** (1.0 / n), abs=1e-8)
    assert est < 1.1


def test_spectral_radius_nilpotent():
    est, _ = spectral_radius(MatrixElement([[0, 1], [0, 0]]), 8)
    assert est == 0.0


def test_spectral_radius_zero():
    est, seq = spectral_radius(MatrixElement(np.zeros((2, 2))), 16)
    assert est == 0.0


def test_spectral_radius_vs_eig():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A = MatrixElement(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
        est, seq = spectral_radius(A, 256)
        R = spectral_radius_eig(A)
        assert abs(est - R) <= 1e-2 * (1 + R)
        # every sequence entry is an upper bound for the eigenvalue radius
        for n, v in seq:
            assert R <= v + 1e-9 * (1 + v)


def test_spectral_radius_preconditions():
    with pytest.raises(PreconditionError):
        spectral_radius(MatrixElement(np.eye(2)), 4)
    with pytest.raises(PreconditionError):
        spectral_radius_eig(MatrixElement(np.eye(9)))


def test_spectral_radius_eig_examples():
    assert spectral_radius_eig(MatrixElement(np.diag([2.0, -3.0j]))) == pytest.approx(3.0)
    th = 0.7
    rot = MatrixElement([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    assert spectral_radius_eig(rot) == pytest.approx(1.0)


def test_volterra_norms():
    n1, s1 = volterra_power_norm(1, 2000)
    assert abs(n1 - 1.0) < 1e-3
    n3, s3 = volterra_power_norm(3, 2000)
    assert abs(s3 * 6 - 1) < 1e-3
    # sigma is achieved by the constant function: norm equals sigma here
    assert n3 == pytest.approx(s3, rel=1e-9)
    with pytest.raises(PreconditionError):
        volterra_power_norm(0)
    with pytest.raises(PreconditionError):
        volterra_power_norm(2, 100)


def test_volterra_matrix_row():
    T = volterra_matrix(5)
    # cumulative trapezoid of the constant 1 reproduces x_i
    ones = np.ones(5)
    x = np.linspace(0, 1, 5)
    assert np.abs(T @ ones - x).max() < 1e-12


def test_volterra_root_decay():
    vals = [volterra_power_norm(n, 600)[0] ** (1.0 / n) for n in (1, 3, 6, 9)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_cstar_unitary():
    th = np.pi / 5
    U = MatrixElement([[math.cos(th), -math.sin(th)], [math.sin(th), math.cos(th)]])
    rep = cstar_checks(U)
    assert rep["norm"] == pytest.approx(1.0, abs=1e-10)
    assert rep["adjoint_norm"] == pytest.approx(1.0, abs=1e-10)
    assert rep["TstarT_norm"] == pytest.approx(1.0, abs=1e-9)
    assert rep["normal"]
    for l, got, expect in rep["power_norms"]:
        assert got == pytest.approx(expect, rel=1e-8)


def test_cstar_selfadjoint():
    T = MatrixElement(np.diag([1.0, -2.0]))
    rep = cstar_checks(T)
    assert rep["TstarT_norm"] == pytest.approx(4.0, rel=1e-9)
    assert rep["norm_squared"] == pytest.approx(4.0, rel=1e-9)
    assert rep["normal"]


def test_cstar_nonnormal():
    T = MatrixElement([[0.0, 2.0], [0.0, 0.0]])
    rep = cstar_checks(T)
    assert not rep["normal"]
    assert rep["power_norms"] == []
    assert (T * T).norm() == pytest.approx(0.0, abs=1e-12)
    assert rep["TstarT_norm"] == pytest.approx(rep["norm_squared"], rel=1e-9)


def test_cstar_identity_random():
    rng = np.random.default_rng(4)
    for _ in range(20):
        T = MatrixElement(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        rep = cstar_checks(T)
        assert rep["adjoint_norm"] == pytest.approx(rep["norm"], abs=1e-10 * (1 + rep["norm"]))
        assert rep["TstarT_norm"] == pytest.approx(rep["norm_squared"], rel=1e-9)
