import json
import math

import numpy as np
import pytest

from harmonia import PreconditionError
from harmonia.hulls import (
    CircularSample,
    PointCloud,
    convex_membership,
    eb_certify_exterior,
    exp_certificate,
    poly_hull_membership,
)
from harmonia.line import LineFunction
from harmonia.measures import LineAtomicMeasure
from harmonia.multiindex import Polynomial
from harmonia.serialization import (
    certificate_from_json,
    certificate_to_json,
    coeff_table_from_json,
    coeff_table_to_json,
    dumps,
    line_function_from_json,
    line_function_to_json,
    line_measure_from_json,
    line_measure_to_json,
    matrix_from_json,
    matrix_to_json,
    polynomial_from_json,
    polynomial_to_json,
    sample_from_json,
    sample_to_json,
    torus_function_from_json,
    torus_function_to_json,
    torus_measure_from_json,
    torus_measure_to_json,
    vector_from_csv,
    vector_from_json,
    vector_to_csv,
    vector_to_json,
)
from harmonia.torus import CoeffTable, TorusAtomicMeasure, TorusFunction, TorusGrid


def _roundtrip(obj, to_json, from_json):
    return from_json(json.loads(dumps(to_json(obj))))


def test_polynomial_roundtrip():
    p = Polynomial(2, {(0, 0): 1.0, (2, 1): 3 - 1j, (0, 3): 2j})
    q = _roundtrip(p, polynomial_to_json, polynomial_from_json)
    assert q.dimension == 2
    assert q.terms == p.terms


def test_polynomial_canonical_order():
    p = Polynomial(2, {(0, 3): 1.0, (2, 1): 1.0, (0, 0): 1.0})
    alphas = [t["alpha"] for t in polynomial_to_json(p)["terms"]]
    assert alphas == [[0, 0], [0, 3], [2, 1]]


def test_vector_json_and_csv():
    v = np.array([1.0, -2.5 + 0.125j, 1e-300])
    w = vector_from_json(json.loads(dumps(vector_to_json(v))))
    assert np.array_equal(v.astype(complex), w)
    text = vector_to_csv(v)
    u = vector_from_csv(text)
    assert np.array_equal(v.astype(complex), u)
    # repr writes shortest roundtripping decimals, so the encoding is exact
    assert vector_to_csv(u) == text
    with pytest.raises(PreconditionError):
        vector_from_csv("a,b\n1,2\n")


def test_torus_function_roundtrip():
    grid = TorusGrid(2, 8)
    Z = grid.points().reshape(8, 8, 2)
    f = TorusFunction(grid, Z[..., 0] * np.conj(Z[..., 1]))
    g = _roundtrip(f, torus_function_to_json, torus_function_from_json)
    assert g.grid.dim == 2 and g.grid.samples_per_dim == 8
    assert np.array_equal(f.values, g.values)


def test_coeff_table_roundtrip():
    c = CoeffTable(2, 3, {(1, 0): 2.0, (-3, 2): 1j, (0, 0): -1.0})
    d = _roundtrip(c, coeff_table_to_json, coeff_table_from_json)
    assert d.dim == 2 and d.band == 3
    assert d.coeffs == c.coeffs


def test_torus_measure_roundtrip():
    mu = TorusAtomicMeasure(
        [([1.0, 1j], 2.0), ([np.exp(0.3j), np.exp(-1.1j)], -0.5j)]
    )
    nu = _roundtrip(mu, torus_measure_to_json, torus_measure_from_json)
    assert len(nu.atoms) == len(mu.atoms)
    for (z1, c1), (z2, c2) in zip(mu.atoms, nu.atoms):
        assert np.allclose(z1, z2) and c1 == c2


def test_line_function_roundtrip():
    f = LineFunction(-2.0, 0.25, np.arange(16) * (1 + 1j), decay="exponential")
    g = _roundtrip(f, line_function_to_json, line_function_from_json)
    assert g.x0 == f.x0 and g.h == f.h and g.decay == "exponential"
    assert np.array_equal(f.values, g.values)


def test_line_function_symmetric_schema():
    obj = {
        "dim": 1,
        "L": 1.0,
        "M": 8,
        "decay": "compact",
        "values": [{"re": float(k), "im": 0.0} for k in range(8)],
    }
    f = line_function_from_json(obj)
    assert f.x0 == -1.0 and f.h == 0.25 and f.M == 8


def test_line_measure_roundtrip():
    mu = LineAtomicMeasure([((0.5, -1.0), 2.0), ((3.0, 0.0), 1j)])
    nu = _roundtrip(mu, line_measure_to_json, line_measure_from_json)
    assert len(nu.atoms) == len(mu.atoms)
    for (u1, c1), (u2, c2) in zip(mu.atoms, nu.atoms):
        assert np.array_equal(u1, u2) and c1 == c2


def test_matrix_roundtrip():
    A = np.array([[1.0, 2j], [3.0, 4.0 - 1j]])
    B = _roundtrip(A, matrix_to_json, matrix_from_json)
    assert np.array_equal(A, B)


def test_sample_roundtrip_real():
    S = PointCloud([[0.0, 1.0], [2.0, 3.0]])
    T = _roundtrip(S, sample_to_json, sample_from_json)
    assert isinstance(T, PointCloud)
    assert np.array_equal(S.points, T.points)


def test_sample_roundtrip_complex():
    E = CircularSample(TorusGrid(2, 4).points(), completely_circular=True)
    F = _roundtrip(E, sample_to_json, sample_from_json)
    assert isinstance(F, CircularSample)
    assert F.completely_circular
    assert np.allclose(E.points, F.points)


def test_certificate_roundtrips_verify():
    S = PointCloud([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    inside = convex_membership([0.25, 0.25], S)
    back = certificate_from_json(json.loads(dumps(certificate_to_json(inside))))
    assert back.verify()

    sep = convex_membership([2.0, 2.0], S)
    back = certificate_from_json(json.loads(dumps(certificate_to_json(sep))))
    assert back.verify(S.points)

    E = CircularSample(TorusGrid(2, 8).points(), completely_circular=True)
    mono = poly_hull_membership([1.5, 0.5], E)
    back = certificate_from_json(json.loads(dumps(certificate_to_json(mono))))
    assert back.alpha == mono.alpha
    assert back.verify(E, [1.5, 0.5])

    pts = np.exp(1j * np.linspace(0, 2 * np.pi, 16, endpoint=False))[:, None]
    expw = exp_certificate([2.0], CircularSample(pts))
    back = certificate_from_json(json.loads(dumps(certificate_to_json(expw))))
    assert back.verify(pts, [2.0])

    eb = eb_certify_exterior(0.5, [2.0, 1.0])
    back = certificate_from_json(json.loads(dumps(certificate_to_json(eb))))
    assert back.alpha == (1, 2) and back.log_value_at_z > 0


def test_certificate_not_applicable():
    obj = certificate_to_json(None)
    assert obj == {"variant": "NotApplicable"}
    assert certificate_from_json(obj) is None
    with pytest.raises(PreconditionError):
        certificate_from_json({"variant": "Bogus"})


def test_dumps_deterministic():
    p = Polynomial(2, {(1, 1): 1.0, (0, 2): 2.0})
    assert dumps(polynomial_to_json(p)) == dumps(polynomial_to_json(p))
    assert math.isfinite(json.loads(dumps({"x": 1.5}))["x"])
