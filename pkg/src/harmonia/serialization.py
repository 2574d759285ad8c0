"""JSON (and CSV vector) I/O for the workbench types.

Schemas are binary-free and canonical: polynomial and coefficient terms are
sorted graded-lexicographically so serialization is reproducible.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .errors import PreconditionError
from .hulls import (
    CircularSample,
    ExponentialWitness,
    InsideConvexCombination,
    MonomialWitness,
    PointCloud,
    SeparatingFunctional,
)
from .measures import LineAtomicMeasure
from .multiindex import Polynomial, mi_degree
from .torus import CoeffTable, TorusAtomicMeasure, TorusFunction, TorusGrid
from .line import LineFunction


def _c(value) -> dict:
    value = complex(value)
    return {"re": value.real, "im": value.imag}


def _fromc(obj) -> complex:
    return complex(obj["re"], obj["im"])


# -- polynomials ------------------------------------------------------------


def polynomial_to_json(p: Polynomial) -> dict:
    return {
        "dim": p.dimension,
        "terms": [
            {"alpha": list(a), **_c(coeff)} for a, coeff in p.sorted_terms()
        ],
    }


def polynomial_from_json(obj) -> Polynomial:
    return Polynomial(
        obj["dim"], {tuple(t["alpha"]): _fromc(t) for t in obj["terms"]}
    )


# -- vectors ----------------------------------------------------------------


def vector_to_json(v) -> dict:
    return {"entries": [_c(x) for x in np.asarray(v, dtype=complex)]}


def vector_from_json(obj) -> np.ndarray:
    return np.array([_fromc(e) for e in obj["entries"]], dtype=complex)


def vector_to_csv(v) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["re", "im"])
    for x in np.asarray(v, dtype=complex):
        writer.writerow([repr(float(x.real)), repr(float(x.imag))])
    return buf.getvalue()


def vector_from_csv(text: str) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0][:2] != ["re", "im"]:
        raise PreconditionError("vector CSV must have a re,im header")
    return np.array([complex(float(r[0]), float(r[1])) for r in rows[1:]])


# -- torus ------------------------------------------------------------------


def torus_function_to_json(f: TorusFunction) -> dict:
    return {
        "dim": f.grid.dim,
        "N": f.grid.samples_per_dim,
        "values": [_c(v) for v in f.values.ravel()],
    }


def torus_function_from_json(obj) -> TorusFunction:
    grid = TorusGrid(obj["dim"], obj["N"])
    return TorusFunction(grid, np.array([_fromc(v) for v in obj["values"]]))


def coeff_table_to_json(c: CoeffTable) -> dict:
    items = sorted(c.coeffs.items(), key=lambda kv: (mi_degree(np.abs(kv[0])), kv[0]))
    return {
        "dim": c.dim,
        "K": c.band,
        "coeffs": [{"alpha": list(a), **_c(v)} for a, v in items],
    }


def coeff_table_from_json(obj) -> CoeffTable:
    return CoeffTable(
        obj["dim"], obj["K"], {tuple(t["alpha"]): _fromc(t) for t in obj["coeffs"]}
    )


def torus_measure_to_json(mu: TorusAtomicMeasure) -> dict:
    return {
        "atoms": [
            {"z": [_c(zj) for zj in z], **_c(c)} for z, c in mu.atoms
        ]
    }


def torus_measure_from_json(obj) -> TorusAtomicMeasure:
    return TorusAtomicMeasure(
        [([_fromc(zj) for zj in a["z"]], _fromc(a)) for a in obj["atoms"]]
    )


# -- line -------------------------------------------------------------------


def line_function_to_json(f: LineFunction) -> dict:
    return {
        "dim": 1,
        "x0": f.x0,
        "h": f.h,
        "M": f.M,
        "decay": f.decay,
        "values": [_c(v) for v in f.values],
    }


def line_function_from_json(obj) -> LineFunction:
    if "x0" in obj:
        x0, h = obj["x0"], obj["h"]
    else:
        # symmetric schema {dim, L, M, decay, values}
        x0, h = -obj["L"], 2.0 * obj["L"] / obj["M"]
    return LineFunction(
        x0, h, np.array([_fromc(v) for v in obj["values"]]), obj.get("decay", "compact")
    )


def line_measure_to_json(mu: LineAtomicMeasure) -> dict:
    return {"atoms": [{"u": list(map(float, u)), **_c(c)} for u, c in mu.atoms]}


def line_measure_from_json(obj) -> LineAtomicMeasure:
    return LineAtomicMeasure([(a["u"], _fromc(a)) for a in obj["atoms"]])


# -- matrices ---------------------------------------------------------------


def matrix_to_json(A) -> dict:
    A = np.asarray(A, dtype=complex)
    return {"d": A.shape[0], "entries": [_c(v) for v in A.ravel()]}


def matrix_from_json(obj) -> np.ndarray:
    d = obj["d"]
    return np.array([_fromc(v) for v in obj["entries"]]).reshape(d, d)


# -- hull samples and certificates ------------------------------------------


def sample_to_json(E) -> dict:
    if isinstance(E, PointCloud):
        return {"kind": "real", "points": E.points.tolist()}
    return {
        "kind": "complex",
        "n": E.n,
        "points": [[_c(w) for w in row] for row in E.points],
        "flags": {"completelyCircular": E.completely_circular},
    }


def sample_from_json(obj):
    if obj.get("kind") == "real":
        return PointCloud(np.array(obj["points"], dtype=float))
    pts = np.array([[_fromc(w) for w in row] for row in obj["points"]])
    return CircularSample(pts, obj.get("flags", {}).get("completelyCircular", False))


def certificate_to_json(cert) -> dict:
    if cert is None:
        return {"variant": "NotApplicable"}
    if isinstance(cert, InsideConvexCombination):
        return {
            "variant": "InsideConvexCombination",
            "weights": list(map(float, cert.weights)),
            "supportPoints": np.asarray(cert.support_points, dtype=float).tolist(),
            "target": np.asarray(cert.target, dtype=float).tolist(),
            "downward": cert.downward,
        }
    if isinstance(cert, SeparatingFunctional):
        return {
            "variant": "SeparatingFunctional",
            "lambda": list(map(float, cert.lam)),
            "margin": cert.margin,
            "target": np.asarray(cert.target, dtype=float).tolist(),
        }
    if isinstance(cert, MonomialWitness):
        return {
            "variant": "MonomialWitness",
            "alpha": list(cert.alpha),
            "logSupOnE": cert.log_sup_on_E,
            "logValueAtZ": cert.log_value_at_z,
        }
    if isinstance(cert, ExponentialWitness):
        return {
            "variant": "ExponentialWitness",
            "mu": [_c(c) for c in cert.mu],
            "t": cert.t,
            "boundarySup": cert.boundary_sup,
            "valueAtZ": cert.value_at_z,
        }
    raise PreconditionError(f"unknown certificate type {type(cert).__name__}")


def certificate_from_json(obj):
    variant = obj.get("variant")
    if variant == "NotApplicable":
        return None
    if variant == "InsideConvexCombination":
        return InsideConvexCombination(
            np.array(obj["weights"], dtype=float),
            np.array(obj["supportPoints"], dtype=float),
            np.array(obj["target"], dtype=float),
            obj.get("downward", False),
        )
    if variant == "SeparatingFunctional":
        return SeparatingFunctional(
            np.array(obj["lambda"], dtype=float),
            float(obj["margin"]),
            np.array(obj["target"], dtype=float),
        )
    if variant == "MonomialWitness":
        return MonomialWitness(
            tuple(obj["alpha"]), float(obj["logSupOnE"]), float(obj["logValueAtZ"])
        )
    if variant == "ExponentialWitness":
        return ExponentialWitness(
            np.array([_fromc(c) for c in obj["mu"]]),
            float(obj["t"]),
            float(obj["boundarySup"]),
            float(obj["valueAtZ"]),
        )
    raise PreconditionError(f"unknown certificate variant {variant!r}")


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
