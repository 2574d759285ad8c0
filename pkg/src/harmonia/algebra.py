"""Normed-algebra numerics over three concrete carriers.

Carriers: square complex matrices with the operator norm, grid functions on
[0, 1] with the sup norm, and C^1 pairs (values, derivative samples) with
the norm sup + sup of the derivative.  On top of these: Neumann inversion,
the invertibility-perturbation predicate, the Gelfand spectral-radius
sequence, the discretized Volterra operator, and C*-identity checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, PreconditionError


@dataclass(frozen=True)
class NormReport:
    value: float
    method: str
    meta: dict = field(default_factory=dict)


class AlgebraElement:
    """Shared interface: immutable elements with +, -, *, scalar scaling."""

    def norm_report(self) -> NormReport:
        raise NotImplementedError

    def norm(self) -> float:
        return self.norm_report().value

    def identity_like(self) -> "AlgebraElement":
        raise NotImplementedError

    def power(self, n: int) -> "AlgebraElement":
        if n < 1:
            raise PreconditionError("power must be >= 1")
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            base = base * base
            n >>= 1
        return out


def operator_norm_power_iteration(A: np.ndarray, tol=1e-12, max_iter=10_000):
    """Largest singular value via power iteration on A^H A.

    Deterministic all-ones start, reseeded deterministically on stagnation.
    """
    d = A.shape[0]
    B = A.conj().T @ A
    v = np.ones(d) / np.sqrt(d)
    lam = 0.0
    rng = np.random.default_rng(0)
    for it in range(1, max_iter + 1):
        w = B @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0, it
        new_lam = float(np.real(np.vdot(v, w)))
        v = w / nw
        if abs(new_lam - lam) <= tol * max(1.0, abs(new_lam)):
            return float(np.sqrt(max(new_lam, 0.0))), it
        if it % 500 == 0:
            # stagnation guard: mix in a deterministic random direction
            v = v + 0.01 * rng.standard_normal(d)
            v = v / np.linalg.norm(v)
        lam = new_lam
    raise ConvergenceError("power iteration did not converge")


class MatrixElement(AlgebraElement):
    def __init__(self, data):
        A = np.asarray(data, dtype=complex)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise PreconditionError("matrix carrier needs a square matrix")
        self.data = A

    @property
    def d(self) -> int:
        return self.data.shape[0]

    def norm_report(self) -> NormReport:
        value, iters = operator_norm_power_iteration(self.data)
        return NormReport(value, "power-iteration", {"iterations": iters, "tol": 1e-12})

    def identity_like(self):
        return MatrixElement(np.eye(self.d))

    def adjoint(self):
        return MatrixElement(self.data.conj().T)

    def __add__(self, other):
        return MatrixElement(self.data + other.data)

    def __sub__(self, other):
        return MatrixElement(self.data - other.data)

    def __mul__(self, other):
        return MatrixElement(self.data @ other.data)

    def scale(self, t):
        return MatrixElement(t * self.data)


class GridFnElement(AlgebraElement):
    """Samples of a continuous function on the uniform M-point grid over [0, 1]."""

    def __init__(self, values):
        v = np.asarray(values, dtype=complex).ravel()
        if v.size < 2:
            raise PreconditionError("grid carrier needs at least 2 samples")
        self.values = v

    @classmethod
    def from_callable(cls, fn, M: int):
        return cls([fn(x) for x in np.linspace(0.0, 1.0, M)])

    def norm_report(self) -> NormReport:
        return NormReport(float(np.abs(self.values).max()), "exact")

    def identity_like(self):
        return GridFnElement(np.ones_like(self.values))

    def __add__(self, other):
        return GridFnElement(self.values + other.values)

    def __sub__(self, other):
        return GridFnElement(self.values - other.values)

    def __mul__(self, other):
        self._check(other)
        return GridFnElement(self.values * other.values)

    def scale(self, t):
        return GridFnElement(t * self.values)

    def _check(self, other):
        if self.values.size != other.values.size:
            raise PreconditionError("grid mismatch")


class C1FnElement(AlgebraElement):
    """(values, derivative samples) on [0, 1]; norm is sup + sup of derivative.

    Products carry the exact product rule on the stored derivative samples
    rather than re-differencing, which keeps submultiplicativity a roundoff
    identity.
    """

    def __init__(self, values, deriv):
        v = np.asarray(values, dtype=complex).ravel()
        dv = np.asarray(deriv, dtype=complex).ravel()
        if v.size != dv.size or v.size < 2:
            raise PreconditionError("C1 carrier needs matching sample arrays")
        self.values = v
        self.deriv = dv

    @classmethod
    def from_callable(cls, fn, dfn, M: int):
        x = np.linspace(0.0, 1.0, M)
        vals = np.array([fn(t) for t in x], dtype=complex)
        dvals = np.array([dfn(t) for t in x], dtype=complex)
        # consistency check against centered differences, O(h^2)
        h = 1.0 / (M - 1)
        cd = (vals[2:] - vals[:-2]) / (2 * h)
        if np.abs(cd - dvals[1:-1]).max() > 10.0 * h + 10.0 * h**2 * (
            1 + np.abs(dvals).max()
        ):
            raise PreconditionError("derivative samples inconsistent with values")
        return cls(vals, dvals)

    def norm_report(self) -> NormReport:
        value = float(np.abs(self.values).max() + np.abs(self.deriv).max())
        return NormReport(value, "exact")

    def identity_like(self):
        return C1FnElement(np.ones_like(self.values), np.zeros_like(self.deriv))

    def __add__(self, other):
        return C1FnElement(self.values + other.values, self.deriv + other.deriv)

    def __sub__(self, other):
        return C1FnElement(self.values - other.values, self.deriv - other.deriv)

    def __mul__(self, other):
        if self.values.size != other.values.size:
            raise PreconditionError("grid mismatch")
        return C1FnElement(
            self.values * other.values,
            self.deriv * other.values + self.values * other.deriv,
        )

    def scale(self, t):
        return C1FnElement(t * self.values, t * self.deriv)


def c1_product(f: C1FnElement, g: C1FnElement) -> C1FnElement:
    """Pointwise product with derivative f' g + f g' (exact product rule)."""
    return f * g


def perturb_invertible(b_inv_norm: float, a_norm: float) -> bool:
    """Certificate predicate for inverting b - a: true iff ||a|| ||b^-1|| < 1."""
    if b_inv_norm < 0 or a_norm < 0:
        raise PreconditionError("norms must be nonnegative")
    return a_norm * b_inv_norm < 1.0


def neumann_inverse(a: AlgebraElement, tol: float = 1e-10, max_terms: int = 20_000):
    """Invert e - a by the geometric series sum of a^j.

    Precondition: some power a^k with k <= 64 has norm < 1 (this already
    forces the series to converge).  Returns (inverse, bound, terms) where
    bound is 1/(1 - ||a||) when ||a|| < 1 and the residual satisfies
    ||(e - a) S - e|| <= tol.
    """
    e = a.identity_like()
    norm_a = a.norm()
    power = a
    ok = norm_a < 1.0
    k = 1
    while not ok and k < 64:
        power = power * a
        k += 1
        ok = power.norm() < 1.0
    if not ok:
        raise PreconditionError("no power a^k with k <= 64 has norm < 1")

    S = e
    term = e
    for j in range(1, max_terms + 1):
        term = term * a
        S = S + term
        if j % 8 == 0 or term.norm() <= tol:
            residual = ((e - a) * S - e).norm()
            if residual <= tol:
                bound = 1.0 / (1.0 - norm_a) if norm_a < 1.0 else float("inf")
                return S, bound, j
    raise ConvergenceError("Neumann series did not meet tolerance")


def spectral_radius(x: AlgebraElement, max_power: int = 256):
    """Gelfand sequence: (min over computed n of ||x^n||^(1/n), full sequence).

    Powers are taken at n = 1, 2, 4, ..., plus a tail of consecutive n just
    below max_power.  The element is rescaled by 1/||x|| internally before
    powering (justified by r(t x) = |t| r(x)), so no overflow can occur.
    Every value is an upper bound for the spectral radius by the infimum
    formula.
    """
    if max_power < 8:
        raise PreconditionError("max_power must be >= 8")
    nx = x.norm()
    if nx == 0.0:
        return 0.0, [(1, 0.0)]
    y = x.scale(1.0 / nx)

    ns = []
    n = 1
    while n <= max_power:
        ns.append(n)
        n *= 2
    ns.extend(range(max(1, max_power - 7), max_power + 1))
    ns = sorted(set(ns))

    # cache n -> (unit-norm power, log ||y^n||); renormalizing after every
    # multiply keeps all intermediates at norm 1, so ||y^n|| as small as
    # exp(-1e5) is still resolved (a raw y^256 would underflow doubles)
    seq = []
    cache = {1: (y, 0.0)}

    def get_power(m):
        k = max(j for j in cache if j <= m)
        acc, logn = cache[k]
        while k < m:
            step = max(j for j in cache if j <= m - k)
            acc = acc * cache[step][0]
            logn += cache[step][1]
            r = acc.norm()
            if r == 0.0:
                acc, logn = acc, -math.inf
            else:
                acc = acc.scale(1.0 / r)
                logn += math.log(r)
            k += step
            cache[k] = (acc, logn)
        return cache[m]

    for n in ns:
        _, logn = get_power(n)
        value = 0.0 if logn == -math.inf else nx * math.exp(logn / n)
        seq.append((n, value))
    estimate = min(v for _, v in seq)
    return estimate, seq


def spectral_radius_eig(x: MatrixElement) -> float:
    """Largest eigenvalue modulus (QR-iteration eigenvalues); oracle for the
    Gelfand sequence.  Limited to d <= 8 desk-scale matrices."""
    if x.d > 8:
        raise PreconditionError("eigenvalue oracle limited to d <= 8")
    return float(np.abs(np.linalg.eigvals(x.data)).max())


def volterra_matrix(M: int) -> np.ndarray:
    """Composite-trapezoid cumulative-integral matrix for (Tf)(x) = int_0^x f."""
    if M < 2:
        raise PreconditionError("grid too small")
    h = 1.0 / (M - 1)
    T = np.zeros((M, M))
    for i in range(1, M):
        T[i, : i + 1] = h
        T[i, 0] = h / 2
        T[i, i] = h / 2
    return T


# keeps only T and the most recent power per grid size, so that sweeping
# n = 1..n_max costs one matmul per step without holding every power
_volterra_cache: dict = {}


def volterra_power_norm(n: int, M: int = 2000):
    """Sup-norm operator norm of the n-th power of the discretized Volterra
    operator (max absolute row sum); converges to 1/n! as M grows.

    Returns (norm, sigma) where sigma = T^n(1)(1) is the achieving value for
    the constant function 1; for this positive operator the two coincide.
    """
    if not (1 <= n <= 12):
        raise PreconditionError("n must lie in [1, 12]")
    if M < 500:
        raise PreconditionError("need M >= 500 grid points")
    entry = _volterra_cache.get(M)
    if entry is None:
        T = volterra_matrix(M)
        entry = {"T": T, "n": 1, "Tn": T}
        _volterra_cache[M] = entry
    if entry["n"] > n:
        entry["n"], entry["Tn"] = 1, entry["T"]
    while entry["n"] < n:
        entry["Tn"] = entry["Tn"] @ entry["T"]
        entry["n"] += 1
    Tn = entry["Tn"]
    norm = float(np.abs(Tn).sum(axis=1).max())
    sigma = float((Tn @ np.ones(M))[-1])
    return norm, sigma


def cstar_checks(T: MatrixElement) -> dict:
    """C*-identity report for a matrix with the operator norm.

    Contains ||T||, ||T*||, ||T* T|| vs ||T||^2, a normality flag, and for
    normal inputs the power identity ||T^l|| vs ||T||^l for l <= 8.
    """
    if T.d > 16:
        raise PreconditionError("C* checks limited to d <= 16")
    nT = T.norm()
    nTstar = T.adjoint().norm()
    nTsT = (T.adjoint() * T).norm()
    comm = T.adjoint() * T - T * T.adjoint()
    normal = float(np.abs(comm.data).max()) <= 1e-12 * max(1.0, nT**2)
    report = {
        "norm": nT,
        "adjoint_norm": nTstar,
        "TstarT_norm": nTsT,
        "norm_squared": nT**2,
        "normal": normal,
        "power_norms": [],
    }
    if normal:
        for l in range(1, 9):
            report["power_norms"].append((l, T.power(l).norm(), nT**l))
    return report
