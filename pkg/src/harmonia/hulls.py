"""Convex and polynomial hull membership with machine-checkable certificates.

Sets are represented by finite samples plus structure flags; every claim is
relative to the sample and every returned certificate self-verifies against
it.  Convex projection uses an away-step conditional-gradient scheme over
the simplex (deterministic initialization at the nearest sample point,
duality-gap stopping), so there are no solver dependencies and the final
iterate is itself the convex-combination certificate.  Polynomial-hull
decisions for completely circular samples go through the log-modulus image:
membership in the downward-closed convex hull of the log points, with
separating functionals rationalized into integer monomial exponents.
Boundary points (margin within tolerance) are classified Inside, matching
the closedness of the polynomial hull.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import CertificateError, ConvergenceError, PreconditionError


@dataclass(frozen=True)
class PointCloud:
    points: np.ndarray  # (m, d) real

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.points, dtype=float))
        if P.size == 0 or not np.all(np.isfinite(P)):
            raise PreconditionError("point cloud must be nonempty and finite")
        object.__setattr__(self, "points", P)

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class CircularSample:
    """Finite sample of a set in C^n; the caller declares complete circularity."""

    points: np.ndarray  # (m, n) complex
    completely_circular: bool = False

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.points, dtype=complex))
        if P.size == 0 or not np.all(np.isfinite(P)):
            raise PreconditionError("sample must be nonempty and finite")
        object.__setattr__(self, "points", P)

    @property
    def n(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True)
class LogRegion:
    """Log-modulus image A_I of a circular sample on a support pattern I."""

    pattern: tuple
    points: np.ndarray  # (m', |I|)


def log_region(E: CircularSample, pattern) -> LogRegion:
    """Restrict to samples nonzero on the pattern and take log moduli."""
    pattern = tuple(sorted(set(int(j) for j in pattern)))
    mods = np.abs(E.points[:, pattern])
    keep = np.all(mods > 0.0, axis=1)
    pts = np.log(mods[keep]) if keep.any() else np.empty((0, len(pattern)))
    return LogRegion(pattern, pts)


# ---------------------------------------------------------------------------
# away-step conditional gradient over the simplex


def _fw_simplex(m, grad_fn, init, gap_tol, max_iter=100_000):
    """Minimize a smooth convex function over the probability simplex.

    grad_fn(t) returns the gradient over vertices.  Exact line search by
    bisection on the directional slope (the slope is monotone for convex
    objectives).  Returns (t, gap, iterations).
    """
    t = np.zeros(m)
    t[init] = 1.0
    if m == 1:
        return t, 0.0, 0
    best_gap = math.inf
    stall = 0
    for it in range(1, max_iter + 1):
        g = grad_fn(t)
        gt = float(g @ t)
        s = int(np.argmin(g))
        gap = gt - float(g[s])
        if gap <= gap_tol:
            return t, gap, it
        # roundoff floor: once the gap stops improving the iterate is as
        # accurate as doubles allow, which the callers' margins absorb
        if gap < best_gap * (1.0 - 1e-12):
            best_gap, stall = gap, 0
        else:
            stall += 1
            if stall > 50:
                return t, gap, it
        active = np.flatnonzero(t > 0)
        v = active[int(np.argmax(g[active]))]
        fw_slope = float(g[s]) - gt
        aw_slope = gt - float(g[v])
        if fw_slope <= aw_slope or t[v] >= 1.0 - 1e-15:
            d = -t.copy()
            d[s] += 1.0
            gamma_max = 1.0
        else:
            d = t.copy()
            d[v] -= 1.0
            gamma_max = t[v] / (1.0 - t[v])

        def slope(gamma):
            return float(d @ grad_fn(t + gamma * d))

        if slope(gamma_max) <= 0.0:
            gamma = gamma_max
        else:
            lo, hi = 0.0, gamma_max
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if slope(mid) <= 0.0:
                    lo = mid
                else:
                    hi = mid
            gamma = lo
        if gamma <= 0.0:
            return t, gap, it
        t = t + gamma * d
        np.clip(t, 0.0, None, out=t)
        t /= t.sum()
    raise ConvergenceError("conditional gradient hit its iteration cap")


def _caratheodory(Y: np.ndarray, w: np.ndarray):
    """Reduce a convex combination to at most d+1 support points, exactly
    preserving the represented point."""
    d = Y.shape[1]
    idx = np.flatnonzero(w > 1e-15)
    w = w.copy()
    while idx.size > d + 1:
        B = np.hstack([Y[idx], np.ones((idx.size, 1))])  # (k, d+1), k > d+1
        # c with c @ B = 0: affine dependence among the support points
        _, sv, vt = np.linalg.svd(B.T)
        c = vt[-1]
        if np.all(c <= 0):
            c = -c
        pos = c > 1e-15
        if not pos.any():
            break
        gamma = np.min(w[idx][pos] / c[pos])
        w[idx] = w[idx] - gamma * c
        w[w < 1e-14] = 0.0
        idx = np.flatnonzero(w > 0)
    return idx, w


# ---------------------------------------------------------------------------
# certificates


@dataclass
class InsideConvexCombination:
    """Weights in the simplex reproducing (or dominating, in the downward
    log-domain case) the queried point from the support points."""

    weights: np.ndarray
    support_points: np.ndarray
    target: np.ndarray
    downward: bool = False

    def verify(self, tol: float = 1e-7) -> bool:
        w = np.asarray(self.weights, dtype=float)
        if np.any(w < -1e-12) or abs(w.sum() - 1.0) > 1e-9:
            return False
        combo = w @ np.asarray(self.support_points, dtype=float)
        if self.downward:
            return bool(np.all(self.target <= combo + tol))
        return bool(np.linalg.norm(combo - self.target) <= tol)


@dataclass
class SeparatingFunctional:
    """Linear functional with sup over the samples strictly below its value
    at the queried point."""

    lam: np.ndarray
    margin: float
    target: np.ndarray

    def verify(self, samples: np.ndarray) -> bool:
        lam = np.asarray(self.lam, dtype=float)
        vals = np.asarray(samples, dtype=float) @ lam
        return bool(float(lam @ self.target) - float(vals.max()) >= 0.5 * self.margin > 0)


@dataclass
class MonomialWitness:
    """Integer exponent alpha with |z^alpha| strictly above the sample sup.

    Values are carried in the log domain so huge exponents stay finite.
    """

    alpha: tuple
    log_sup_on_E: float  # -inf when the monomial vanishes on every sample
    log_value_at_z: float

    @property
    def sup_on_E(self) -> float:
        return math.exp(self.log_sup_on_E) if self.log_sup_on_E > -math.inf else 0.0

    @property
    def value_at_z(self) -> float:
        return math.exp(self.log_value_at_z)

    def verify(self, E: CircularSample, z) -> bool:
        ls = monomial_log_sup(E, self.alpha)
        lv = _monomial_log_value(np.abs(np.asarray(z, dtype=complex)), self.alpha)
        return bool(lv > ls)


@dataclass
class ExponentialWitness:
    """Affine-linear mu and step t with |1 + t mu(z)| above the sample sup."""

    mu: np.ndarray  # complex-linear coefficients
    t: float
    boundary_sup: float
    value_at_z: float

    def mu_at(self, w) -> complex:
        return complex(np.dot(self.mu, np.asarray(w, dtype=complex)))

    def verify(self, points: np.ndarray, z) -> bool:
        vals = np.abs(1.0 + self.t * (np.asarray(points, dtype=complex) @ self.mu))
        vz = abs(1.0 + self.t * self.mu_at(z))
        return bool(vz > float(vals.max()))


# ---------------------------------------------------------------------------
# convex membership


def convex_membership(x, S: PointCloud, tol: float = 1e-9):
    """Decide x in Con(S) with a certificate either way.

    Inside: convex combination with at most d+1 support points.  Outside:
    separating functional lam(y) = <y, x - u> built from the simplex
    projection u of x, with margin lam(x) - max lam > tol (1 + |x|).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    Y = S.points
    if x.size != S.dim:
        raise PreconditionError("query point has wrong dimension")

    dists = np.linalg.norm(Y - x, axis=1)
    nearest = int(np.argmin(dists))
    if dists[nearest] <= tol:
        w = np.zeros(Y.shape[0])
        w[nearest] = 1.0
        return InsideConvexCombination(
            np.array([1.0]), Y[nearest : nearest + 1], x
        )

    def grad(t):
        return Y @ (t @ Y - x)

    t, gap, _ = _fw_simplex(Y.shape[0], grad, nearest, 0.25 * tol * tol)
    u = t @ Y
    lam = x - u
    margin = float(lam @ x - (Y @ lam).max())
    if margin > tol * (1.0 + np.linalg.norm(x)):
        return SeparatingFunctional(lam, margin, x)
    idx, w = _caratheodory(Y, t)
    return InsideConvexCombination(w[idx] / w[idx].sum(), Y[idx], x)


class DownwardHull:
    """Membership oracle for the downward-closed convex hull of log points.

    contains(r) minimizes ||(r - c)_+||^2 over c in Con(A) by conditional
    gradient; a zero residual means some hull point dominates r, a nonzero
    residual is itself a componentwise-nonnegative separating functional.
    """

    def __init__(self, points: np.ndarray):
        A = np.atleast_2d(np.asarray(points, dtype=float))
        if A.size == 0:
            raise PreconditionError("empty log region")
        self.points = np.unique(np.round(A, 12), axis=0)

    def contains(self, r, tol: float = 1e-7):
        """Returns (inside, info): info has 'weights' or 'lam' and 'margin'."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        A = self.points
        m = A.shape[0]

        def grad(t):
            return -(A @ np.clip(r - t @ A, 0.0, None))

        init = int(np.argmin(np.linalg.norm(np.clip(r - A, 0.0, None), axis=1)))
        t, _, _ = _fw_simplex(m, grad, init, 0.5 * tol * tol)
        resid = np.clip(r - t @ A, 0.0, None)
        if np.linalg.norm(resid) <= tol:
            return True, {"weights": t, "points": A}
        lam = resid
        margin = float(lam @ r - (A @ lam).max())
        return False, {"lam": lam, "margin": margin, "points": A}


def downward_closure_hull(A: LogRegion) -> DownwardHull:
    return DownwardHull(A.points)


# ---------------------------------------------------------------------------
# monomials and rationalization


def _monomial_log_value(mods, alpha) -> float:
    out = 0.0
    for mj, aj in zip(mods, alpha):
        if aj == 0:
            continue
        if mj == 0.0:
            return -math.inf
        out += aj * math.log(mj)
    return out


def monomial_log_sup(E: CircularSample, alpha) -> float:
    """log of max over samples of |w^alpha| (0^0 = 1); -inf if it vanishes
    on every sample."""
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != E.n:
        raise PreconditionError("exponent has wrong dimension")
    mods = np.abs(E.points)
    return max(
        (_monomial_log_value(row, alpha) for row in mods), default=-math.inf
    )


def monomial_sup(E: CircularSample, alpha) -> float:
    """max over samples of |w^alpha|."""
    ls = monomial_log_sup(E, alpha)
    return math.exp(ls) if ls > -math.inf else 0.0


def rationalize_exponent(lam, cap: int):
    """Approximate a nonnegative direction by a small integer exponent vector.

    Continued-fraction (limit_denominator) approximation of the ratios to
    the largest coordinate, brought to a common denominator and reduced.
    """
    lam = np.clip(np.asarray(lam, dtype=float), 0.0, None)
    lmax = lam.max()
    if lmax <= 0:
        raise PreconditionError("separating direction must be nonzero")
    fracs = [Fraction(float(l / lmax)).limit_denominator(cap) for l in lam]
    L = math.lcm(*(f.denominator for f in fracs))
    alpha = [int(f * L) for f in fracs]
    g = math.gcd(*alpha)
    if g > 1:
        alpha = [a // g for a in alpha]
    if max(alpha) > 10**8:
        raise CertificateError("rationalized exponent overflow")
    return tuple(alpha)


# ---------------------------------------------------------------------------
# polynomial hull membership


def poly_hull_membership(z, E: CircularSample, tol: float = 1e-7):
    """Decide membership of z in the polynomial hull of a bounded completely
    circular sample, with a verified certificate either way.

    Inside: a dominating convex combination in the log-modulus image of the
    support pattern of z.  Outside: a monomial witness whose sup over the
    samples is strictly below its value at z (self-verified; a failing
    certificate raises rather than being returned).
    """
    if not E.completely_circular:
        raise PreconditionError("sample must be marked completely circular")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if z.size != E.n:
        raise PreconditionError("query point has wrong dimension")
    mods = np.abs(z)
    pattern = tuple(int(j) for j in np.flatnonzero(mods > 0.0))
    if not pattern:
        # 0 lies in every nonempty completely circular set
        return InsideConvexCombination(
            np.array([1.0]), np.zeros((1, 1)), np.zeros(1), downward=True
        )
    region = log_region(E, pattern)
    alpha_I = tuple(1 if j in pattern else 0 for j in range(E.n))
    if region.points.shape[0] == 0:
        # the pattern monomial vanishes identically on the sample
        w = MonomialWitness(
            alpha_I, -math.inf, _monomial_log_value(mods, alpha_I)
        )
        if not w.verify(E, z):
            raise CertificateError("vanishing-pattern witness failed verification")
        return w

    r = np.log(mods[np.asarray(pattern)])
    hull = downward_closure_hull(region)
    inside, info = hull.contains(r, tol)
    if inside:
        return InsideConvexCombination(
            info["weights"], info["points"], r, downward=True
        )

    cap = 10_000
    while cap <= 1_000_000:
        alpha_sub = rationalize_exponent(info["lam"], cap)
        alpha = [0] * E.n
        for j, a in zip(pattern, alpha_sub):
            alpha[j] = a
        alpha = tuple(alpha)
        witness = MonomialWitness(
            alpha, monomial_log_sup(E, alpha), _monomial_log_value(mods, alpha)
        )
        if witness.verify(E, z):
            return witness
        cap *= 2
    raise CertificateError("no verifiable monomial witness within the exponent cap")


def torus_invariance_check(E: CircularSample, z, torus_elements) -> bool:
    """Hull decisions are invariant under the coordinatewise torus action."""
    base = isinstance(poly_hull_membership(z, E), MonomialWitness)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    for t in torus_elements:
        t = np.atleast_1d(np.asarray(t, dtype=complex))
        if np.any(np.abs(np.abs(t) - 1.0) > 1e-12):
            raise PreconditionError("torus elements must have unit modulus")
        rotated = isinstance(poly_hull_membership(t * z, E), MonomialWitness)
        if rotated != base:
            return False
    return True


# ---------------------------------------------------------------------------
# exponential certificates and auxiliary checks


def embed_complex(points) -> np.ndarray:
    """C^n -> R^2n, interleaving real and imaginary parts."""
    P = np.atleast_2d(np.asarray(points, dtype=complex))
    out = np.empty((P.shape[0], 2 * P.shape[1]))
    out[:, 0::2] = P.real
    out[:, 1::2] = P.imag
    return out


def exp_certificate(z, E, tol: float = 1e-9):
    """Exponential witness for z outside the closed convex hull of E in C^n.

    Separates z from the samples in R^2n, turns the functional into a
    complex-linear mu with sup_E Re mu < Re mu(z), and picks the step
    t = min(1, gap / (2C + 2|mu(z)|^2 + 1)) with C = sup_E |mu|^2, which
    makes |1 + t mu| strictly larger at z than anywhere on the sample.
    Returns None (not applicable) when z lies in the closed convex hull.
    """
    points = E.points if isinstance(E, CircularSample) else np.asarray(E, dtype=complex)
    points = np.atleast_2d(points)
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    cloud = PointCloud(embed_complex(points))
    cert = convex_membership(embed_complex(z[None, :])[0], cloud, tol)
    if isinstance(cert, InsideConvexCombination):
        return None
    lam = cert.lam
    mu = lam[0::2] - 1j * lam[1::2]
    mu_vals = points @ mu
    mu_z = complex(np.dot(mu, z))
    gap = float(mu_z.real - mu_vals.real.max())
    C = float(np.abs(mu_vals).max() ** 2) if mu_vals.size else 0.0
    t = min(1.0, gap / (2.0 * C + 2.0 * abs(mu_z) ** 2 + 1.0))
    witness = ExponentialWitness(
        mu,
        t,
        float(np.abs(1.0 + t * mu_vals).max()),
        abs(1.0 + t * mu_z),
    )
    if not witness.verify(points, z):
        raise CertificateError("exponential witness failed verification")
    return witness


def three_lines_check(A0, A1, f, nx=41, ny=41, ymax=20.0) -> float:
    """Max over a strip grid of |f(x + i y)| - A0^(1-x) A1^x.

    Nonpositive (up to roundoff) for functions bounded on the closed strip
    with boundary sups below A0, A1.
    """
    if A0 <= 0 or A1 <= 0:
        raise PreconditionError("boundary sups must be positive")
    worst = -math.inf
    for x in np.linspace(0.0, 1.0, nx):
        bound = A0 ** (1.0 - x) * A1**x
        for y in np.linspace(-ymax, ymax, ny):
            worst = max(worst, abs(f(complex(x, y))) - bound)
    return worst


# ---------------------------------------------------------------------------
# the E(b) dichotomy


def _eb_ray_samples(b: float, n: int = 41, spread: float = 20.0) -> CircularSample:
    s = np.linspace(-spread, spread, n)
    pts = np.stack([np.exp(s), np.exp(-b * s)], axis=-1).astype(complex)
    return CircularSample(pts, completely_circular=True)


def eb_dichotomy(b, degree_cap: int = 20, threshold: float = 1e6, n_ray_samples: int = 41):
    """Dichotomy report for E(b) = {|z1|^b |z2| <= 1}.

    Rational b = p/q: the monomial (p, q) is bounded (sup 1 on boundary-ray
    samples) and certifies every exterior point.  Irrational b (floating
    approximation): every nonzero monomial with |alpha| <= degree_cap is
    unbounded, witnessed per alpha by an explicit boundary-ray point where
    |w^alpha| exceeds the threshold.
    """
    if float(b) <= 0:
        raise PreconditionError("b must be positive")
    frac = Fraction(float(b)).limit_denominator(max(64, degree_cap))
    rational = float(frac) == float(b)
    if rational:
        p, q = frac.numerator, frac.denominator
        if degree_cap < 2 * q:
            raise PreconditionError("degree cap too small for this denominator")
        beta = (p, q)
        sup = monomial_sup(_eb_ray_samples(float(b), n_ray_samples), beta)
        return {
            "rational": True,
            "beta": beta,
            "monomial_sup": sup,
            "b": float(b),
        }
    b = float(b)
    s_cap = 700.0 / max(1.0, b)
    witnesses = []
    target = math.log(threshold) + 1.0
    for a1 in range(degree_cap + 1):
        for a2 in range(degree_cap + 1 - a1):
            if a1 == 0 and a2 == 0:
                continue
            delta = a1 - a2 * b
            if delta == 0.0:
                witnesses.append({"alpha": (a1, a2), "achieved": False, "s": 0.0})
                continue
            s = math.copysign(min(target / abs(delta), s_cap), delta)
            log_val = delta * s
            witnesses.append(
                {
                    "alpha": (a1, a2),
                    "s": s,
                    "point": (math.exp(s), math.exp(-b * s)),
                    "log_value": log_val,
                    "achieved": log_val > math.log(threshold),
                }
            )
    return {
        "rational": False,
        "b": b,
        "witnesses": witnesses,
        "all_achieved": all(w["achieved"] for w in witnesses),
    }


def eb_certify_exterior(b, z) -> MonomialWitness:
    """Monomial witness for a point outside E(b), rational b = p/q."""
    frac = Fraction(float(b)).limit_denominator(10_000)
    if float(frac) != float(b):
        raise PreconditionError("exterior certification needs rational b")
    beta = (frac.numerator, frac.denominator)
    mods = np.abs(np.atleast_1d(np.asarray(z, dtype=complex)))
    lv = _monomial_log_value(mods, beta)
    if lv <= 0.0:
        raise PreconditionError("point is not exterior to E(b)")
    return MonomialWitness(beta, 0.0, lv)
