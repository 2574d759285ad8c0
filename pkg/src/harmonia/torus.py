"""Fourier analysis on the n-torus at desk scale.

Functions live on uniform N^n grids (z_k = exp(2 pi i k / N) per axis) and
coefficient tables on signed-index bands |alpha_j| <= K.  All quadrature and
convolution use direct sums, not FFT: at N <= 256, n <= 3 the direct route
is fast enough and keeps exactness arguments transparent.  Grids are even
and bands are restricted to |alpha_j| <= N/2 - 1, which removes the
ambiguous Nyquist bin.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import PreconditionError


@dataclass(frozen=True)
class TorusGrid:
    dim: int
    samples_per_dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise PreconditionError("grid dimension must be >= 1")
        if self.samples_per_dim < 4 or self.samples_per_dim % 2:
            raise PreconditionError("samples per dimension must be even and >= 4")

    @property
    def max_band(self) -> int:
        return self.samples_per_dim // 2 - 1

    def angles(self) -> np.ndarray:
        N = self.samples_per_dim
        return 2.0 * np.pi * np.arange(N) / N

    def axis_points(self) -> np.ndarray:
        return np.exp(1j * self.angles())

    def points(self) -> np.ndarray:
        """All grid points as an array of shape (N^dim, dim), row-major order."""
        axes = [self.axis_points()] * self.dim
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)


@dataclass(frozen=True)
class TorusFunction:
    grid: TorusGrid
    values: np.ndarray

    def __post_init__(self):
        N, n = self.grid.samples_per_dim, self.grid.dim
        v = np.asarray(self.values, dtype=complex).reshape((N,) * n)
        if not np.all(np.isfinite(v)):
            raise PreconditionError("torus samples must be finite")
        object.__setattr__(self, "values", v)

    @classmethod
    def from_callable(cls, grid: TorusGrid, fn):
        pts = grid.points()
        vals = np.array([fn(*p) for p in pts], dtype=complex)
        return cls(grid, vals.reshape((grid.samples_per_dim,) * grid.dim))

    def mean(self) -> complex:
        return complex(self.values.mean())


@dataclass(frozen=True)
class CoeffTable:
    """Signed-index Fourier coefficient table on the band max_j |alpha_j| <= K."""

    dim: int
    band: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for alpha, c in self.coeffs.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.dim:
                raise PreconditionError("coefficient index has wrong dimension")
            if max(abs(a) for a in alpha) > self.band:
                raise PreconditionError(f"index {alpha} outside band {self.band}")
            c = complex(c)
            if c != 0:
                clean[alpha] = c
        object.__setattr__(self, "coeffs", clean)

    def l1(self) -> float:
        return float(sum(abs(c) for c in self.coeffs.values()))

    def __getitem__(self, alpha):
        return self.coeffs.get(tuple(alpha), 0j)


def delta_table(alpha, dim=None) -> CoeffTable:
    """The l^1(Z^n) unit at index alpha."""
    alpha = tuple(int(a) for a in alpha)
    dim = len(alpha) if dim is None else dim
    return CoeffTable(dim, max((abs(a) for a in alpha), default=0) or 1, {alpha: 1.0})


def band_indices(dim, K):
    return itertools.product(range(-K, K + 1), repeat=dim)


def fourier_coeff(f: TorusFunction, alpha) -> complex:
    """f_hat(alpha) by the uniform Riemann sum N^-n sum f(z_k) z_k^-alpha.

    Exact to roundoff for trigonometric polynomials with band < N/2.
    """
    grid = f.grid
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != grid.dim:
        raise PreconditionError("index has wrong dimension")
    if max((abs(a) for a in alpha), default=0) > grid.max_band:
        raise PreconditionError(f"index {alpha} outside the Nyquist band")
    theta = grid.angles()
    acc = f.values
    for axis, aj in enumerate(alpha):
        phase = np.exp(-1j * aj * theta)
        shape = [1] * grid.dim
        shape[axis] = grid.samples_per_dim
        acc = acc * phase.reshape(shape)
    return complex(acc.mean())


def analyze(f: TorusFunction, band: int | None = None) -> CoeffTable:
    """Full coefficient table of f on the band |alpha_j| <= band."""
    K = f.grid.max_band if band is None else int(band)
    if K > f.grid.max_band:
        raise PreconditionError("requested band exceeds the Nyquist band")
    coeffs = {a: fourier_coeff(f, a) for a in band_indices(f.grid.dim, K)}
    return CoeffTable(f.grid.dim, K, coeffs)


def _modified_monomials(c: CoeffTable, Z: np.ndarray) -> np.ndarray:
    """Matrix of ztilde^alpha for rows of Z, columns following c.coeffs order."""
    out = np.empty((Z.shape[0], len(c.coeffs)), dtype=complex)
    for col, alpha in enumerate(c.coeffs):
        m = np.ones(Z.shape[0], dtype=complex)
        for j, aj in enumerate(alpha):
            if aj > 0:
                m = m * Z[:, j] ** aj
            elif aj < 0:
                m = m * np.conj(Z[:, j]) ** (-aj)
        out[:, col] = m
    return out


def synthesize_many(c: CoeffTable, Z) -> np.ndarray:
    """Evaluate the modified-monomial sum at each row of Z (closed polydisk)."""
    Z = np.atleast_2d(np.asarray(Z, dtype=complex))
    if Z.shape[1] != c.dim:
        raise PreconditionError("points have wrong dimension")
    if np.any(np.abs(Z) > 1.0 + 1e-12):
        raise PreconditionError("point outside the closed unit polydisk")
    if not c.coeffs:
        return np.zeros(Z.shape[0], dtype=complex)
    weights = np.array(list(c.coeffs.values()), dtype=complex)
    return _modified_monomials(c, Z) @ weights


def synthesize(c: CoeffTable, z) -> complex:
    """sum over the band of f_hat(alpha) ztilde^alpha, where ztilde uses
    conj(z_j)^(-alpha_j) on negative indices; on the torus this is the
    ordinary Fourier partial sum."""
    return complex(synthesize_many(c, np.asarray(z, dtype=complex)[None, :])[0])


def convolve_torus(f: TorusFunction, g: TorusFunction) -> TorusFunction:
    """(f * g)(z) = N^-n sum_w f(z w^-1) g(w) on the shared grid."""
    if f.grid != g.grid:
        raise PreconditionError("convolution needs a shared grid")
    n, N = f.grid.dim, f.grid.samples_per_dim
    out = np.zeros_like(f.values)
    axes = tuple(range(n))
    for j in itertools.product(range(N), repeat=n):
        out += np.roll(f.values, shift=j, axis=axes) * g.values[j]
    return TorusFunction(f.grid, out / N**n)


def z_convolve(a: CoeffTable, b: CoeffTable) -> CoeffTable:
    """Exact banded convolution on Z^n; the output band is the sum of bands."""
    if a.dim != b.dim:
        raise PreconditionError("convolution needs equal dimensions")
    coeffs = {}
    for ja, ca in a.coeffs.items():
        for jb, cb in b.coeffs.items():
            k = tuple(x + y for x, y in zip(ja, jb))
            coeffs[k] = coeffs.get(k, 0) + ca * cb
    return CoeffTable(a.dim, a.band + b.band, coeffs)


def table_symbol(a: CoeffTable, z) -> complex:
    """a_hat(z) = sum a(alpha) z^alpha at a torus point (entire-band symbol)."""
    z = np.asarray(z, dtype=complex)
    out = 0j
    for alpha, c in a.coeffs.items():
        m = 1.0 + 0j
        for j, aj in enumerate(alpha):
            m *= z[j] ** aj
        out += c * m
    return complex(out)


def poisson_kernel(z: complex, w: complex) -> float:
    """P(z, w) = (1 - |z|^2) / (2 pi |w - z|^2) for |z| < 1, |w| = 1."""
    if abs(z) >= 1.0:
        raise PreconditionError("Poisson kernel needs |z| < 1")
    if abs(abs(w) - 1.0) > 1e-12:
        raise PreconditionError("boundary point must have |w| = 1")
    return float((1.0 - abs(z) ** 2) / (2.0 * np.pi * abs(w - z) ** 2))


def poisson_kernel_nd(z, w) -> float:
    """Product kernel P_n(z, w) = prod_j P(z_j, w_j)."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    out = 1.0
    for zj, wj in zip(z, w):
        out *= poisson_kernel(zj, wj)
    return out


def poisson_mass(z: complex, N: int = 512) -> float:
    """Quadrature of P(z, .) over the torus; equals 1 up to aliasing."""
    grid = TorusGrid(1, N)
    w = grid.axis_points()
    vals = (1.0 - abs(z) ** 2) / (2.0 * np.pi * np.abs(w - z) ** 2)
    return float(vals.mean() * 2.0 * np.pi)


def poisson_extend(f: TorusFunction, z) -> complex:
    """Poisson integral of f at an interior polydisk point, by grid quadrature."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    grid = f.grid
    if z.size != grid.dim:
        raise PreconditionError("point has wrong dimension")
    if np.any(np.abs(z) >= 1.0):
        raise PreconditionError("Poisson extension needs |z_j| < 1 for all j")
    w = grid.axis_points()
    kernel = np.ones((grid.samples_per_dim,) * grid.dim)
    for axis, zj in enumerate(z):
        k1 = (1.0 - abs(zj) ** 2) / (2.0 * np.pi * np.abs(w - zj) ** 2)
        shape = [1] * grid.dim
        shape[axis] = grid.samples_per_dim
        kernel = kernel * k1.reshape(shape)
    h = 2.0 * np.pi / grid.samples_per_dim
    return complex(np.sum(kernel * f.values) * h**grid.dim)


def abel_sum(a, r: float):
    """Partial Abel sum A(r) = sum a_j r^j through the available terms.

    Returns (value, tail_bound) with the geometric tail bound
    sup_j |a_j| * r^(J+1) / (1 - r).
    """
    if not (0.0 <= r < 1.0):
        raise PreconditionError("Abel parameter must lie in [0, 1)")
    a = np.asarray(a, dtype=complex)
    J = a.size - 1
    powers = r ** np.arange(a.size)
    value = complex(np.sum(a * powers))
    sup = float(np.abs(a).max()) if a.size else 0.0
    bound = sup * r ** (J + 1) / (1.0 - r)
    return value, bound


def parseval(f: TorusFunction):
    """(sum over the band of |f_hat|^2, normalized energy integral of |f|^2).

    The two agree to roundoff for band-limited f, by quadrature exactness.
    """
    table = analyze(f)
    s = float(sum(abs(c) ** 2 for c in table.coeffs.values()))
    e = float(np.mean(np.abs(f.values) ** 2))
    return s, e


def laurent_coeff(samples, r: float, j: int) -> complex:
    """a_j from uniform samples of f on the circle of radius r.

    Trapezoid value of the contour integral; exact to roundoff for finite
    Laurent polynomials with band < N - |j|.  Needs N > 2|j| samples.
    """
    samples = np.asarray(samples, dtype=complex)
    N = samples.size
    if N <= 2 * abs(j):
        raise PreconditionError("too few circle samples for this index")
    if r <= 0:
        raise PreconditionError("radius must be positive")
    theta = 2.0 * np.pi * np.arange(N) / N
    return complex(np.mean(samples * np.exp(-1j * j * theta)) * r ** (-j))


def laurent_coeff_fn(fn, r: float, j: int, N: int = 256) -> complex:
    theta = 2.0 * np.pi * np.arange(N) / N
    return laurent_coeff(np.array([fn(r * np.exp(1j * t)) for t in theta]), r, j)


def analytic_type_test(c: CoeffTable, tol: float = 0.0):
    """True iff no coefficient with a negative index component exceeds tol.

    Returns (is_analytic_type, offending index list).
    """
    offending = [
        alpha
        for alpha, v in c.coeffs.items()
        if any(a < 0 for a in alpha) and abs(v) > tol
    ]
    return not offending, offending


def max_principle_gap(c: CoeffTable, interior_points, boundary_N: int = 256) -> float:
    """max interior |phi| minus max boundary |phi| for an analytic-type table.

    Nonpositive up to roundoff by the maximum principle; the boundary sup is
    taken over a torus grid of boundary_N points per axis.
    """
    ok, bad = analytic_type_test(c)
    if not ok:
        raise PreconditionError(f"table is not of analytic type: {bad}")
    interior = np.atleast_2d(np.asarray(interior_points, dtype=complex))
    int_max = float(np.abs(synthesize_many(c, interior)).max())
    bgrid = TorusGrid(c.dim, boundary_N)
    bd_max = float(np.abs(synthesize_many(c, bgrid.points())).max())
    return int_max - bd_max


class TorusAtomicMeasure:
    """Finite atomic measure on T^n: weighted point masses at torus points.

    Atom locations are normalized to exact unit modulus on construction and
    coinciding atoms (within 1e-12) are merged by summing weights.
    """

    def __init__(self, atoms):
        merged = []
        for z, c in atoms:
            z = np.atleast_1d(np.asarray(z, dtype=complex))
            mod = np.abs(z)
            if np.any(mod == 0):
                raise PreconditionError("atom coordinates must be nonzero")
            if np.any(np.abs(mod - 1.0) > 1e-12):
                raise PreconditionError("atom locations must have |z_j| = 1")
            z = z / mod
            c = complex(c)
            for i, (zi, ci) in enumerate(merged):
                if zi.size == z.size and np.all(np.abs(zi - z) <= 1e-12):
                    merged[i] = (zi, ci + c)
                    break
            else:
                merged.append((z, c))
        self.atoms = [(z, c) for z, c in merged if c != 0]
        self.dim = self.atoms[0][0].size if self.atoms else 1

    def total_variation(self) -> float:
        return float(sum(abs(c) for _, c in self.atoms))


def measure_fourier_coeff(mu: TorusAtomicMeasure, alpha) -> complex:
    """mu_hat(alpha) = sum c_k z_k^-alpha; bounded by the total variation."""
    alpha = tuple(int(a) for a in alpha)
    out = 0j
    for z, c in mu.atoms:
        m = 1.0 + 0j
        for zj, aj in zip(z, alpha):
            m *= zj ** (-aj)
        out += c * m
    return complex(out)


def measure_convolve(mu: TorusAtomicMeasure, nu: TorusAtomicMeasure) -> TorusAtomicMeasure:
    """Pairwise coordinatewise products of atom locations, products of weights."""
    atoms = [(z * w, c * d) for z, c in mu.atoms for w, d in nu.atoms]
    return TorusAtomicMeasure(atoms)


def poisson_smooth(mu: TorusAtomicMeasure, r, grid: TorusGrid) -> TorusFunction:
    """Smoothed density z -> sum c_k (2 pi)^n P_n(r z, z_k) on the grid.

    Pairing the density against band-limited f with the normalized grid mean
    weak*-approximates integration against mu as r -> 1.
    """
    r = np.broadcast_to(np.asarray(r, dtype=float), (grid.dim,))
    if np.any(r < 0) or np.any(r >= 1):
        raise PreconditionError("radial parameter must lie in [0, 1)")
    pts = grid.points()
    vals = np.zeros(pts.shape[0], dtype=complex)
    for zk, c in mu.atoms:
        k = np.ones(pts.shape[0])
        for j in range(grid.dim):
            zj = r[j] * pts[:, j]
            k *= (1.0 - r[j] ** 2) / (2.0 * np.pi * np.abs(zk[j] - zj) ** 2)
        vals += c * (2.0 * np.pi) ** grid.dim * k
    return TorusFunction(grid, vals.reshape((grid.samples_per_dim,) * grid.dim))


def measure_pairing(f: TorusFunction, density: TorusFunction) -> complex:
    """Normalized grid pairing (2 pi)^-n integral of f times a density."""
    if f.grid != density.grid:
        raise PreconditionError("pairing needs a shared grid")
    return complex(np.mean(f.values * density.values))
