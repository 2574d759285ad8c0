"""Multi-index arithmetic, sparse polynomials and truncated power series over C^n.

Multi-indices are plain tuples of nonnegative ints.  Polynomials are sparse
coefficient tables keyed by multi-indices; coefficients are complex doubles,
exponents are exact.  Exact-zero coefficients are purged after every
arithmetic operation (threshold exactly 0, no epsilon pruning), which keeps
Cauchy products exact identities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import PreconditionError

MultiIndex = tuple  # tuple of nonnegative ints


def _check_multiindex(alpha) -> tuple:
    t = tuple(int(a) for a in alpha)
    if any(a < 0 for a in t):
        raise PreconditionError(f"multi-index entries must be >= 0, got {alpha}")
    return t


def mi_degree(alpha) -> int:
    """Total degree |alpha| = sum of the entries."""
    return sum(_check_multiindex(alpha))


def mi_factorial(alpha) -> int:
    """alpha! = product of the entry factorials, exact.

    Python integers are arbitrary precision, so there is no overflow bound;
    any entry size is exact.
    """
    out = 1
    for a in _check_multiindex(alpha):
        out *= math.factorial(a)
    return out


def mi_add(alpha, beta) -> tuple:
    if len(alpha) != len(beta):
        raise PreconditionError("multi-index length mismatch")
    return tuple(a + b for a, b in zip(alpha, beta))


def mi_sub(alpha, beta) -> tuple:
    """Componentwise difference; errors if any entry would go negative."""
    if len(alpha) != len(beta):
        raise PreconditionError("multi-index length mismatch")
    out = tuple(a - b for a, b in zip(alpha, beta))
    if any(c < 0 for c in out):
        raise PreconditionError(f"{beta} is not componentwise <= {alpha}")
    return out


def multinomial(alpha, beta, gamma) -> int:
    """alpha! / (beta! gamma!) for beta + gamma = alpha, exact integer."""
    alpha = _check_multiindex(alpha)
    if mi_add(beta, gamma) != alpha:
        raise PreconditionError(f"{beta} + {gamma} != {alpha}")
    num = mi_factorial(alpha)
    den = mi_factorial(beta) * mi_factorial(gamma)
    q, r = divmod(num, den)
    assert r == 0
    return q


def monomial_eval(x, alpha) -> complex:
    """x^alpha = x_1^a_1 ... x_n^a_n with the convention 0^0 = 1."""
    alpha = _check_multiindex(alpha)
    if len(x) != len(alpha):
        raise PreconditionError("dimension mismatch between point and multi-index")
    out = complex(1.0)
    for xj, aj in zip(x, alpha):
        if aj:
            out *= complex(xj) ** aj
    return out


def _below(alpha):
    """All beta with beta <= alpha componentwise, in lexicographic order."""
    if not alpha:
        yield ()
        return
    for b0 in range(alpha[0] + 1):
        for rest in _below(alpha[1:]):
            yield (b0,) + rest


class Polynomial:
    """Sparse polynomial in n complex variables.

    `terms` maps exponent tuples to nonzero complex coefficients.  All
    instances are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("dimension", "terms")

    def __init__(self, dimension: int, terms=None):
        if dimension < 1:
            raise PreconditionError("dimension must be >= 1")
        self.dimension = int(dimension)
        clean = {}
        for alpha, c in (terms or {}).items():
            alpha = _check_multiindex(alpha)
            if len(alpha) != self.dimension:
                raise PreconditionError(
                    f"exponent {alpha} has length {len(alpha)}, expected {dimension}"
                )
            c = complex(c)
            if c != 0:
                clean[alpha] = clean.get(alpha, 0) + c
        self.terms = {a: c for a, c in clean.items() if c != 0}

    @classmethod
    def constant(cls, dimension, value):
        return cls(dimension, {(0,) * dimension: value})

    @classmethod
    def monomial(cls, alpha, coeff=1.0):
        alpha = _check_multiindex(alpha)
        return cls(len(alpha), {alpha: coeff})

    def degree(self) -> int:
        return max((mi_degree(a) for a in self.terms), default=0)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.dimension == other.dimension
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.dimension, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check_dim(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, 0) + c
        return Polynomial(self.dimension, terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, t):
        return Polynomial(self.dimension, {a: t * c for a, c in self.terms.items()})

    def __mul__(self, other):
        return poly_mul(self, other)

    def __call__(self, z) -> complex:
        if len(z) != self.dimension:
            raise PreconditionError("evaluation point has wrong dimension")
        return sum(
            (c * monomial_eval(z, a) for a, c in self.terms.items()), complex(0)
        )

    def derivative(self, alpha):
        return poly_derivative(self, alpha)

    def _check_dim(self, other):
        if self.dimension != other.dimension:
            raise PreconditionError("polynomial dimension mismatch")

    def sorted_terms(self):
        """Terms in graded lexicographic order (canonical serialization order)."""
        return sorted(self.terms.items(), key=lambda kv: (mi_degree(kv[0]), kv[0]))

    def __repr__(self):
        body = " + ".join(f"({c})*z^{a}" for a, c in self.sorted_terms()) or "0"
        return f"Polynomial({self.dimension}: {body})"


def poly_mul(p: Polynomial, q: Polynomial) -> Polynomial:
    """Cauchy product: c_gamma = sum over alpha + beta = gamma of a_alpha b_beta."""
    p._check_dim(q)
    terms = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            g = mi_add(a, b)
            terms[g] = terms.get(g, 0) + ca * cb
    return Polynomial(p.dimension, terms)


def poly_derivative(p: Polynomial, alpha) -> Polynomial:
    """Term-by-term partial derivative d^alpha, exact on the coefficient table."""
    alpha = _check_multiindex(alpha)
    if len(alpha) != p.dimension:
        raise PreconditionError("derivative multi-index has wrong dimension")
    terms = {}
    for beta, c in p.terms.items():
        if any(b < a for a, b in zip(alpha, beta)):
            continue
        coeff = c
        for aj, bj in zip(alpha, beta):
            # falling factorial b (b-1) ... (b-a+1)
            for k in range(aj):
                coeff *= bj - k
        terms[mi_sub(beta, alpha)] = terms.get(mi_sub(beta, alpha), 0) + coeff
    return Polynomial(p.dimension, terms)


def leibniz_expand(p: Polynomial, q: Polynomial, alpha) -> Polynomial:
    """d^alpha(p q) expanded by the product rule over all splittings of alpha.

    Equals poly_derivative(poly_mul(p, q), alpha) exactly.
    """
    p._check_dim(q)
    alpha = _check_multiindex(alpha)
    out = Polynomial(p.dimension)
    for beta in _below(alpha):
        gamma = mi_sub(alpha, beta)
        coeff = multinomial(alpha, beta, gamma)
        out = out + poly_mul(p.derivative(beta), q.derivative(gamma)).scale(coeff)
    return out


def exp_series(z: complex, n_terms: int):
    """Partial sum of sum z^j / j! through j = n_terms.

    Returns (value, remainder_bound) with the tail bounded by
    |z|^(N+1)/(N+1)! * exp(|z|).
    """
    if n_terms < 0:
        raise PreconditionError("truncation order must be >= 0")
    z = complex(z)
    value = complex(1.0)
    term = complex(1.0)
    for j in range(1, n_terms + 1):
        term *= z / j
        value += term
    r = abs(z)
    # log-domain so large N never overflows
    if r == 0:
        bound = 0.0
    else:
        log_bound = (n_terms + 1) * math.log(r) - math.lgamma(n_terms + 2) + r
        bound = math.exp(log_bound) if log_bound < 700 else math.inf
    return value, bound


@dataclass(frozen=True)
class PowerSeriesTrunc:
    """Formal power series truncated at total degree max_degree."""

    dimension: int
    max_degree: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for alpha, c in self.terms.items():
            alpha = _check_multiindex(alpha)
            if len(alpha) != self.dimension:
                raise PreconditionError("series exponent has wrong dimension")
            if mi_degree(alpha) > self.max_degree:
                raise PreconditionError(
                    f"exponent {alpha} exceeds max_degree {self.max_degree}"
                )
            c = complex(c)
            if c != 0:
                clean[alpha] = c
        object.__setattr__(self, "terms", clean)


def homogeneous_parts(s: PowerSeriesTrunc):
    """Split s into its homogeneous parts p_0, ..., p_maxDegree."""
    parts = [Polynomial(s.dimension) for _ in range(s.max_degree + 1)]
    for alpha, c in s.terms.items():
        parts[mi_degree(alpha)] += Polynomial.monomial(alpha, c)
    return parts


def root_test_estimate(s: PowerSeriesTrunc, z) -> float:
    """Finite-order surrogate for limsup_l |p_l(z)|^(1/l).

    Takes the max of |p_l(z)|^(1/l) over the top half of the available
    degrees, l in [ceil(maxDegree/2), maxDegree].  This is a declared
    estimate: it is exact for geometric data and converges from above as the
    truncation degree grows for series with genuine limsup behavior.
    """
    if s.max_degree < 4:
        raise PreconditionError("root test needs max_degree >= 4")
    parts = homogeneous_parts(s)
    lo = (s.max_degree + 1) // 2
    best = 0.0
    for l in range(lo, s.max_degree + 1):
        v = abs(parts[l](z))
        if v > 0:
            best = max(best, v ** (1.0 / l))
    return best
