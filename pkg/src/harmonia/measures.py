"""Finite atomic measures on R^n and the delta-function calculus.

An atomic measure is a finite list of (location, complex weight) pairs;
its total variation is the sum of the weight moduli (exact for distinct
atoms, duplicates merged on construction).  The transform extends to
complex frequencies only when every atom sits in the quadrant paired with
the frequency's half-plane, which keeps |mu_hat| bounded by the total
variation on the admissible closure.
"""

from __future__ import annotations

import numpy as np

from .errors import PreconditionError
from .line import LineFunction, translate


class LineAtomicMeasure:
    """Finite atomic measure sum c_k delta_{u_k} on R^n."""

    def __init__(self, atoms):
        merged = []
        for u, c in atoms:
            u = np.atleast_1d(np.asarray(u, dtype=float))
            c = complex(c)
            for i, (ui, ci) in enumerate(merged):
                if ui.size == u.size and np.all(np.abs(ui - u) <= 1e-12):
                    merged[i] = (ui, ci + c)
                    break
            else:
                merged.append((u, c))
        self.atoms = [(u, c) for u, c in merged if c != 0]
        self.dim = self.atoms[0][0].size if self.atoms else 1

    def total_variation(self) -> float:
        return float(sum(abs(c) for _, c in self.atoms))


def delta(u) -> LineAtomicMeasure:
    """The unit point mass delta_u."""
    return LineAtomicMeasure([(u, 1.0)])


def measure_ft(mu: LineAtomicMeasure, zeta) -> complex:
    """mu_hat(zeta) = sum c_k exp(-i zeta . u_k).

    For complex zeta = xi + i eta the atoms must satisfy the quadrant
    condition eta_j u_j <= 0 per coordinate (support in Q_{n,eps} with zeta
    in the closed opposite half-plane); then |mu_hat(zeta)| <= ||mu||.
    """
    zeta = np.atleast_1d(np.asarray(zeta, dtype=complex))
    eta = zeta.imag
    if np.any(eta != 0):
        for u, _ in mu.atoms:
            if np.any(eta * u > 1e-12):
                raise PreconditionError(
                    "quadrant violation: atom outside the admissible quadrant "
                    "for this complex frequency"
                )
    out = 0j
    for u, c in mu.atoms:
        out += c * np.exp(-1j * np.dot(zeta, u))
    return complex(out)


def measure_convolve(mu: LineAtomicMeasure, nu: LineAtomicMeasure) -> LineAtomicMeasure:
    """Pairwise atom sums with weight products: (mu * nu)^ = mu_hat nu_hat."""
    atoms = [(u + v, c * d) for u, c in mu.atoms for v, d in nu.atoms]
    return LineAtomicMeasure(atoms)


def fn_measure_convolve(g, mu: LineAtomicMeasure):
    """Convolution of a function with an atomic measure.

    For a sampled LineFunction with on-grid atoms (1-d), returns the exact
    sum of translated copies on a common grid.  For a callable, returns the
    callable x -> sum c_k g(x - u_k).
    """
    if isinstance(g, LineFunction):
        if mu.dim != 1:
            raise PreconditionError("sampled convolution is one-dimensional")
        shifted = [(translate(g, float(u[0])), c) for u, c in mu.atoms]
        x_lo = min(s.x0 for s, _ in shifted)
        x_hi = max(s.x0 + (s.M - 1) * s.h for s, _ in shifted)
        M = int(round((x_hi - x_lo) / g.h)) + 1
        vals = np.zeros(M, dtype=complex)
        for s, c in shifted:
            k0 = int(round((s.x0 - x_lo) / g.h))
            vals[k0 : k0 + s.M] += c * s.values
        return LineFunction(x_lo, g.h, vals, g.decay)
    return lambda x: sum(
        c * g(np.atleast_1d(np.asarray(x, dtype=float)) - u) for u, c in mu.atoms
    )
