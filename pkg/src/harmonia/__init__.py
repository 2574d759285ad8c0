"""harmonia: a desk-scale workbench for sequence-space norms, Fourier
analysis on the torus and the line, Banach-algebra numerics, and convex /
polynomial hull geometry with certificates."""

from .errors import (
    CertificateError,
    ConvergenceError,
    HarmoniaError,
    PreconditionError,
)

__all__ = [
    "HarmoniaError",
    "PreconditionError",
    "ConvergenceError",
    "CertificateError",
]

__version__ = "0.1.0"
