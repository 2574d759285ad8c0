"""Exception hierarchy shared by all harmonia modules.

The CLI maps these onto exit codes, so library code should raise the most
specific class that applies rather than bare ValueError.
"""


class HarmoniaError(Exception):
    """Base class for all harmonia errors."""


class PreconditionError(HarmoniaError):
    """An operation was called outside its documented domain."""


class ConvergenceError(HarmoniaError):
    """An iterative scheme hit its iteration cap without meeting tolerance."""


class CertificateError(HarmoniaError):
    """A certificate failed its self-verification."""
