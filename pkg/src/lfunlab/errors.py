"""Exception hierarchy shared across the package."""


class LfunlabError(Exception):
    """Base class for all package errors."""


class PreconditionError(LfunlabError):
    """An operation was called outside its stated domain."""


class ConsistencyError(LfunlabError):
    """Two independent computation routes disagree beyond tolerance."""


class MissingPrimeError(LfunlabError):
    """A multiplicative extension lacks a required prime seed."""

    def __init__(self, prime: int):
        self.prime = prime
        super().__init__(f"no coefficient supplied for prime {prime}")


class NoSignChangeError(LfunlabError):
    """No sign change found up to the scanned range (inconclusive)."""


class DegenerateGridError(LfunlabError):
    """A fit was requested on a grid with too few points."""


class CapacityError(LfunlabError):
    """An evaluation point exceeds the precomputed sieve range."""


class QuadratureError(LfunlabError):
    """The quadrature error estimate exceeds the requested tolerance."""


class IncompleteZerosError(LfunlabError):
    """A zero sum was requested beyond the table's completeness height."""


class WindowError(LfunlabError):
    """A short-interval window is wider than the interval position allows."""


class DataFormatError(LfunlabError):
    """An input file violates its documented format."""
