"""Exception hierarchy and process exit codes.

Exit code contract (used by the CLI):
    0  functional equation verified
    2  functional equation not verified (a scientific outcome, not a crash)
    3  curve not semistable at some prime, local-data override required
    4  invalid input (curve constraints, file schema, configuration)
"""

EXIT_OK = 0
EXIT_FE_NOT_VERIFIED = 2
EXIT_NOT_SEMISTABLE = 3
EXIT_INVALID_INPUT = 4


class HyperellError(Exception):
    """Base class for all library errors."""


class CurveError(HyperellError):
    """The polynomial data does not define a curve in the admissible family."""


class NotSemistableError(HyperellError):
    """Reduction mod p is not semistable; an override is required."""

    def __init__(self, p: int, criterion: str):
        self.p = p
        self.criterion = criterion
        super().__init__(
            f"p={p} not semistable ({criterion}); supply a local-data "
            f"override for this prime to proceed"
        )


class ConfigurationError(HyperellError):
    """Conflicting, duplicate or missing local-data sources."""


class ParseError(HyperellError):
    """Malformed artifact file (JSON schema violations, truncation)."""


class DataIntegrityError(HyperellError):
    """Internally inconsistent numeric data, e.g. non-integer zeta coefficients.

    Always indicates a bug in counting or in the caller, never a property
    of the curve.
    """


class InternalConsistencyError(HyperellError):
    """A divisibility or separability fact guaranteed by theory failed."""


class InsufficientDataError(HyperellError):
    """A local factor is truncated below the degree needed for expansion."""

    def __init__(self, p: int, needed: int, have: int):
        self.p = p
        self.needed = needed
        self.have = have
        super().__init__(
            f"local factor at p={p} valid only to degree {have}, "
            f"need degree {needed}"
        )


class InsufficientMError(HyperellError):
    """The coefficient cutoff M is too small for the requested tail bound."""

    def __init__(self, M: int, required: int, tail: float):
        self.M = M
        self.required = required
        self.tail = tail
        super().__init__(
            f"cutoff M={M} leaves an estimated series tail of {tail:.3g}; "
            f"M >= {required} required"
        )


class NumericError(HyperellError):
    """Arbitrary-precision evaluation failed after precision escalation."""
