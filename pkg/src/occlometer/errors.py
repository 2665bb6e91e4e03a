"""Exception taxonomy shared across the toolkit.

The CLI maps these onto exit codes: document/input problems exit 3,
plain I/O failures exit 2, internal contract violations exit 4.
"""


class OcclometerError(Exception):
    """Base class for every error raised by this package."""


class ParseError(OcclometerError):
    """A document is not valid JSON, or a field is missing, mistyped or
    out of range. The message names the offending field path."""


class SchemaError(OcclometerError):
    """Document structure violates the input contract, e.g. an instance
    with the wrong keypoint count or order, or duplicate instance ids."""


class ValidationError(OcclometerError):
    """Cross-object consistency failure, e.g. a mask whose dimensions do
    not match its frame, or results that reference unknown instances."""


class CodecError(OcclometerError):
    """Run-length payload is malformed (negative count, sum mismatch)."""


class GeometryError(OcclometerError):
    """Mask geometry query applied to incompatible operands."""


class DegenerateInputError(OcclometerError):
    """Annotation or mask geometry collapses to zero extent, so the
    requested ratio is undefined."""


class JoinError(OcclometerError):
    """Paired evaluation records reference instance ids that cannot be
    resolved against the supplied detections."""


class ContractError(OcclometerError):
    """An internal invariant was violated; indicates a bug, not bad input."""
