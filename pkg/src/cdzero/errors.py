"""Exception hierarchy shared by the cdzero modules."""


class CDError(ValueError):
    """Base class for all cdzero errors."""


class LevelMismatchError(CDError):
    """Two operands live in algebras of different level."""


class PreconditionError(CDError):
    """An operation was called outside its domain (impure input, zero element, ...)."""


class ParseError(CDError):
    """Element text could not be parsed."""


class SpectrumError(CDError):
    """Eigenvalue clustering violated the mod-4 multiplicity structure."""


class CertificationError(CDError):
    """A constructed zero-divisor pair failed its residual certificate."""
