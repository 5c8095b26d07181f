"""Exception hierarchy shared by every covkit module."""


class CovkitError(Exception):
    """Base class; the CLI reports ``type(exc).__name__`` on failure."""


class DimensionMismatch(CovkitError, ValueError):
    pass


class Singular(CovkitError, ArithmeticError):
    pass


class CapExceeded(CovkitError):
    """Group closure produced more elements than allowed."""


class NotAHomomorphism(CovkitError):
    """Two words give the same source matrix but different rho matrices."""


class MolienMismatch(CovkitError):
    """A per-degree rank disagrees with the Molien count (internal bug)."""


class NotCovariant(CovkitError, ValueError):
    pass


class NotInModule(CovkitError):
    """Per-degree solve is inconsistent: the basis is incomplete there."""


class DegreeBeyondCertification(CovkitError, ValueError):
    pass


class OutsideDomain(CovkitError, ValueError):
    pass


class NotOrthogonal(CovkitError, ValueError):
    """The euclidean norm is not invariant under the group."""


class NoSolutionAtOrder(CovkitError):
    pass


class ConfigParse(CovkitError, ValueError):
    pass
