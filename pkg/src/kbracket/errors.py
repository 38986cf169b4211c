"""Exception types shared across the package."""


class KBracketError(Exception):
    """Base class for all package errors."""


class MalformedDiagram(KBracketError):
    """A diagram violates a structural invariant."""


class NonParallelComponents(KBracketError):
    """Resolved closed components cannot coexist as disjoint embedded circles."""


class StateOutsideMarkedSet(KBracketError):
    """A state assigns markers to crossings outside the marked set."""


class BadGenerator(KBracketError):
    """Braid word contains a generator index out of range."""


class NonPrimitiveClass(KBracketError):
    """A torus multicurve was requested for a non-primitive class."""


class SurfaceMismatch(KBracketError):
    """Operands live on different surfaces."""


class UnsupportedSuperposition(KBracketError):
    """The requested superposition is outside the supported positional families."""


class NotUnimodular(KBracketError):
    """Matrix does not have determinant 1."""


class NotRealDiagram(KBracketError):
    """Operation requires the marked set to be the full set of crossings."""


class SingularSystem(KBracketError):
    """The linear system for a deformation polynomial is singular or inconsistent."""


class TheoremViolation(KBracketError):
    """Two computation routes that must agree exactly disagreed."""
