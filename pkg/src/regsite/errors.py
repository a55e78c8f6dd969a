"""Exception hierarchy shared by all regsite modules."""


class RegsiteError(Exception):
    """Base class for all regsite errors."""


# -- polynomial / field layer --------------------------------------------

class InvalidModulus(RegsiteError):
    """The coefficient modulus is not a prime."""


class ZeroPolynomial(RegsiteError):
    """An operation that needs a nonzero polynomial got the zero polynomial."""


class InvalidPolynomial(RegsiteError):
    """Polynomial violates a precondition (non-monic, constant, ...)."""


# -- regular ring layer ---------------------------------------------------

class NotSplittable(RegsiteError):
    """The element is zero or invertible, so it yields no proper splitting."""


class NotRegular(RegsiteError):
    """The presented quotient ring has nilpotents (modulus not squarefree)."""


class MixedCharacteristic(RegsiteError):
    """Ring components do not share a single characteristic."""


# -- presentation layer ----------------------------------------------------

class DichotomyViolation(RegsiteError):
    """A characteristic-set certificate failed at some checked prime."""


class EmptyFiber(RegsiteError):
    """Requested prime is not in the characteristic set of the presentation."""


# -- site engine -----------------------------------------------------------

class CategoryError(RegsiteError):
    """Base class for category axiom violations."""


class MissingIdentity(CategoryError):
    pass


class NonAssociative(CategoryError):
    pass


class DanglingMorphism(CategoryError):
    pass


class InvalidGenerator(RegsiteError):
    """Sieve generator with the wrong codomain."""


class NotARefinement(RegsiteError):
    """Density comparison called on topologies that are not nested."""


class NotAtomicizable(RegsiteError):
    """All-nonempty-sieve coverage is not a topology on this category."""


class InvalidPresheaf(RegsiteError):
    """Presheaf table is malformed (wrong sets, non-functorial actions)."""


class AmbiguousMaximum(RegsiteError):
    """Lattice search found no unique largest dense De Morgan topology."""


class InternalError(RegsiteError):
    """An internal consistency check failed; indicates an engine bug."""


# -- field site -------------------------------------------------------------

class TooLarge(RegsiteError):
    """Requested truncation exceeds the configured object ceiling."""


class UnknownObject(RegsiteError):
    """Ring is not an object of the truncated site."""
