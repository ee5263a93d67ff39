"""Exception hierarchy.

Three families matter to callers (and to the CLI exit codes):

* ``InputError`` subclasses: the caller handed in something malformed or
  violating a documented precondition (exit code 1).
* ``Verdict`` subclasses: a certified negative mathematical answer, e.g. a
  representation that provably does not decompose (exit code 0).
* ``InternalAssertionFailure``: an identity guaranteed by the theory failed
  to hold. This is always a bug (exit code 2).
"""


class DetrepError(Exception):
    """Base class for every error raised by the library."""


class InputError(DetrepError):
    pass


class Verdict(DetrepError):
    pass


class InternalAssertionFailure(DetrepError):
    pass


# arithmetic

class NotDivisible(InputError):
    pass


class DivisionByZero(InputError, ZeroDivisionError):
    pass


class ZeroPolynomial(InputError):
    pass


class NotRegularAtCenter(InputError):
    """A local rational function whose denominator vanishes at the center."""


# parsing

class ParseError(InputError):
    """Syntax error carrying the offending ``SourceSpan``."""

    def __init__(self, message, span, text=None):
        self.span = span
        self.text = text
        super().__init__(f"{message} at {span.start}..{span.end}")


class RaggedRows(ParseError):
    pass


class ProportionalFactors(ParseError):
    pass


# matrices and representations

class ZeroDeterminant(InputError):
    pass


class NotSquare(InputError):
    pass


class NotAComponent(InputError):
    pass


class BadFactorization(InputError):
    pass


class DegreeMismatch(InputError):
    pass


class DeterminantMismatch(InputError):
    pass


class NotSymmetric(InputError):
    pass


class NotLinear(InputError):
    pass


class NotHomogeneous(InputError):
    pass


class NotGenericallyMG(InputError):
    pass


class PointOffHypersurface(InputError):
    pass


class PointOnHypersurface(InputError):
    pass


class NotPDAtPoint(InputError):
    pass


class SearchExhausted(DetrepError):
    pass


# certified negative answers

class NotInIdeal(Verdict):
    """An adjugate entry outside the graded piece of the ideal (f1, f2).

    ``entry`` is the 1-based (row, column) position of the first failing entry.
    """

    def __init__(self, entry, value=None):
        self.entry = entry
        self.value = value
        super().__init__(f"adjugate entry {entry} is not in the ideal (f1, f2)")


class NotDecomposable(Verdict):
    """The representation does not split along the requested factors.

    ``witness`` is the 1-based adjugate entry certifying failure; ``partial``
    carries whatever decomposition was achieved before the failure (or None).
    """

    def __init__(self, message, witness=None, partial=None):
        self.witness = witness
        self.partial = partial
        super().__init__(message)
