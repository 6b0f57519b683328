"""Exception hierarchy shared by all subsystems.

Mathematical negatives (no solution, not liftable, budget exhausted) are
distinct exception types so callers can branch on them; internal consistency
failures raise InternalCheckError and are never returned as results.
"""


class AbtensorError(Exception):
    pass


class RingMismatch(AbtensorError):
    """Operands live over different coefficient rings, or the ring kind is
    wrong for the requested operation."""


class NoSolution(AbtensorError):
    """A linear system x*A = B has no solution over the ring."""


class NotAHomomorphism(AbtensorError):
    """A matrix does not define a module homomorphism (relations not
    respected)."""


class NotLiftable(AbtensorError):
    """A generator-level map does not extend to a morphism of presented
    functors."""


class IllFormedFunctor(AbtensorError):
    """An assignment of values to the ring generator does not define an
    additive functor (the coefficient ring does not act)."""


class CapExceeded(AbtensorError):
    """An enumeration or rewriting budget was exhausted.  Raised loudly; no
    operation silently truncates."""


class ParseError(AbtensorError):
    """Bad input text.  Carries 1-based line and column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}" + (f", col {column}" if column else "") + f": {message}"
        super().__init__(message)


class MissingData(AbtensorError):
    """A tensor-quiver input omits data required by one of the structure
    clauses.  Carries the clause number."""

    def __init__(self, clause, message):
        self.clause = clause
        super().__init__(f"clause ({clause}): {message}")


class NonConfluent(AbtensorError):
    """Two maximal rewrites of the same input disagree.  The rewriting
    engine reports this rather than guessing."""


class InternalCheckError(AbtensorError):
    """A self-validation (e.g. the pointwise evaluation oracle) failed.
    Indicates a bug, never a property of the input."""
