"""Exception hierarchy shared by all modules."""


class DualCentralityError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DualCentralityError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class NotIrreducible(DualCentralityError):
    """The nonnegative tensor is not weakly irreducible."""


class NotConnected(NotIrreducible):
    """The hypergraph is not connected (its adjacency tensor is reducible)."""


class NoConvergence(DualCentralityError):
    """Power iteration hit ``max_iter``; ``best`` carries the last iterate."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class NotSingular(DualCentralityError):
    pass


class NotPositive(DualCentralityError):
    pass


class Inconsistent(DualCentralityError):
    """Right-hand side has a component outside the range of M."""


class SingularBordered(DualCentralityError):
    pass


class SubmatrixSingular(DualCentralityError):
    pass


class DegenerateDenominator(DualCentralityError):
    pass


class NotTied(DualCentralityError):
    pass


class UnknownInstance(DualCentralityError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else ""


class InvalidPerturbation(DualCentralityError, ValueError):
    """Perturbation does not fit the hypergraph (order or vertex range)."""
