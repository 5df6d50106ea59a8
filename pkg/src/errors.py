"""Exceptions raised by the invariant library and the command line."""


class InvariantError(ArithmeticError):
    """Base class for arithmetic failures inside the library."""


class ZeroConstantTerm(InvariantError):
    pass


class NegativeBetti(InvariantError):
    """A computed Betti number came out negative. Indicates a bug, not bad input."""


class ParityViolation(InvariantError):
    pass


class PreconditionError(InvariantError, ValueError):
    """An operation was called outside its domain."""


class OddDimension(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class BadLength(PreconditionError):
    pass


class BadDimension(PreconditionError):
    pass


class NonPositiveWeight(PreconditionError):
    pass


class NonPositiveLevel(PreconditionError):
    pass


class ZeroWeight(PreconditionError):
    pass


class NonGenericDirection(PreconditionError):

    def __init__(self, edges):
        self.edges = list(edges)
        super().__init__(f"direction pairs to zero with edges {self.edges}")


class InvalidGraph(ValueError):

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class InputError(ValueError):
    """Malformed input document. `field` is a dotted path into the document."""

    def __init__(self, message, field=None, line=None, column=None):
        self.message = message
        self.field = field
        self.line = line
        self.column = column
        super().__init__(self.diagnostic())

    def diagnostic(self):
        where = ""
        if self.line is not None:
            where = f"line {self.line}, column {self.column}: "
        elif self.field:
            where = f"{self.field}: "
        return f"{where}{self.message}"


class FpdParseError(InputError):
    pass


class GraphParseError(InputError):
    pass
