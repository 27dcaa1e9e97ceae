"""Exception hierarchy shared by every module."""


class MultinetError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(MultinetError, ValueError):
    """An argument lies outside the domain of an operation."""


class ResourceError(MultinetError):
    """A configured enumeration bound would be exceeded."""


class CompositionError(MultinetError):
    """Gluing two hypergraphs produced a non-linear hypergraph."""


class ExpansionError(MultinetError):
    """An expansion site does not satisfy the expansion conditions.

    ``condition`` is one of ``"a"``, ``"b"`` or ``"c"``; ``witness`` carries
    whatever made the condition fail (a vertex, a pair of partitions...).
    """

    def __init__(self, message, condition=None, witness=None):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


class CompileError(MultinetError):
    """A method cannot be compiled to a multiplicative structure."""


class ParseError(MultinetError):
    """Syntax or semantic error in program source, with a source location."""

    def __init__(self, message, line=None, column=None):
        loc = f"{line}:{column}: " if line is not None else ""
        super().__init__(f"{loc}{message}")
        self.line = line
        self.column = column
        self.bare_message = message
