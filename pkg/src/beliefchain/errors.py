"""Exception hierarchy.

Everything raised deliberately by the library derives from :class:`BeliefError`,
so callers (the CLI in particular) can map failures to exit codes by class.
"""


class BeliefError(Exception):
    """Base class for all library errors."""


class FrameError(BeliefError, ValueError):
    """Invalid variable, frame, or configuration set."""


class FrameMismatchError(FrameError):
    """Operands live on incompatible frames."""


class MassError(BeliefError, ValueError):
    """Invalid basic probability assignment."""


class TotalConflictError(MassError):
    """Dempster combination annihilated all mass (K = 1)."""

    def __init__(self, message, link=None):
        super().__init__(message)
        self.link = link


class ConstructionError(BeliefError, ValueError):
    """A link construction's preconditions are not met."""


class EnumerationLimitError(BeliefError, ValueError):
    """A power-set enumeration would exceed the configured guard."""


class ModelError(BeliefError):
    """A rule model could not be turned into a chain; carries a source location."""

    def __init__(self, message, line, column, source="<model>"):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: error: {message}")


class ParseError(ModelError):
    """Lexical, syntactic, or name-resolution failure."""


class ModelSemanticError(ModelError):
    """Well-formed model whose numbers or structure are unusable."""
