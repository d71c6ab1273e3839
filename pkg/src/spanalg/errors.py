"""Exception types shared across the package."""


class SpanalgError(Exception):
    pass


class DomainMismatch(SpanalgError):
    """Composition attempted between non-composable morphisms."""


class CodomainMismatch(SpanalgError):
    """Pullback attempted on morphisms with different codomains."""


class LimitUnavailable(SpanalgError):
    """The instance cannot construct the requested limit."""


class NotParallel(SpanalgError):
    """Operation requires spans with equal domain and codomain objects."""


class EnumerationUnavailable(SpanalgError):
    """Hom-class enumeration has no canonical form and no finite bound."""


class NoTerminal(SpanalgError):
    """The base category has no terminal object."""


class TabulationFailed(SpanalgError):
    """A tabulation violated one of its two defining equations.

    ``equation`` is 'composite' (r = g . f~) or 'joint-monicity'
    ((f~f) ^ (g~g) = 1).
    """

    def __init__(self, equation, detail=""):
        self.equation = equation
        super().__init__(f"tabulation equation violated: {equation}" + (f" ({detail})" if detail else ""))


class ConfigError(SpanalgError):
    """Invalid CLI or pipeline configuration."""


class ParseError(SpanalgError):
    """Malformed input file; carries a location string."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(message if location is None else f"{location}: {message}")
