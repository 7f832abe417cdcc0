"""Exception types shared across the package.

Everything raised on purpose derives from ZmlabError so callers (and the
command line front end) can catch one base class.
"""


class ZmlabError(Exception):
    """Base class for all errors raised by this package."""


class UnknownSymbol(ZmlabError):
    """A character in a text stream is not part of the alphabet."""

    def __init__(self, position: int, char: str):
        self.position = position
        self.char = char
        super().__init__(f"unknown symbol {char!r} at position {position}")


class EmptyReference(ZmlabError):
    """An index was requested over an empty reference sequence."""


class BadLength(ZmlabError):
    """A pattern length is out of range for the given sequence."""


class EmptyInput(ZmlabError):
    """A parser was handed an empty target sequence."""


class DegenerateN(ZmlabError):
    """An estimator needs N >= 2 to produce a finite, meaningful value."""


class InvalidModel(ZmlabError):
    """A source model failed validation (shapes, signs, normalization)."""


class BadGamma(ZmlabError):
    """A cost sequence for the countable-state chain is not admissible."""


class TruncationTooTight(ZmlabError):
    """The countable-state truncation leaves more tail mass than allowed."""


class NotIrreducible(ZmlabError):
    """A transition matrix is not irreducible; carries the SCC split."""

    def __init__(self, components):
        self.components = components
        super().__init__(
            f"transition matrix is not irreducible: {len(components)} "
            f"strongly connected components {components}"
        )


class AlphabetMismatch(ZmlabError):
    """Two objects that must share an alphabet do not."""


class SupportViolation(ZmlabError):
    """A sequence has zero probability under the reference model."""


class GridMissing(ZmlabError):
    """A required grid point is absent from a curve."""


class TooLarge(ZmlabError):
    """A support enumeration would exceed the configured node budget."""


class ConfigError(ZmlabError):
    """An experiment configuration file is malformed.

    The message starts with the dotted path of the offending field.
    """

    def __init__(self, field: str, detail: str):
        self.field = field
        super().__init__(f"{field}: {detail}")
