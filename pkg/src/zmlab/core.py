"""Alphabets, symbol sequences, and parse results.

Symbols are stored as dense small integers; the alphabet maps them to and
from single-character labels for text I/O.  Sequences are immutable once
built so they can be shared freely between threads and processes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import UnknownSymbol


class ParseKind(Enum):
    """Which parsing rule produced a ParseResult."""

    ZM = "zm"
    MZM = "mzm"


@dataclass(frozen=True)
class Alphabet:
    """A finite ordered set of single-character symbol labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.labels) < 2:
            raise ValueError("alphabet needs at least two symbols")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("alphabet labels must be distinct")
        for lab in self.labels:
            if not isinstance(lab, str) or len(lab) != 1:
                raise ValueError(f"label {lab!r} is not a single character")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index_of(self, char: str) -> int:
        try:
            return self.labels.index(char)
        except ValueError:
            raise KeyError(char) from None


def alphabet(chars: str) -> Alphabet:
    """Convenience constructor: alphabet("01") == Alphabet(("0", "1"))."""
    return Alphabet(tuple(chars))


BINARY = alphabet("01")


@dataclass(frozen=True, eq=False)
class Seq:
    """An immutable run of symbols over a fixed alphabet."""

    alphabet: Alphabet
    symbols: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.symbols, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("symbols must be one-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.alphabet.size):
            raise ValueError("symbol index out of alphabet range")
        arr.flags.writeable = False
        object.__setattr__(self, "symbols", arr)

    def __len__(self) -> int:
        return int(self.symbols.size)

    @property
    def length(self) -> int:
        return len(self)

    def prefix(self, n: int) -> "Seq":
        return Seq(self.alphabet, self.symbols[:n])

    def __repr__(self) -> str:
        text = seq_to_text(self)
        if len(text) > 40:
            text = text[:37] + "..."
        return f"Seq({text!r}, n={len(self)})"


def seq_from_text(text: str, alph: Alphabet) -> Seq:
    """Decode a character string into a Seq.

    Raises UnknownSymbol with the 0-based position of the first character
    that is not in the alphabet.
    """
    lookup = {lab: i for i, lab in enumerate(alph.labels)}
    out = np.empty(len(text), dtype=np.int64)
    for i, ch in enumerate(text):
        code = lookup.get(ch)
        if code is None:
            raise UnknownSymbol(i, ch)
        out[i] = code
    return Seq(alph, out)


def seq_to_text(seq: Seq) -> str:
    """Inverse of seq_from_text."""
    labs = seq.alphabet.labels
    return "".join(labs[s] for s in seq.symbols.tolist())


@dataclass
class ParseResult:
    """Outcome of parsing a target y[1..N] against a reference x[1..N].

    boundaries holds the 1-based end position of every word, so it is
    strictly increasing and its last entry equals N.  truncated_last is set
    when the final word was cut short by running out of target symbols
    rather than by the parsing rule itself.
    """

    kind: ParseKind
    n: int
    boundaries: list[int] = field(default_factory=list)
    truncated_last: bool = False

    @property
    def word_count(self) -> int:
        return len(self.boundaries)

    def word_spans(self) -> list[tuple[int, int]]:
        """0-based half-open (start, end) spans of the words."""
        spans = []
        start = 0
        for end in self.boundaries:
            spans.append((start, end))
            start = end
        return spans

    def words(self, y: Seq) -> list[str]:
        """The parsed words of y rendered as label strings."""
        text = seq_to_text(y.prefix(self.n))
        return [text[a:b] for a, b in self.word_spans()]

    def check(self) -> None:
        """Structural sanity: boundaries partition 1..n."""
        if not self.boundaries:
            raise ValueError("empty parse")
        prev = 0
        for b in self.boundaries:
            if b <= prev:
                raise ValueError("boundaries not strictly increasing")
            prev = b
        if prev != self.n:
            raise ValueError("boundaries do not end at n")
