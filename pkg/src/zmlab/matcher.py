"""Substring machinery over a fixed reference sequence.

The workhorse is a suffix automaton over x[1..N].  It answers "does w occur
as a substring of x[1..n]" for any n <= N in O(|w|) by tracking, per state,
the end position of the first occurrence.  Building it is O(N * alphabet)
with flat preallocated arrays, which keeps the constant small enough for
references of a few hundred thousand symbols in pure Python.

Simple position scans (waiting_time) go through bytes.find instead, which
is the natural tool when only one pattern is involved.
"""

from __future__ import annotations

from .core import Seq, seq_from_text
from .errors import AlphabetMismatch, BadLength, EmptyReference


class SubstringIndex:
    """Suffix automaton over the first reference_length symbols of x."""

    __slots__ = ("alphabet", "reference_length", "_a", "_nxt", "_link",
                 "_len", "_minend", "_size")

    def __init__(self, x: Seq, n: int):
        if n < 1:
            raise EmptyReference("reference prefix must be nonempty")
        if n > len(x):
            raise BadLength(f"N={n} exceeds reference length {len(x)}")
        self.alphabet = x.alphabet
        self.reference_length = n
        a = self._a = x.alphabet.size
        cap = 2 * n + 2
        nxt = self._nxt = [-1] * (cap * a)
        link = self._link = [0] * cap
        length = self._len = [0] * cap
        minend = self._minend = [0] * cap
        link[0] = -1
        size = 1
        last = 0
        for i, c in enumerate(x.symbols[:n].tolist()):
            cur = size
            size += 1
            length[cur] = length[last] + 1
            minend[cur] = i + 1
            p = last
            while p != -1 and nxt[p * a + c] == -1:
                nxt[p * a + c] = cur
                p = link[p]
            if p == -1:
                link[cur] = 0
            else:
                q = nxt[p * a + c]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = size
                    size += 1
                    length[clone] = length[p] + 1
                    link[clone] = link[q]
                    minend[clone] = minend[q]
                    nxt[clone * a: clone * a + a] = nxt[q * a: q * a + a]
                    while p != -1 and nxt[p * a + c] == q:
                        nxt[p * a + c] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur
        self._size = size

    def contains(self, word, n: int | None = None) -> bool:
        """True iff word occurs as a substring of x[1..n].

        word may be a Seq over the same alphabet, a label string, or an
        iterable of symbol indices.  n defaults to the full indexed prefix.
        """
        limit = self._resolve_limit(n)
        syms = self._coerce(word)
        nxt, minend, a = self._nxt, self._minend, self._a
        st = 0
        for c in syms:
            t = nxt[st * a + c]
            if t == -1 or minend[t] > limit:
                return False
            st = t
        return True

    def walker(self, n: int | None = None) -> "IndexWalker":
        """Incremental matcher restricted to x[1..n]."""
        return IndexWalker(self, self._resolve_limit(n))

    def _resolve_limit(self, n: int | None) -> int:
        if n is None:
            return self.reference_length
        if not 1 <= n <= self.reference_length:
            raise BadLength(
                f"n={n} outside 1..{self.reference_length}")
        return n

    def _coerce(self, word):
        if isinstance(word, Seq):
            if word.alphabet != self.alphabet:
                raise AlphabetMismatch("word alphabet differs from index")
            return word.symbols.tolist()
        if isinstance(word, str):
            return seq_from_text(word, self.alphabet).symbols.tolist()
        return list(word)


class IndexWalker:
    """Feeds one symbol at a time against a SubstringIndex.

    After k successful extends the walker has verified that the k symbols
    fed so far occur, in order and contiguously, inside x[1..limit].
    """

    __slots__ = ("_nxt", "_minend", "_a", "limit", "state", "length")

    def __init__(self, index: SubstringIndex, limit: int):
        self._nxt = index._nxt
        self._minend = index._minend
        self._a = index._a
        self.limit = limit
        self.state = 0
        self.length = 0

    def try_extend(self, sym: int) -> bool:
        t = self._nxt[self.state * self._a + sym]
        if t == -1 or self._minend[t] > self.limit:
            return False
        self.state = t
        self.length += 1
        return True

    def reset(self) -> None:
        self.state = 0
        self.length = 0


def build_index(x: Seq, n: int | None = None) -> SubstringIndex:
    """Index the first n symbols of x (all of x by default)."""
    return SubstringIndex(x, len(x) if n is None else n)


def _as_bytes(syms) -> bytes:
    return bytes(bytearray(syms))


def waiting_time(y: Seq, x: Seq, ell: int) -> int | None:
    """First 1-based position r with x[r..r+ell-1] == y[1..ell].

    Returns None when the prefix never occurs in x.  Raises BadLength for
    ell < 1 or ell > y.length.
    """
    if ell < 1 or ell > len(y):
        raise BadLength(f"ell={ell} outside 1..{len(y)}")
    if y.alphabet != x.alphabet:
        raise AlphabetMismatch("sequences use different alphabets")
    if ell > len(x):
        return None
    if y.alphabet.size <= 255:
        pos = _as_bytes(x.symbols.tolist()).find(
            _as_bytes(y.symbols[:ell].tolist()))
        return None if pos < 0 else pos + 1
    pat = y.symbols[:ell].tolist()
    ref = x.symbols.tolist()
    for r in range(len(ref) - ell + 1):
        if ref[r:r + ell] == pat:
            return r + 1
    return None


def match_length(y: Seq, x: Seq, n: int | None = None,
                 index: SubstringIndex | None = None) -> int:
    """Length of the longest prefix of y occurring inside x[1..n], min 1.

    The clamp to 1 applies even when the first symbol of y is absent, so
    the result always lies in 1..min(len(y), n).  Pass a prebuilt index
    over x to avoid rescanning.
    """
    if len(y) == 0:
        raise BadLength("y must be nonempty")
    if y.alphabet != x.alphabet:
        raise AlphabetMismatch("sequences use different alphabets")
    if index is not None:
        w = index.walker(n)
        cap = min(len(y), w.limit)
        k = 0
        syms = y.symbols.tolist()
        while k < cap and w.try_extend(syms[k]):
            k += 1
        return max(1, k)
    if n is None:
        n = len(x)
    if not 1 <= n <= len(x):
        raise BadLength(f"n={n} outside 1..{len(x)}")
    ref = _as_bytes(x.symbols[:n].tolist()) if y.alphabet.size <= 255 else None
    cap = min(len(y), n)
    k = 0
    while k < cap:
        if ref is not None:
            hit = ref.find(_as_bytes(y.symbols[:k + 1].tolist())) >= 0
        else:
            hit = waiting_time(y, x.prefix(n), k + 1) is not None
        if not hit:
            break
        k += 1
    return max(1, k)
