import numpy as np
import pytest
from hypothesis import given, strategies as st

from zmlab.core import (Alphabet, ParseKind, ParseResult, Seq, alphabet,
                        seq_from_text, seq_to_text)
from zmlab.errors import UnknownSymbol


def test_alphabet_basics():
    a = alphabet("01")
    assert a.size == 2
    assert a.labels == ("0", "1")
    assert a.index_of("1") == 1


def test_alphabet_rejects_degenerate():
    with pytest.raises(ValueError):
        Alphabet(("0",))
    with pytest.raises(ValueError):
        Alphabet(("0", "0"))
    with pytest.raises(ValueError):
        Alphabet(("0", "ab"))


def test_round_trip():
    a = alphabet("abc")
    s = seq_from_text("abcba", a)
    assert len(s) == 5
    assert s.symbols.tolist() == [0, 1, 2, 1, 0]
    assert seq_to_text(s) == "abcba"


def test_unknown_symbol_position():
    with pytest.raises(UnknownSymbol) as exc:
        seq_from_text("102", alphabet("01"))
    assert exc.value.position == 2
    assert exc.value.char == "2"


def test_empty_seq_is_legal():
    s = seq_from_text("", alphabet("01"))
    assert len(s) == 0
    assert seq_to_text(s) == ""


def test_seq_is_immutable():
    s = seq_from_text("0101", alphabet("01"))
    with pytest.raises(ValueError):
        s.symbols[0] = 1


def test_seq_rejects_out_of_range():
    with pytest.raises(ValueError):
        Seq(alphabet("01"), np.array([0, 2]))


def test_prefix():
    s = seq_from_text("0110", alphabet("01"))
    assert seq_to_text(s.prefix(2)) == "01"


@given(st.text(alphabet="abc", min_size=0, max_size=60))
def test_round_trip_property(text):
    a = alphabet("abc")
    assert seq_to_text(seq_from_text(text, a)) == text


def test_parse_result_structure():
    r = ParseResult(ParseKind.MZM, 5, [2, 5])
    r.check()
    assert r.word_count == 2
    assert r.word_spans() == [(0, 2), (2, 5)]
    y = seq_from_text("01100", alphabet("01"))
    assert r.words(y) == ["01", "100"]


def test_parse_result_rejects_bad_boundaries():
    with pytest.raises(ValueError):
        ParseResult(ParseKind.ZM, 5, []).check()
    with pytest.raises(ValueError):
        ParseResult(ParseKind.ZM, 5, [3, 3]).check()
    with pytest.raises(ValueError):
        ParseResult(ParseKind.ZM, 5, [2, 4]).check()
