import pytest

from openkh.errors import MalformedToken, NotBraidLike, UnknownCurve
from openkh.words import (
    BraidWord,
    Surface,
    TwistLetter,
    TwistWord,
    braid_to_openbook,
    negative_stabilize,
    openbook_to_braid,
    parse_braid_word,
    parse_twist_word,
    positive_stabilize,
)


def test_surface_basics():
    s = Surface(2, 1)
    assert s.chain_length == 4
    assert s.has_a0
    assert s.curve_indices() == [1, 2, 3, 4, 0]
    assert Surface(1, 1).chain_length == 2
    assert not Surface(1, 1).has_a0
    assert Surface(0, 2).chain_length == 1
    with pytest.raises(ValueError):
        Surface(1, 3)


def test_parse_twist_word():
    s11 = Surface(1, 1)
    w = parse_twist_word("a2 a1^-1", s11)
    assert [(l.curve, l.sign) for l in w.letters] == [(2, 1), (1, -1)]
    assert w.n_neg == 1
    assert len(parse_twist_word("", Surface(2, 1))) == 0
    w = parse_twist_word("a3^-5", Surface(2, 1))
    assert len(w) == 5 and all(l.sign == -1 for l in w.letters)


def test_parse_twist_word_errors():
    with pytest.raises(UnknownCurve):
        parse_twist_word("a0", Surface(1, 1))
    with pytest.raises(UnknownCurve):
        parse_twist_word("a5", Surface(2, 1))
    with pytest.raises(MalformedToken):
        parse_twist_word("b2", Surface(1, 1))
    with pytest.raises(MalformedToken):
        parse_twist_word("a2^x", Surface(1, 1))


def test_word_round_trip_format():
    s = Surface(2, 1)
    text = "a1 a2 a3 a4 a3^-5 a4^2 a0"
    w = parse_twist_word(text, s)
    assert str(w) == text
    assert parse_twist_word(str(w), s) == w


def test_braid_to_openbook():
    b = parse_braid_word("s2 s1^-1", 3)
    w = braid_to_openbook(b)
    assert w.surface == Surface(1, 1)
    assert [(l.curve, l.sign) for l in w.letters] == [(2, 1), (1, -1)]

    b = parse_braid_word("s1^3", 2)
    w = braid_to_openbook(b)
    assert w.surface == Surface(0, 2)
    assert len(w) == 3

    b = BraidWord(5, ())
    assert braid_to_openbook(b).surface == Surface(2, 1)


def test_openbook_to_braid_round_trip():
    for text, strands in [("s2 s1^-1", 3), ("s1^-5 s2 s1^3 s2", 3), ("", 4)]:
        b = parse_braid_word(text, strands)
        assert openbook_to_braid(braid_to_openbook(b)) == b


def test_openbook_to_braid_rejects_a0():
    w = parse_twist_word("a0", Surface(2, 1))
    with pytest.raises(NotBraidLike):
        openbook_to_braid(w)


def test_braid_statistics():
    b = parse_braid_word("s1^-5 s2 s1^3 s2", 3)
    assert b.writhe == 0
    assert b.n_neg == 5 and b.n_pos == 5
    assert b.components() == 1  # a knot
    assert parse_braid_word("s1^2", 2).components() == 2
    assert parse_braid_word("", 4).components() == 4


def test_positive_stabilize():
    w = parse_twist_word("a2", Surface(1, 1))
    up = positive_stabilize(w)
    assert up.surface == Surface(1, 2)
    assert [(l.curve, l.sign) for l in up.letters] == [(2, 1), (3, 1)]
    # annulus grows to a one-holed torus
    empty = TwistWord(Surface(0, 2), ())
    up = positive_stabilize(empty)
    assert up.surface == Surface(1, 1)
    assert [(l.curve, l.sign) for l in up.letters] == [(2, 1)]


def test_negative_stabilize():
    w = parse_twist_word("a2", Surface(1, 1))
    down = negative_stabilize(w)
    assert down.surface == Surface(1, 2)
    assert [(l.curve, l.sign) for l in down.letters] == [(2, 1), (3, -1)]
    empty = TwistWord(Surface(0, 2), ())
    assert [(l.curve, l.sign) for l in negative_stabilize(empty).letters] == [(2, -1)]


def test_stabilize_matches_markov():
    # one positive stabilization = one Markov stabilization on the braid side
    b = parse_braid_word("s1", 2)
    stabilized = positive_stabilize(braid_to_openbook(b))
    assert openbook_to_braid(stabilized) == parse_braid_word("s1 s2", 3)


def test_n_neg_additive():
    s = Surface(2, 1)
    a = parse_twist_word("a1 a2^-1", s)
    b = parse_twist_word("a3^-2 a4", s)
    assert a.concat(b).n_neg == a.n_neg + b.n_neg


def test_twist_word_validates_curves():
    with pytest.raises(UnknownCurve):
        TwistWord(Surface(1, 1), (TwistLetter(0, 1),))
