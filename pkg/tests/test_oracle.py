import pytest

from openkh.braidkh import (
    link_determinant,
    oriented_state_mask,
    plamenevskaya,
    reduced_kh,
    resolve_state,
    self_linking,
    turner_s,
)
from openkh.errors import NotAKnot
from openkh.words import parse_braid_word


def test_resolve_state_circle_counts():
    b = parse_braid_word("s1", 2)
    assert resolve_state(b, (0,)).count == 2  # oriented: parallel strands
    assert resolve_state(b, (1,)).count == 1  # merged
    b = parse_braid_word("s2 s1^-1", 3)
    assert resolve_state(b, oriented_state_mask(b)).count == 3
    # marked circle goes through strand 1
    st = resolve_state(b, (0, 1))
    assert 0 <= st.marked < st.count


def test_reduced_kh_unknots():
    assert reduced_kh(parse_braid_word("s1", 2)).ranks == {(0, 0): 1}
    assert reduced_kh(parse_braid_word("s2 s1^-1", 3)).ranks == {(0, 0): 1}


def test_reduced_kh_trefoil():
    kh = reduced_kh(parse_braid_word("s1^3", 2))
    assert kh.ranks == {(0, 2): 1, (2, 6): 1, (3, 8): 1}


def test_reduced_kh_figure_eight():
    kh = reduced_kh(parse_braid_word("s1 s2^-1 s1 s2^-1", 3))
    assert kh.total == 5
    assert kh.by_homological() == {-2: 1, -1: 1, 0: 1, 1: 1, 2: 1}


def test_m10132_polynomial():
    b = parse_braid_word("s3^-1 s2^2 s3^-2 s2^-1 s3 s1 s2^-1 s1^-2", 4)
    kh = reduced_kh(b)
    expected = {
        (-7, -14): 1, (-6, -12): 1, (-5, -10): 1, (-4, -8): 2, (-3, -8): 1,
        (-3, -6): 1, (-2, -6): 1, (-2, -4): 1, (-1, -2): 1, (0, -2): 1,
    }
    assert kh.ranks == expected
    assert kh.polynomial() == (
        "t^-7 q^-14 + t^-6 q^-12 + t^-5 q^-10 + 2t^-4 q^-8 + t^-3 q^-8 + "
        "t^-3 q^-6 + t^-2 q^-6 + t^-2 q^-4 + t^-1 q^-2 + t^0 q^-2"
    )
    # no class at (0, sl+1): the transverse invariant vanishes
    assert self_linking(b) == -7
    assert kh.ranks.get((0, -6), 0) == 0
    assert not plamenevskaya(b).survives


def test_self_linking_family():
    for r in (3, 4, 5, 6):
        b = parse_braid_word(f"s1^-{r} s2 s1^3 s2", 3)
        assert self_linking(b) == 2 - r
    assert self_linking(parse_braid_word("", 4)) == -4


def test_plamenevskaya_bigrading_and_survival():
    b = parse_braid_word("s1^3", 2)
    rep = plamenevskaya(b)
    assert rep.bigrading == (0, self_linking(b) + 1) == (0, 2)
    assert rep.is_cycle and rep.survives
    rep = plamenevskaya(parse_braid_word("s2 s1^-1", 3))
    assert rep.is_cycle and not rep.survives


def test_plamenevskaya_dead_for_nex_family():
    for r in (3, 4, 5):
        b = parse_braid_word(f"s1^-{r} s2 s1^2 s2", 3)
        rep = plamenevskaya(b)
        assert rep.is_cycle
        assert not rep.survives


def test_turner_rank_counts_components():
    # knots have rank 1, a c-component closure has rank 2^(c-1)
    assert turner_s(parse_braid_word("s1^3", 2)).rank == 1
    hopf = turner_s(parse_braid_word("s1^2", 2))
    assert hopf.components == 2 and hopf.rank == 2
    unlink3 = turner_s(parse_braid_word("", 3))
    assert unlink3.rank == 4


def test_turner_s_values():
    assert turner_s(parse_braid_word("s1^3", 2)).s == 2
    assert turner_s(parse_braid_word("s1^-3", 2)).s == -2
    assert turner_s(parse_braid_word("s2 s1^-1", 3)).s == 0
    # 6.1 family: s = 3 - r for the odd (knot) cases
    for r in (5, 7):
        b = parse_braid_word(f"s1^-{r} s2 s1^3 s2", 3)
        report = turner_s(b)
        assert report.s == 3 - r
        assert self_linking(b) == report.s - 1
        assert plamenevskaya(b).survives


def test_turner_s_link_raises_via_cli_contract():
    report = turner_s(parse_braid_word("s1^2", 2))
    assert report.s is None
    from openkh.braidkh import require_knot

    with pytest.raises(NotAKnot):
        require_knot(parse_braid_word("s1^2", 2))


def test_determinant_families():
    for r in range(5, 9):
        b = parse_braid_word(f"s1^-{r} s2 s1^3 s2", 3)
        assert link_determinant(b) == r + 6
    for r in range(4, 8):
        b = parse_braid_word(f"s1^-{r} s2 s1^3 s2^2", 3)
        assert link_determinant(b) == 9 + 3 * r
    for r in range(3, 7):
        b = parse_braid_word(f"s1^-{r} s2 s1^2 s2^2 s3 s2^-1 s3", 4)
        assert link_determinant(b) == 14 + r


def test_determinant_parity_matches_rank():
    for text, strands in [("s1^3", 2), ("s1^-5 s2 s1^3 s2", 3), ("s1 s2^-1 s1 s2^-1", 3)]:
        b = parse_braid_word(text, strands)
        if b.components() == 1:
            assert reduced_kh(b).total % 2 == link_determinant(b) % 2


def test_sl_bound_against_s():
    # sl <= s - 1 on braid-closure knots
    for text, strands in [
        ("s1^3", 2), ("s1^-3", 2), ("s2 s1^-1", 3), ("s1^-5 s2 s1^3 s2", 3),
        ("s1 s2^-1 s1 s2^-1", 3),
    ]:
        b = parse_braid_word(text, strands)
        if b.components() != 1:
            continue
        assert self_linking(b) <= turner_s(b).s - 1
