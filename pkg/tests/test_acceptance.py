"""Acceptance suite: one test per advertised criterion, each printing a
pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``).

Criteria 2 and 5 carry a caveat.  The quoted rank 25 for the second
chain-relation word and the quoted six-term polynomial for the
non-fillability word are not attainable for the words as printed in the
source material: the second word provably has even total rank (total rank
is congruent mod 2 to |H_1| = 2), and the non-fillability word has
|H_1| = 19, forcing total rank >= 19 > 9.  Both obstructions are
established by two independent oracles (a diagram-side determinant and the
monodromy action on the page homology), so those printed words must carry
typos, like the known a5-for-a4 slip in the same source.  The acceptance
tests assert the stated values as written and are expected to stay red;
docs/decisions record the analysis.
"""

import random
import time

import pytest

from openkh.braidkh import (
    cross_check,
    link_determinant,
    plamenevskaya,
    reduced_kh,
    self_linking,
    turner_s,
)
from openkh.cube import WEDGE, build_e1, psi_is_cycle, verify_d_squared
from openkh.curves import humphries_system
from openkh.derive import (
    a0_candidates,
    chain_sign_candidates,
    pants_a0_row,
    shipped_candidate,
    validate,
)
from openkh.homology import (
    e1_dims,
    e2_graded_ranks,
    euler_characteristic,
    psi_survives,
    verdict,
)
from openkh.words import (
    Surface,
    negative_stabilize,
    openbook_to_braid,
    parse_braid_word,
    parse_twist_word,
    positive_stabilize,
)

S11 = Surface(1, 1)
S12 = Surface(1, 2)
S02 = Surface(0, 2)
S21 = Surface(2, 1)


def report(criterion: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[acceptance] {criterion}: {status} {detail}")
    assert ok, f"{criterion}: {detail}"


def test_criterion_1_worked_example():
    t0 = time.time()
    w = parse_twist_word("a2 a1^-1", S11)
    system = humphries_system(S11)
    C = build_e1(w, system)
    ranks = e2_graded_ranks(C)
    psi = psi_survives(C)
    edge = C.edge_map((0, 0), (1, 0))
    target = C.vertex((1, 0))
    ok = (
        ranks.nonzero() == {0: 1}
        and psi.is_cycle
        and not psi.survives
        and C.vertex((0, 0)).rank == 1
        and C.vertex((1, 0)).rank == 2
        and edge.kind == WEDGE
        and edge.wedge_class == target.classes[("base", 1)]
    )
    elapsed = time.time() - t0
    report(
        "criterion 1 (worked example)",
        ok and elapsed < 1.0,
        f"rank={ranks.nonzero()}, psi={psi.survives}, {elapsed:.2f}s",
    )


def test_criterion_2_chain_relation_first_word():
    t0 = time.time()
    phi1 = parse_twist_word(
        "a1 a2 a3 a1 a2 a3 a1 a2 a3 a1 a2 a3 a4^-1 a3^-1 a2^-1", S21
    )
    ranks = e2_graded_ranks(build_e1(phi1, humphries_system(S21)))
    braid = parse_braid_word("s1 s2 s3 s1 s2 s3 s1 s2 s3 s1 s2 s3 s4^-1 s3^-1 s2^-1", 5)
    oracle = reduced_kh(braid)
    ok = (
        ranks.total == 6
        and oracle.total == 6
        and ranks.nonzero() == oracle.by_homological()
    )
    elapsed = time.time() - t0
    report(
        "criterion 2a (first chain-relation word, engine + oracle)",
        ok and elapsed < 600,
        f"engine={ranks.total}, oracle={oracle.total}, {elapsed:.0f}s",
    )


def test_criterion_2_chain_relation_second_word():
    # The printed second word is the genuine relation partner (it acts on
    # the page homology exactly like the first word), but its total rank is
    # congruent to |H_1| = 2 mod 2, so the quoted odd value 25 cannot hold.
    # Asserted as stated; see the module docstring.
    t0 = time.time()
    phi2 = parse_twist_word(
        "a0 a4^-1 a3^-1 a2^-1 a1^-1 a0 a1^-1 a4 a2^-1 a3 a2 a4^-1 a1 a0^-1 a1", S21
    )
    ranks = e2_graded_ranks(build_e1(phi2, humphries_system(S21)))
    elapsed = time.time() - t0
    report(
        "criterion 2b (second chain-relation word)",
        ranks.total == 25 and elapsed < 600,
        f"engine total={ranks.total} (quoted 25 is impossible for the printed "
        f"word: rank is even since |H1|=2), {elapsed:.0f}s",
    )


def test_criterion_3_tightness_certification():
    t0 = time.time()
    w = parse_twist_word("a1 a2 a3 a4 a3^-5 a4^2 a0", S21)
    v = verdict(w, humphries_system(S21))
    ok = (
        v.kind == "TightCertified"
        and v.total_rank == 9
        and v.h1_order == 9
        and v.psi.survives
    )
    elapsed = time.time() - t0
    report(
        "criterion 3 (tightness certification)",
        ok and elapsed < 60,
        f"rank={v.total_rank}, |H1|={v.h1_order}, psi={v.psi.survives}, "
        f"verdict={v.kind}, {elapsed:.0f}s",
    )


def test_criterion_4_negative_control():
    t0 = time.time()
    w = parse_twist_word("a1 a2 a3 a4 a3^-5 a4 a0", S21)
    v = verdict(w, humphries_system(S21))
    ok = (
        v.kind == "Inconclusive"
        and v.total_rank == 7
        and v.h1_order == 1
        and v.psi.survives
    )
    elapsed = time.time() - t0
    report(
        "criterion 4 (negative control)",
        ok and elapsed < 60,
        f"rank={v.total_rank}, |H1|={v.h1_order}, psi={v.psi.survives}, "
        f"verdict={v.kind}, {elapsed:.0f}s",
    )


def test_criterion_5_nonfillability_certification():
    # |H_1| of the printed word is 19 (two independent oracles agree), so
    # its total rank is at least 19 and the quoted total-9 polynomial cannot
    # hold.  Asserted as stated; see the module docstring.
    t0 = time.time()
    w = parse_twist_word(
        "a1^2 a2^-1 a3^-1 a4^-1 a0 a4^-1 a3^-1 a2^-1 a1^-1 a3 a4 a2", S21
    )
    v = verdict(w, humphries_system(S21))
    expected = {-6: 1, -5: 2, -4: 1, -3: 1, -2: 2, -1: 2}
    ok = (
        v.ranks.nonzero() == expected
        and v.kind == "NotStronglyFillableCertified"
    )
    elapsed = time.time() - t0
    report(
        "criterion 5 (non-fillability certification)",
        ok and elapsed < 120,
        f"engine={v.ranks.nonzero()}, verdict={v.kind} (quoted polynomial is "
        f"impossible for the printed word: |H1|=19 forces rank >= 19), "
        f"{elapsed:.0f}s",
    )


def test_criterion_6_oracle_polynomial():
    t0 = time.time()
    b = parse_braid_word("s3^-1 s2^2 s3^-2 s2^-1 s3 s1 s2^-1 s1^-2", 4)
    kh = reduced_kh(b)
    expected = {
        (-7, -14): 1, (-6, -12): 1, (-5, -10): 1, (-4, -8): 2, (-3, -8): 1,
        (-3, -6): 1, (-2, -6): 1, (-2, -4): 1, (-1, -2): 1, (0, -2): 1,
    }
    pl = plamenevskaya(b)
    ok = (
        kh.ranks == expected
        and kh.ranks.get((0, self_linking(b) + 1), 0) == 0
        and not pl.survives
    )
    elapsed = time.time() - t0
    report(
        "criterion 6 (oracle polynomial + vanishing class)",
        ok and elapsed < 10,
        f"{len(kh.ranks)} bigradings, psi={pl.survives}, {elapsed:.1f}s",
    )


def test_criterion_7_determinant_families():
    t0 = time.time()
    ok = True
    for r in range(5, 9):
        ok &= link_determinant(parse_braid_word(f"s1^-{r} s2 s1^3 s2", 3)) == r + 6
    for r in range(4, 8):
        ok &= (
            link_determinant(parse_braid_word(f"s1^-{r} s2 s1^3 s2^2", 3))
            == 9 + 3 * r
        )
    for r in range(3, 7):
        ok &= (
            link_determinant(
                parse_braid_word(f"s1^-{r} s2 s1^2 s2^2 s3 s2^-1 s3", 4)
            )
            == 14 + r
        )
    elapsed = time.time() - t0
    report(
        "criterion 7 (determinant families)",
        ok and elapsed < 12,
        f"{elapsed:.1f}s",
    )


def test_criterion_8_transverse_invariants():
    t0 = time.time()
    ok = True
    for r in (5, 7):
        b = parse_braid_word(f"s1^-{r} s2 s1^3 s2", 3)
        sl = self_linking(b)
        rep = turner_s(b)
        pl = plamenevskaya(b)
        ok &= sl == 2 - r and rep.s == 3 - r and sl == rep.s - 1 and pl.survives
    for r in (3, 4, 5):
        b = parse_braid_word(f"s1^-{r} s2 s1^2 s2", 3)
        ok &= not plamenevskaya(b).survives
    elapsed = time.time() - t0
    report(
        "criterion 8 (self-linking, s-invariant, transverse class)",
        ok and elapsed < 120,
        f"{elapsed:.0f}s",
    )


def _random_word(rng, surface, max_len, with_a0):
    n = rng.randint(0, max_len)
    choices = list(range(1, surface.chain_length + 1))
    if with_a0 and surface.has_a0:
        choices.append(0)
    toks = " ".join(
        f"a{rng.choice(choices)}" + ("^-1" if rng.random() < 0.5 else "")
        for _ in range(n)
    )
    return parse_twist_word(toks, surface)


def test_criterion_9a_9b_face_commutation_and_cycle():
    t0 = time.time()
    rng = random.Random(42)
    ok = True
    surfaces = [S11, S12, S02, S21]
    for _ in range(200):
        surface = rng.choice(surfaces)
        w = _random_word(rng, surface, 8, with_a0=False)
        C = build_e1(w, humphries_system(surface), certify=False)
        ok &= verify_d_squared(C)
        ok &= psi_is_cycle(C)
        if not ok:
            break
    for _ in range(50):
        w = _random_word(rng, S21, 8, with_a0=True)
        C = build_e1(w, humphries_system(S21), certify=False)
        ok &= verify_d_squared(C)
        ok &= psi_is_cycle(C)
        if not ok:
            break
    elapsed = time.time() - t0
    report(
        "criterion 9a+9b (face commutation and cycle property, 250 words)",
        ok and elapsed < 300,
        f"{elapsed:.0f}s",
    )


def test_criterion_9c_stabilization_triple():
    t0 = time.time()
    rng = random.Random(43)
    ok = True
    for _ in range(50):
        surface = rng.choice([S11, S12, S02])
        w = _random_word(rng, surface, 5, with_a0=False)

        def signature(word):
            C = build_e1(word, humphries_system(word.surface), certify=False)
            return e2_graded_ranks(C).nonzero(), psi_survives(C).survives

        ranks, psi = signature(w)
        up_ranks, up_psi = signature(positive_stabilize(w))
        down_ranks, down_psi = signature(negative_stabilize(w))
        ok &= up_ranks == ranks and down_ranks == ranks
        ok &= up_psi == psi and down_psi is False
        if not ok:
            break
    elapsed = time.time() - t0
    report(
        "criterion 9c (stabilization triple, 50 words)",
        ok and elapsed < 300,
        f"{elapsed:.0f}s",
    )


def test_criterion_9d_cross_check():
    t0 = time.time()
    rng = random.Random(44)
    ok = True
    for _ in range(100):
        surface = rng.choice([S11, S12, S02])
        w = _random_word(rng, surface, 8, with_a0=False)
        if len(w) == 0:
            continue
        ok &= cross_check(w).agree
        if not ok:
            break
    elapsed = time.time() - t0
    report(
        "criterion 9d (oracle agreement, 100 words)",
        ok and elapsed < 300,
        f"{elapsed:.0f}s",
    )


def test_criterion_9e_euler_characteristic():
    t0 = time.time()
    rng = random.Random(45)
    ok = True
    for _ in range(60):
        surface = rng.choice([S11, S12, S21])
        w = _random_word(rng, surface, 7, with_a0=surface.has_a0)
        C = build_e1(w, humphries_system(surface), certify=False)
        ranks = e2_graded_ranks(C)
        ok &= euler_characteristic(e1_dims(C)) == euler_characteristic(ranks.ranks)
        if not ok:
            break
    elapsed = time.time() - t0
    report(
        "criterion 9e (Euler characteristic preserved, 60 words)",
        ok and elapsed < 300,
        f"{elapsed:.0f}s",
    )


def test_criterion_10_sign_derivation_gate():
    t0 = time.time()
    shipped = shipped_candidate()
    ok = validate(shipped)
    # the shipped a0 row is the pants row of its chain gauge
    ok &= shipped == pants_a0_row(shipped.chain_asc, shipped.chain_desc)
    # the chain gauge is among the anchor-derived candidates
    pairs = chain_sign_candidates()
    ok &= (shipped.chain_asc, shipped.chain_desc) in pairs
    elapsed = time.time() - t0
    report(
        "criterion 10 (sign-model derivation gate)",
        ok,
        f"chain gauges={pairs}, {elapsed:.0f}s",
    )
