"""Surfaces, Dehn-twist words, braid words, and conversions between them.

A surface S_{k,r} (genus k, r boundary components, r in {1,2}) carries the
standard chain of curves a1, ..., a_m with m = 2k + r - 1, consecutive
curves meeting once.  On S_{k,1} with k >= 2 there is an extra generator a0
meeting a4 once and disjoint from the rest.  Monodromies are ordered words
of signed Dehn twists; the leftmost letter is performed first and sits at
the lowest height in the mapping-torus picture.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import MalformedToken, NotBraidLike, UnknownCurve


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary: int

    def __post_init__(self) -> None:
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if self.boundary not in (1, 2):
            raise ValueError("boundary components must be 1 or 2")

    @property
    def chain_length(self) -> int:
        """Number of chain curves (= rank of H_1 of the surface)."""
        return 2 * self.genus + self.boundary - 1

    @property
    def has_a0(self) -> bool:
        return self.boundary == 1 and self.genus >= 2

    def curve_indices(self) -> list[int]:
        idx = list(range(1, self.chain_length + 1))
        if self.has_a0:
            idx.append(0)
        return idx

    def check_curve(self, index: int) -> None:
        if index == 0:
            if not self.has_a0:
                raise UnknownCurve(
                    f"curve a0 needs one boundary component and genus >= 2, "
                    f"not S_{{{self.genus},{self.boundary}}}"
                )
            return
        if not 1 <= index <= self.chain_length:
            raise UnknownCurve(
                f"curve a{index} out of range for S_{{{self.genus},{self.boundary}}} "
                f"(valid: a1..a{self.chain_length}"
                + (", a0)" if self.has_a0 else ")")
            )

    def __str__(self) -> str:
        return f"S_{{{self.genus},{self.boundary}}}"


@dataclass(frozen=True)
class TwistLetter:
    curve: int
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("twist sign must be +1 or -1")


@dataclass(frozen=True)
class TwistWord:
    surface: Surface
    letters: tuple[TwistLetter, ...]

    def __post_init__(self) -> None:
        for let in self.letters:
            self.surface.check_curve(let.curve)

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def n_neg(self) -> int:
        return sum(1 for let in self.letters if let.sign == -1)

    def concat(self, other: "TwistWord") -> "TwistWord":
        if other.surface != self.surface:
            raise ValueError("cannot concatenate words on different surfaces")
        return TwistWord(self.surface, self.letters + other.letters)

    def __str__(self) -> str:
        return format_twist_word(self)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[tuple[int, int], ...]  # (generator index, sign)

    def __post_init__(self) -> None:
        if self.strands < 2:
            raise ValueError("braid groups need at least 2 strands")
        for idx, sign in self.letters:
            if not 1 <= idx <= self.strands - 1:
                raise MalformedToken(
                    f"generator s{idx} out of range for {self.strands} strands"
                )
            if sign not in (1, -1):
                raise ValueError("braid letter sign must be +1 or -1")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def writhe(self) -> int:
        return sum(sign for _, sign in self.letters)

    @property
    def n_neg(self) -> int:
        return sum(1 for _, sign in self.letters if sign == -1)

    @property
    def n_pos(self) -> int:
        return len(self.letters) - self.n_neg

    def permutation(self) -> list[int]:
        """Strand permutation of the braid (0-based, bottom to top)."""
        perm = list(range(self.strands))
        for idx, _ in self.letters:
            perm[idx - 1], perm[idx] = perm[idx], perm[idx - 1]
        return perm

    def components(self) -> int:
        """Number of link components of the closure."""
        perm = self.permutation()
        seen = [False] * self.strands
        count = 0
        for s in range(self.strands):
            if not seen[s]:
                count += 1
                t = s
                while not seen[t]:
                    seen[t] = True
                    t = perm[t]
        return count

    def __str__(self) -> str:
        return format_braid_word(self)


_TOKEN = re.compile(r"^([a-z])(\d+)(?:\^(-?\d+))?$")


def _parse_tokens(text: str, prefix: str) -> list[tuple[int, int]]:
    letters: list[tuple[int, int]] = []
    for token in text.split():
        m = _TOKEN.match(token)
        if not m or m.group(1) != prefix:
            raise MalformedToken(f"bad token {token!r} (expected {prefix}<idx>[^<int>])")
        idx = int(m.group(2))
        exp = int(m.group(3)) if m.group(3) is not None else 1
        sign = 1 if exp >= 0 else -1
        letters.extend((idx, sign) for _ in range(abs(exp)))
    return letters


def parse_twist_word(text: str, surface: Surface) -> TwistWord:
    """Parse tokens like ``a2 a1^-1`` into a twist word on the surface."""
    pairs = _parse_tokens(text, "a")
    return TwistWord(surface, tuple(TwistLetter(c, s) for c, s in pairs))


def parse_braid_word(text: str, strands: int) -> BraidWord:
    """Parse tokens like ``s1^-5 s2`` into a braid word."""
    pairs = _parse_tokens(text, "s")
    return BraidWord(strands, tuple(pairs))


def _format(letters, prefix: str) -> str:
    out: list[str] = []
    run_idx = None
    run_sign = 0
    run_len = 0

    def flush():
        if run_len == 0:
            return
        exp = run_sign * run_len
        out.append(f"{prefix}{run_idx}" + (f"^{exp}" if exp != 1 else ""))

    for idx, sign in letters:
        if idx == run_idx and sign == run_sign:
            run_len += 1
        else:
            flush()
            run_idx, run_sign, run_len = idx, sign, 1
    flush()
    return " ".join(out)


def format_twist_word(word: TwistWord) -> str:
    return _format(((l.curve, l.sign) for l in word.letters), "a")


def format_braid_word(braid: BraidWord) -> str:
    return _format(braid.letters, "s")


def surface_for_strands(strands: int) -> Surface:
    """Page of the double cover branched over a closed braid on m strands."""
    if strands % 2:
        return Surface((strands - 1) // 2, 1)
    return Surface((strands - 2) // 2, 2)


def braid_to_openbook(braid: BraidWord) -> TwistWord:
    """Replace each s_l^e by the twist (a_l, e) on the branched-cover page."""
    surface = surface_for_strands(braid.strands)
    return TwistWord(
        surface, tuple(TwistLetter(idx, sign) for idx, sign in braid.letters)
    )


def openbook_to_braid(word: TwistWord) -> BraidWord:
    """Inverse of braid_to_openbook; fails if the word uses a0."""
    for let in word.letters:
        if let.curve == 0:
            raise NotBraidLike("words involving a0 do not come from braids")
    strands = word.surface.chain_length + 1
    return BraidWord(strands, tuple((l.curve, l.sign) for l in word.letters))


def _stabilized_surface(surface: Surface) -> tuple[Surface, int]:
    """Surface grown by one chain curve, and the new curve's index."""
    if surface.boundary == 1:
        bigger = Surface(surface.genus, 2)
    else:
        bigger = Surface(surface.genus + 1, 1)
    return bigger, bigger.chain_length


def _stabilize(word: TwistWord, sign: int) -> TwistWord:
    bigger, new_curve = _stabilized_surface(word.surface)
    letters = tuple(TwistLetter(l.curve, l.sign) for l in word.letters)
    return TwistWord(bigger, letters + (TwistLetter(new_curve, sign),))


def positive_stabilize(word: TwistWord) -> TwistWord:
    """Extend the chain by one curve and append a right-handed twist on it."""
    return _stabilize(word, +1)


def negative_stabilize(word: TwistWord) -> TwistWord:
    """Extend the chain by one curve and append a left-handed twist on it."""
    return _stabilize(word, -1)
