"""Curve systems: the linking data behind the surgery presentations.

A curve system records, for a fixed surface, everything needed to write
down the framed-link diagram of any complete resolution:

* ``base_links``   -- linking numbers among the m = 2k+r-1 base components
                      of the identity open book's diagram (all 0-framed);
* ``base_linking`` -- for each curve, how its page pushoff links the base
                      components (this is the curve's homology class);
* ``pushoff``      -- for each ordered pair (c below, c' above) of distinct
                      curves, the linking number of their pushoffs; copies
                      of the same curve at different heights never link, and
                      the page framing is the diagram framing 0.

The shipped ``humphries`` system covers the chain a1..am together with a0
on S_{k,1}, k >= 2.  Its integer entries are not free choices: they are
pinned by the |H_1| and graded-rank anchors in :mod:`openkh.derive`, which
re-derives them from two independent oracles.  Do not edit them by hand;
re-run the derivation instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import MalformedToken, UnknownCurve
from .words import Surface


@dataclass(frozen=True)
class CurveData:
    base_linking: tuple[int, ...]
    # pushoff[(other)] = (this below other, this above other)


@dataclass(frozen=True)
class CurveSystem:
    surface: Surface
    base_links: tuple[tuple[int, ...], ...]
    base_linking: dict[int, tuple[int, ...]]
    pushoff_below: dict[tuple[int, int], int]  # (lower curve, upper curve) -> lk
    page_framing: dict[int, int] | None = None  # diagram framing of the page
    # framing per curve; chain curves sit at 0

    def framing(self, curve: int) -> int:
        if self.page_framing is None:
            return 0
        return self.page_framing.get(curve, 0)

    def __post_init__(self) -> None:
        m = self.surface.chain_length
        if len(self.base_links) != m or any(len(r) != m for r in self.base_links):
            raise ValueError("base_links must be m x m")
        for i in range(m):
            for j in range(m):
                if self.base_links[i][j] != self.base_links[j][i]:
                    raise ValueError("base_links must be symmetric")
        for c, vec in self.base_linking.items():
            self.surface.check_curve(c)
            if len(vec) != m:
                raise ValueError(f"base_linking of a{c} must have length {m}")

    def curves(self) -> list[int]:
        return sorted(self.base_linking)

    def check_curve(self, index: int) -> None:
        if index not in self.base_linking:
            raise UnknownCurve(f"curve a{index} is not part of this curve system")

    def pushoff(self, lower: int, upper: int) -> int:
        """Linking of pushoffs: ``lower`` at the smaller height."""
        if lower == upper:
            return 0
        return self.pushoff_below.get((lower, upper), 0)


# ---------------------------------------------------------------------------
# the shipped system
#
# Base components form a 0-framed unlink; the pushoff of chain curve a_j
# runs once through the j-th base handle.  Pushoffs of adjacent chain curves
# link only in one height order.  The a0 data mirrors its homology class
# a1 + a3 and its single intersection with a4.  All of this is re-derived
# from anchors by openkh.derive; do not edit by hand.
CHAIN_BELOW_ASC = 0  # lk(a_j below, a_{j+1} above)
CHAIN_BELOW_DESC = -1  # lk(a_{j+1} below, a_j above)
# a0 is homologous in the page to parallel copies of a1 and a3 (they cobound
# an embedded pair of pants), so its whole row is the sum of those curves'
# rows: it links base handles 1 and 3 once, links a2 pushoffs by
# asc + desc = -1 at either height order, links a4 pushoffs like a3 does,
# and carries page framing 0.
A0_BASE_LINKING = (1, 0, 1, 0)  # entries for base components 1..4
A0_PUSHOFF = {
    # other curve -> (a0 below other, a0 above other)
    1: (0, 0),
    2: (-1, -1),
    3: (0, 0),
    4: (CHAIN_BELOW_ASC, CHAIN_BELOW_DESC),
}
A0_FRAMING = 0  # page framing of a0 in diagram coordinates


def _strip_zeros(pushoff: dict[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    return {k: v for k, v in pushoff.items() if v}


def parametrized_system(
    surface: Surface,
    chain_below_asc: int,
    chain_below_desc: int,
    a0_base: tuple[int, ...] | None = None,
    a0_pushoff: dict[int, tuple[int, int]] | None = None,
    a0_framing: int = 0,
) -> CurveSystem:
    """Member of the chain-plus-a0 family with explicit linking entries.

    The derivation searches over this family; the shipped defaults are one
    particular member.
    """
    m = surface.chain_length
    base_links = tuple(tuple(0 for _ in range(m)) for _ in range(m))
    base_linking: dict[int, tuple[int, ...]] = {}
    pushoff: dict[tuple[int, int], int] = {}
    for j in range(1, m + 1):
        vec = [0] * m
        vec[j - 1] = 1
        base_linking[j] = tuple(vec)
    for j in range(1, m):
        pushoff[(j, j + 1)] = chain_below_asc
        pushoff[(j + 1, j)] = chain_below_desc
    if surface.has_a0 and a0_base is not None and a0_pushoff is not None:
        vec = [0] * m
        for idx, val in enumerate(a0_base):
            vec[idx] = val
        base_linking[0] = tuple(vec)
        for other, (below, above) in a0_pushoff.items():
            pushoff[(0, other)] = below
            pushoff[(other, 0)] = above
        if a0_framing:
            return CurveSystem(
                surface, base_links, base_linking, _strip_zeros(pushoff),
                {0: a0_framing},
            )
    return CurveSystem(surface, base_links, base_linking, _strip_zeros(pushoff))


def humphries_system(surface: Surface) -> CurveSystem:
    """The default curve system: chain curves a1..am, plus a0 when present."""
    return parametrized_system(
        surface,
        CHAIN_BELOW_ASC,
        CHAIN_BELOW_DESC,
        A0_BASE_LINKING if surface.has_a0 else None,
        A0_PUSHOFF if surface.has_a0 else None,
        A0_FRAMING,
    )


# ---------------------------------------------------------------------------
# config files
#
# Sections: [surface] with genus/boundary, [base] with m integer rows, and
# one [curve aK] section per curve carrying its base_linking vector and
# below:/above: pushoff entries against the other curves.


def dumps_system(system: CurveSystem) -> str:
    s = system.surface
    lines = ["[surface]", f"genus = {s.genus}", f"boundary = {s.boundary}", ""]
    lines.append("[base]")
    for row in system.base_links:
        lines.append(" ".join(str(x) for x in row))
    lines.append("")
    for c in system.curves():
        lines.append(f"[curve a{c}]")
        lines.append(
            "base_linking = " + " ".join(str(x) for x in system.base_linking[c])
        )
        if system.framing(c):
            lines.append(f"framing = {system.framing(c)}")
        for other in system.curves():
            if other == c:
                continue
            below = system.pushoff(c, other)
            above = system.pushoff(other, c)
            if below:
                lines.append(f"below:a{other} = {below}")
            if above:
                lines.append(f"above:a{other} = {above}")
        lines.append("")
    return "\n".join(lines)


def loads_system(text: str) -> CurveSystem:
    section = None
    curve = None
    genus = boundary = None
    base_rows: list[tuple[int, ...]] = []
    base_linking: dict[int, tuple[int, ...]] = {}
    pushoff: dict[tuple[int, int], int] = {}
    framings: dict[int, int] = {}

    def parse_curve_name(tok: str) -> int:
        if not tok.startswith("a") or not tok[1:].isdigit():
            raise MalformedToken(f"bad curve name {tok!r}")
        return int(tok[1:])

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            header = line[1:-1].strip()
            if header == "surface":
                section = "surface"
            elif header == "base":
                section = "base"
            elif header.startswith("curve"):
                section = "curve"
                curve = parse_curve_name(header.split()[1])
            else:
                raise MalformedToken(f"unknown section {header!r}")
            continue
        if section == "surface":
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "genus":
                genus = int(val)
            elif key == "boundary":
                boundary = int(val)
            else:
                raise MalformedToken(f"unknown surface key {key!r}")
        elif section == "base":
            base_rows.append(tuple(int(x) for x in line.split()))
        elif section == "curve":
            key, _, val = line.partition("=")
            key, val = key.strip(), val.strip()
            if key == "base_linking":
                base_linking[curve] = tuple(int(x) for x in val.split())
            elif key == "framing":
                if int(val):
                    framings[curve] = int(val)
            elif key.startswith("below:"):
                other = parse_curve_name(key.split(":", 1)[1])
                pushoff[(curve, other)] = int(val)
            elif key.startswith("above:"):
                other = parse_curve_name(key.split(":", 1)[1])
                pushoff[(other, curve)] = int(val)
            else:
                raise MalformedToken(f"unknown curve key {key!r}")
        else:
            raise MalformedToken(f"content outside of a section: {line!r}")
    if genus is None or boundary is None:
        raise MalformedToken("missing [surface] genus/boundary")
    surface = Surface(genus, boundary)
    return CurveSystem(
        surface,
        tuple(base_rows),
        base_linking,
        _strip_zeros(pushoff),
        framings if framings else None,
    )


def load_system(path: str | Path) -> CurveSystem:
    return loads_system(Path(path).read_text())


def save_system(system: CurveSystem, path: str | Path) -> None:
    Path(path).write_text(dumps_system(system))
