"""E^2 graded ranks, survival of the distinguished class, and verdicts.

The second page is computed grading by grading from kernel/image ranks of
the edge differential; the staged cancellation of filtered complexes is a
separate generic utility used for class tracking and for the Turner-style
filtration sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cube import CubeComplex, build_e1, psi_is_cycle, psi_tilde
from .curves import CurveSystem
from .linalg import Gf2Eliminator, f2_rank as _raw_f2_rank
from .surgery import h1_order
from .words import TwistWord

TIGHT = "TightCertified"
NOT_STRONGLY_FILLABLE = "NotStronglyFillableCertified"
INCONCLUSIVE = "Inconclusive"


def f2_rank(rows) -> int:
    """Rank over GF(2) of bit-packed rows (deterministic elimination)."""
    return _raw_f2_rank(rows)


@dataclass
class GradedRanks:
    ranks: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def nonzero(self) -> dict[int, int]:
        return {d: r for d, r in sorted(self.ranks.items()) if r}

    def polynomial(self) -> str:
        terms = []
        for d, r in sorted(self.ranks.items()):
            if not r:
                continue
            coeff = "" if r == 1 else str(r)
            if d == 0:
                terms.append(str(r))
            else:
                terms.append(f"{coeff}t^{d}")
        return " + ".join(terms) if terms else "0"

    def support(self) -> list[int]:
        return sorted(d for d, r in self.ranks.items() if r)


@dataclass
class PsiReport:
    is_cycle: bool
    survives: bool
    grading: int = 0


@dataclass
class Verdict:
    kind: str
    ranks: GradedRanks
    total_rank: int
    h1_order: int | None
    psi: PsiReport
    support: list[int]
    evidence: list[str]


def _weight_layout(complex_: CubeComplex, weight: int):
    """Column offsets of all vertices at a given |i| weight."""
    offsets: dict[int, int] = {}
    total = 0
    for mask in sorted(complex_.vertices):
        if bin(mask).count("1") != weight:
            continue
        offsets[mask] = total
        total += complex_.vertices[mask].dim
    return offsets, total


def _block_rows(complex_: CubeComplex, weight: int):
    """Rows of the differential out of a weight level, one per generator.

    Yields bit-packed rows over the concatenated target vertex spaces."""
    tgt_offsets, _ = _weight_layout(complex_, weight + 1)
    n = complex_.n
    for mask in sorted(complex_.vertices):
        if bin(mask).count("1") != weight:
            continue
        src = complex_.vertices[mask]
        tables = []
        for j in range(n):
            if (mask >> j) & 1:
                continue
            tgt = mask | (1 << j)
            if tgt not in complex_.vertices:
                continue
            edge = complex_.edge_map(mask, j)
            tables.append((edge.monomial_table(src.rank), tgt_offsets[tgt]))
        for mono in range(src.dim):
            row = 0
            for table, off in tables:
                image = table[mono]
                if image:
                    row ^= image << off
            yield row


def e1_dims(complex_: CubeComplex) -> dict[int, int]:
    """Dimension of the first page per homological grading."""
    dims: dict[int, int] = {}
    for mask, vdata in complex_.vertices.items():
        d = complex_.grading(mask)
        dims[d] = dims.get(d, 0) + vdata.dim
    return dims


def e2_graded_ranks(complex_: CubeComplex) -> GradedRanks:
    """Ranks of the second page per homological grading."""
    n = complex_.n
    dims: dict[int, int] = {}
    for w in range(n + 1):
        _, total = _weight_layout(complex_, w)
        dims[w] = total
    rank_out: dict[int, int] = {}
    for w in range(n + 1):
        if dims.get(w) and dims.get(w + 1):
            elim = Gf2Eliminator()
            for row in _block_rows(complex_, w):
                elim.insert(row)
            rank_out[w] = elim.rank
        else:
            rank_out[w] = 0
    ranks: dict[int, int] = {}
    for w in range(n + 1):
        r = dims.get(w, 0) - rank_out.get(w, 0) - rank_out.get(w - 1, 0)
        if r:
            ranks[w - complex_.n_neg] = r
    return GradedRanks(ranks)


def psi_survives(complex_: CubeComplex) -> PsiReport:
    """Does the distinguished cycle stay nonzero on the second page?

    The class sits in grading 0; survival means it is not a boundary of the
    grading -1 block, which is one span-membership test.
    """
    psi = psi_tilde(complex_)
    cycle = psi_is_cycle(complex_)
    w0 = bin(psi.vertex).count("1")
    tgt_offsets, _ = _weight_layout(complex_, w0)
    target_vec = psi.packed << tgt_offsets[psi.vertex]
    elim = Gf2Eliminator()
    if w0 > 0:
        for row in _block_rows(complex_, w0 - 1):
            elim.insert(row)
    survives = cycle and not elim.contains(target_vec)
    return PsiReport(cycle, survives)


def verdict(
    word: TwistWord, system: CurveSystem, complex_: CubeComplex | None = None
) -> Verdict:
    """Certified conclusion for the contact structure of an open book."""
    if complex_ is None:
        complex_ = build_e1(word, system)
    ranks = e2_graded_ranks(complex_)
    psi = psi_survives(complex_)
    order = h1_order(word, system)
    support = ranks.support()
    evidence = [
        f"total_rank={ranks.total}",
        "h1_order=" + ("infinite" if order is None else str(order)),
        f"psi_is_cycle={psi.is_cycle}",
        f"psi_survives={psi.survives}",
        f"support={support}",
    ]
    if order is not None and ranks.total == order and psi.survives:
        kind = TIGHT
        evidence.append(
            "rank equals |H1|, so the page collapses; the surviving class "
            "certifies tightness"
        )
    elif support and max(support) <= 0 and not psi.survives:
        kind = NOT_STRONGLY_FILLABLE
        evidence.append(
            "non-positive support and vanishing class certify that the "
            "contact structure is not strongly fillable"
        )
    elif not support and not psi.survives:
        kind = NOT_STRONGLY_FILLABLE
        evidence.append("the homology vanishes entirely")
    else:
        kind = INCONCLUSIVE
        if order is None:
            evidence.append("|H1| is infinite: the collapse test is unusable")
        elif ranks.total != order:
            evidence.append("rank differs from |H1|: no collapse certificate")
        elif not psi.survives and (not support or max(support) > 0):
            evidence.append(
                "class vanishes but homology is not supported in "
                "non-positive gradings"
            )
    return Verdict(kind, ranks, ranks.total, order, psi, support, evidence)


# ---------------------------------------------------------------------------
# staged cancellation of filtered complexes


@dataclass
class FilteredComplex:
    """Explicit GF(2) complex with a filtration grading on generators.

    ``diff[g]`` is the set of generators appearing in dg.  Marked elements
    (sets of generators) are carried through cancellations via the chain
    homotopy equivalences, so their images on later pages are meaningful.
    """

    grading: dict[str, int]
    diff: dict[str, set[str]]
    marked: dict[str, set[str]] = field(default_factory=dict)

    def copy(self) -> "FilteredComplex":
        return FilteredComplex(
            dict(self.grading),
            {g: set(t) for g, t in self.diff.items()},
            {k: set(v) for k, v in self.marked.items()},
        )

    def generators(self) -> list[str]:
        return sorted(self.grading)

    def dims_by_grading(self) -> dict[int, int]:
        dims: dict[int, int] = {}
        for g, d in self.grading.items():
            dims[d] = dims.get(d, 0) + 1
        return dict(sorted(dims.items()))

    def check(self) -> None:
        for g, targets in self.diff.items():
            image: set[str] = set()
            for t in sorted(targets):
                image ^= self.diff.get(t, set())
            if image:
                raise ValueError(f"d^2 != 0 at generator {g}")


def _cancel(cx: FilteredComplex, xk: str, xl: str) -> None:
    """Cancel the differential component xk -> xl in place.

    New differential: d'(x) = d(x) + d(x, xl) d(xk).  Marked vectors map
    through the projection, whose only correction sends xl to d(xk) - xl.
    """
    dxk = set(cx.diff.get(xk, set()))
    assert xl in dxk
    hitters = [g for g, t in cx.diff.items() if xl in t and g != xk]
    for g in hitters:
        cx.diff[g] ^= dxk
    for name, vec in cx.marked.items():
        if xl in vec:
            vec ^= dxk  # projection of xl: the rest of d(xk)
        vec.discard(xk)
        vec.discard(xl)
    for store in (cx.diff, cx.grading):
        store.pop(xk, None)
        store.pop(xl, None)
    for g in list(cx.diff):
        cx.diff[g].discard(xk)
        cx.diff[g].discard(xl)
        if not cx.diff[g]:
            del cx.diff[g]


@dataclass
class CancellationStage:
    page: int
    dims: dict[int, int]
    marked: dict[str, set[str]]


def staged_cancellation(
    cx: FilteredComplex, max_page: int | None = None
) -> list[CancellationStage]:
    """Cancel differential components stage by stage.

    Stage s removes all components shifting the filtration grading by
    exactly s; the complex after stage s is the page E^{s+1}.  Returns the
    recorded pages (starting with E^0, the input), with the images of the
    marked elements on each page.
    """
    cx = cx.copy()
    stages = [
        CancellationStage(0, cx.dims_by_grading(), {k: set(v) for k, v in cx.marked.items()})
    ]
    shift = 0
    while True:
        progress = True
        while progress:
            progress = False
            for g in sorted(cx.diff):
                tgt = next(
                    (
                        t
                        for t in sorted(cx.diff[g])
                        if cx.grading[t] - cx.grading[g] == shift
                    ),
                    None,
                )
                if tgt is not None:
                    _cancel(cx, g, tgt)
                    progress = True
                    break
        stages.append(
            CancellationStage(
                shift + 1,
                cx.dims_by_grading(),
                {k: set(v) for k, v in cx.marked.items()},
            )
        )
        if not cx.diff:
            break
        if max_page is not None and shift + 1 >= max_page:
            break
        shift += 1
    return stages


def cube_to_filtered(complex_: CubeComplex) -> FilteredComplex:
    """Export the cube as an explicit filtered complex (small words only)."""
    grading: dict[str, int] = {}
    diff: dict[str, set[str]] = {}

    def name(mask: int, mono: int) -> str:
        return f"v{mask}m{mono}"

    for mask, vdata in complex_.vertices.items():
        for mono in range(vdata.dim):
            grading[name(mask, mono)] = complex_.grading(mask)
    for mask, vdata in complex_.vertices.items():
        for mono in range(vdata.dim):
            targets: set[str] = set()
            for j in range(complex_.n):
                if (mask >> j) & 1 or (mask | (1 << j)) not in complex_.vertices:
                    continue
                edge = complex_.edge_map(mask, j)
                image = edge.apply_monomial(mono)
                t = mask | (1 << j)
                while image:
                    low = image & -image
                    targets ^= {name(t, low.bit_length() - 1)}
                    image ^= low
            if targets:
                diff[name(mask, mono)] = targets
    psi = psi_tilde(complex_)
    marked = {"psi": {name(psi.vertex, psi.packed.bit_length() - 1)}}
    return FilteredComplex(grading, diff, marked)


def euler_characteristic(dims: dict[int, int]) -> int:
    return sum((-1) ** d * r for d, r in dims.items())
