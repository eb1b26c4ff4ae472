"""Reduced Khovanov and Turner homology of braid closures over GF(2).

This module is a self-contained cube-of-resolutions calculator for closed
braids.  It never looks at the open-book engine (except for the link
determinant, which is defined through the branched double cover), so it
serves as an independent cross-check for that engine on braid-like words.

Conventions.  State bit j chooses the resolution of crossing j; for a
positive crossing the 0-resolution is the oriented one, for a negative
crossing the roles are swapped.  A basepoint sits on strand 1 below the
first crossing.  The reduced complex is realized as the subcomplex in which
the circle through the basepoint is labeled v- in every state; quantum
gradings carry the +1 shift of the reduced theory, so the unknot lands in
bigrading (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import CrossCheckMismatch, NotAKnot
from .linalg import Gf2Eliminator
from .words import BraidWord, TwistWord, braid_to_openbook, openbook_to_braid


@dataclass(frozen=True)
class ResolutionState:
    """Circle decomposition of one complete resolution of the closure.

    ``circle_of`` maps each arc (level * strands + strand) to its circle id;
    ids are dense and ordered by each circle's smallest arc.
    """

    vertex: tuple[int, ...]
    strands: int
    circle_of: tuple[int, ...]
    count: int
    marked: int  # id of the circle through the basepoint

    @property
    def circles(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        by_circle: dict[int, list[tuple[int, int]]] = {}
        m = self.strands
        for arc, c in enumerate(self.circle_of):
            by_circle.setdefault(c, []).append((arc // m, arc % m))
        return tuple(tuple(sorted(by_circle[c])) for c in range(self.count))


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def resolve_state(braid: BraidWord, vertex: tuple[int, ...] | int) -> ResolutionState:
    """Trace the circles of the closure with crossing j resolved by bit j."""
    n = len(braid)
    if isinstance(vertex, int):
        bits = tuple((vertex >> j) & 1 for j in range(n))
    else:
        bits = tuple(vertex)
    if len(bits) != n:
        raise ValueError("state length does not match crossing count")
    m = braid.strands
    levels = max(n, 1)
    parent = list(range(levels * m))

    def node(level: int, strand: int) -> int:
        return (level % levels) * m + strand

    def union(x: int, y: int) -> None:
        rx, ry = _find(parent, x), _find(parent, y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for j, ((gen, sign), bit) in enumerate(zip(braid.letters, bits)):
        lo, hi = j, j + 1
        capcup = (bit == 1) if sign == 1 else (bit == 0)
        for s in range(m):
            if s in (gen - 1, gen):
                continue
            union(node(lo, s), node(hi, s))
        if capcup:
            union(node(lo, gen - 1), node(lo, gen))
            union(node(hi, gen - 1), node(hi, gen))
        else:
            union(node(lo, gen - 1), node(hi, gen - 1))
            union(node(lo, gen), node(hi, gen))

    roots: dict[int, int] = {}
    circle_of = []
    for arc in range(levels * m):
        root = _find(parent, arc)
        if root not in roots:
            roots[root] = len(roots)
        circle_of.append(roots[root])
    marked = roots[_find(parent, 0)]
    return ResolutionState(bits, m, tuple(circle_of), len(roots), marked)


@dataclass
class BigradedRanks:
    """Ranks of a bigraded GF(2) vector space, keyed by (i, q)."""

    ranks: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.ranks.values())

    def by_homological(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for (i, _q), r in self.ranks.items():
            out[i] = out.get(i, 0) + r
        return {i: r for i, r in sorted(out.items()) if r}

    def polynomial(self) -> str:
        terms = []
        for (i, q), r in sorted(self.ranks.items()):
            if not r:
                continue
            coeff = "" if r == 1 else str(r)
            terms.append(f"{coeff}t^{i} q^{q}")
        return " + ".join(terms) if terms else "0"


@dataclass
class TurnerReport:
    rank: int
    components: int
    filtration_level: int | None
    s: int | None


@dataclass
class PlamenevskayaReport:
    bigrading: tuple[int, int]
    is_cycle: bool
    survives: bool


class _BraidCube:
    """Shared scaffolding for the Khovanov and Turner complexes."""

    def __init__(self, braid: BraidWord):
        self.braid = braid
        self.n = len(braid)
        self.n_pos = braid.n_pos
        self.n_neg = braid.n_neg
        self.states = [resolve_state(braid, mask) for mask in range(1 << self.n)]
        self.by_weight: list[list[int]] = [[] for _ in range(self.n + 1)]
        for mask in range(1 << self.n):
            self.by_weight[bin(mask).count("1")].append(mask)
        # column offsets local to each weight level
        self.level_offset: dict[int, int] = {}
        self.level_total: list[int] = []
        for w, masks in enumerate(self.by_weight):
            total = 0
            for mask in masks:
                self.level_offset[mask] = total
                total += 1 << (self.states[mask].count - 1)
            self.level_total.append(total)

    def free_circles(self, st: ResolutionState) -> list[int]:
        return [c for c in range(st.count) if c != st.marked]

    def gen_q(self, mask: int, labels: int, circles: int) -> int:
        pos = bin(labels).count("1")
        deg = 2 * pos - circles
        return deg + bin(mask).count("1") + self.n_pos - 2 * self.n_neg + 1

    def hom_grading(self, mask: int) -> int:
        return bin(mask).count("1") - self.n_neg

    def edge_images(self, mask: int, j: int, turner: bool):
        """Images of all generators of state ``mask`` along the crossing-j flip.

        Yields ``(labels, images)`` where labels are packed over the source
        state's free circles and images is a list of packed target labels.
        """
        src = self.states[mask]
        dst = self.states[mask | (1 << j)]
        src_to_dst = [-1] * src.count
        for arc, c in enumerate(src.circle_of):
            src_to_dst[c] = dst.circle_of[arc]
        src_free = self.free_circles(src)
        dst_free = self.free_circles(dst)
        dst_pos = {c: p for p, c in enumerate(dst_free)}

        if src.count == dst.count + 1:
            # merge: exactly one target circle has two sources
            sources_of: dict[int, list[int]] = {}
            for c, t in enumerate(src_to_dst):
                sources_of.setdefault(t, []).append(c)
            merged_t, pair = next(
                (t, cs) for t, cs in sources_of.items() if len(cs) == 2
            )
            for bits in range(1 << len(src_free)):
                labels = {c: (bits >> p) & 1 for p, c in enumerate(src_free)}
                labels[src.marked] = 0
                u, w = (labels[c] for c in pair)
                if u and w:
                    prod = [1]
                elif u or w:
                    prod = [0]
                else:
                    prod = [0] if turner else []
                images = []
                for val in prod:
                    if merged_t == dst.marked and val:
                        continue  # would leave the v- subcomplex
                    out = 0
                    for c in range(src.count):
                        if c in pair:
                            continue
                        t = src_to_dst[c]
                        if t != dst.marked and labels[c]:
                            out |= 1 << dst_pos[t]
                    if merged_t != dst.marked and val:
                        out |= 1 << dst_pos[merged_t]
                    images.append(out)
                yield bits, images
        elif src.count == dst.count - 1:
            # split: exactly one source circle has two targets
            src_of_dst = [-1] * dst.count
            for arc, t in enumerate(dst.circle_of):
                src_of_dst[t] = src.circle_of[arc]
            counts: dict[int, int] = {}
            for c in src_of_dst:
                counts[c] = counts.get(c, 0) + 1
            split_src = next(c for c, k in counts.items() if k == 2)
            children = [t for t in range(dst.count) if src_of_dst[t] == split_src]
            for bits in range(1 << len(src_free)):
                labels = {c: (bits >> p) & 1 for p, c in enumerate(src_free)}
                labels[src.marked] = 0
                if labels[split_src]:
                    pairs = [(1, 0), (0, 1)] + ([(1, 1)] if turner else [])
                else:
                    pairs = [(0, 0)]
                images = []
                for pa, pb in pairs:
                    child_val = {children[0]: pa, children[1]: pb}
                    out = 0
                    skip = False
                    for t in range(dst.count):
                        lab = child_val.get(t, labels[src_of_dst[t]])
                        if t == dst.marked:
                            if lab:
                                skip = True
                                break
                            continue
                        if lab:
                            out |= 1 << dst_pos[t]
                    if not skip:
                        images.append(out)
                yield bits, images
        else:
            raise AssertionError("a resolution change must merge or split circles")

    def differential_rows(
        self, weight: int, turner: bool
    ) -> dict[tuple[int, int], int]:
        """Rows of the differential out of one weight level.

        Keyed by (source mask, source labels); values are bit-packed over
        the column layout of the next weight level only, which keeps row
        lengths proportional to one level instead of the whole cube.
        """
        rows: dict[tuple[int, int], int] = {}
        for mask in self.by_weight[weight]:
            for j in range(self.n):
                if (mask >> j) & 1:
                    continue
                tgt_off = self.level_offset[mask | (1 << j)]
                for labels, images in self.edge_images(mask, j, turner):
                    if not images:
                        continue
                    row = 0
                    for im in images:
                        row ^= 1 << (tgt_off + im)
                    key = (mask, labels)
                    rows[key] = rows.get(key, 0) ^ row
        return rows


def _khovanov_bigraded(cube: _BraidCube) -> dict[tuple[int, int], int]:
    """Homology ranks per (homological, quantum) bigrading.

    The Khovanov differential preserves q and raises the weight by one, so
    each (weight, q) block eliminates independently.
    """
    dims: dict[tuple[int, int], int] = {}
    for w, masks in enumerate(cube.by_weight):
        for mask in masks:
            st = cube.states[mask]
            i = cube.hom_grading(mask)
            for labels in range(1 << (st.count - 1)):
                key = (i, cube.gen_q(mask, labels, st.count))
                dims[key] = dims.get(key, 0) + 1

    ranks_out: dict[tuple[int, int], int] = {}
    ranks_in: dict[tuple[int, int], int] = {}
    for weight in range(cube.n + 1):
        rows = cube.differential_rows(weight, turner=False)
        by_q: dict[int, Gf2Eliminator] = {}
        for (mask, labels), row in sorted(rows.items()):
            q = cube.gen_q(mask, labels, cube.states[mask].count)
            by_q.setdefault(q, Gf2Eliminator()).insert(row)
        i = weight - cube.n_neg
        for q, elim in by_q.items():
            ranks_out[(i, q)] = ranks_out.get((i, q), 0) + elim.rank
            ranks_in[(i + 1, q)] = ranks_in.get((i + 1, q), 0) + elim.rank
    result: dict[tuple[int, int], int] = {}
    for key, dim in dims.items():
        r = dim - ranks_out.get(key, 0) - ranks_in.get(key, 0)
        if r:
            result[key] = r
    return result


def _turner_total_ranks(cube: _BraidCube) -> dict[int, int]:
    """Turner homology ranks per homological grading (q is only filtered)."""
    dims: dict[int, int] = {}
    for w, masks in enumerate(cube.by_weight):
        dims[w - cube.n_neg] = cube.level_total[w]
    ranks: dict[int, int] = {}
    for weight in range(cube.n + 1):
        rows = cube.differential_rows(weight, turner=True)
        elim = Gf2Eliminator()
        for _key, row in sorted(rows.items()):
            elim.insert(row)
        ranks[weight] = elim.rank
    result: dict[int, int] = {}
    for i, dim in dims.items():
        w = i + cube.n_neg
        r = dim - ranks.get(w, 0) - ranks.get(w - 1, 0)
        if r:
            result[i] = r
    return result


def reduced_kh(braid: BraidWord) -> BigradedRanks:
    """Bigraded ranks of the reduced Khovanov homology of the closure."""
    return BigradedRanks(_khovanov_bigraded(_BraidCube(braid)))


def self_linking(braid: BraidWord) -> int:
    """Self-linking number of the transverse closure: writhe minus strands."""
    return braid.writhe - braid.strands


def oriented_state_mask(braid: BraidWord) -> int:
    mask = 0
    for j, (_idx, sign) in enumerate(braid.letters):
        if sign == -1:
            mask |= 1 << j
    return mask


def plamenevskaya(braid: BraidWord) -> PlamenevskayaReport:
    """Transverse-invariant class: all circles v- at the oriented resolution."""
    cube = _BraidCube(braid)
    o_mask = oriented_state_mask(braid)
    o_weight = bin(o_mask).count("1")
    st = cube.states[o_mask]
    psi_labels = 0
    q = cube.gen_q(o_mask, psi_labels, st.count)

    out_rows = cube.differential_rows(o_weight, turner=False)
    is_cycle = out_rows.get((o_mask, psi_labels), 0) == 0

    elim = Gf2Eliminator()
    if o_weight > 0:
        for _key, row in sorted(cube.differential_rows(o_weight - 1, False).items()):
            elim.insert(row)
    target = 1 << (cube.level_offset[o_mask] + psi_labels)
    survives = is_cycle and not elim.contains(target)
    return PlamenevskayaReport((cube.hom_grading(o_mask), q), is_cycle, survives)


def _turner_generator_sweep(cube: _BraidCube) -> tuple[int, int]:
    """Filtration level of the generator of reduced Turner homology (knots).

    Returns ``(level, rank at homological grading 0)``; the level is the
    largest q0 such that the generating class has a representative supported
    in quantum gradings >= q0.
    """
    o_weight = cube.n_neg
    rows_out = cube.differential_rows(o_weight, turner=True)
    rows_in = (
        cube.differential_rows(o_weight - 1, turner=True) if o_weight else {}
    )

    grading0 = [
        (mask, labels)
        for mask in cube.by_weight[o_weight]
        for labels in range(1 << (cube.states[mask].count - 1))
    ]
    col_of = {g: cube.level_offset[g[0]] + g[1] for g in grading0}
    q_of = {g: cube.gen_q(g[0], g[1], cube.states[g[0]].count) for g in grading0}

    # kernel basis of d'' at grading 0, tracking source combinations
    pivots: dict[int, tuple[int, int]] = {}
    kernel_reps: list[int] = []
    for g in grading0:
        src_vec = 1 << col_of[g]
        img = rows_out.get(g, 0)
        while img:
            p = img.bit_length() - 1
            if p not in pivots:
                break
            pimg, psrc = pivots[p]
            img ^= pimg
            src_vec ^= psrc
        if img:
            pivots[img.bit_length() - 1] = (img, src_vec)
        else:
            kernel_reps.append(src_vec)

    boundary_elim = Gf2Eliminator(rows_in.values())
    hom_rank = len(kernel_reps) - boundary_elim.rank
    gen_class = next(
        (rep for rep in kernel_reps if not boundary_elim.contains(rep)), None
    )
    if gen_class is None:
        raise AssertionError("reduced Turner homology of a knot must have rank 1")

    qs = sorted({q_of[g] for g in grading0})
    best = qs[0]
    for q0 in qs[1:]:
        low_mask = 0
        for g in grading0:
            if q_of[g] < q0:
                low_mask |= 1 << col_of[g]
        elim = Gf2Eliminator(row & low_mask for row in rows_in.values())
        if elim.contains(gen_class & low_mask):
            best = q0
        else:
            break
    return best, hom_rank


def turner_s(braid: BraidWord) -> TurnerReport:
    """Reduced Turner homology rank; for knots also the s-invariant."""
    comps = braid.components()
    cube = _BraidCube(braid)
    total = sum(_turner_total_ranks(cube).values())
    if comps != 1:
        return TurnerReport(total, comps, None, None)
    level, hom_rank = _turner_generator_sweep(cube)
    if total != 1 or hom_rank != 1:
        raise AssertionError(
            f"reduced Turner homology of a knot should have rank 1, got {total}"
        )
    return TurnerReport(total, comps, level, level)


def require_knot(braid: BraidWord) -> None:
    if braid.components() != 1:
        raise NotAKnot(f"closure has {braid.components()} components")


def link_determinant(braid: BraidWord) -> int:
    """|H_1| of the branched double cover of the closure; 0 means infinite."""
    from .curves import humphries_system
    from .surgery import h1_order

    word = braid_to_openbook(braid)
    order = h1_order(word, humphries_system(word.surface))
    return 0 if order is None else order


@dataclass
class CrossCheckReport:
    word: str
    braid: str
    engine_ranks: dict[int, int]
    oracle_ranks: dict[int, int]
    engine_psi: bool
    oracle_psi: bool

    @property
    def agree(self) -> bool:
        return (
            self.engine_ranks == self.oracle_ranks
            and self.engine_psi == self.oracle_psi
        )


def cross_check(word: TwistWord) -> CrossCheckReport:
    """Compare the open-book engine against this oracle on a braid-like word."""
    from .cube import build_e1
    from .curves import humphries_system
    from .homology import e2_graded_ranks, psi_survives

    braid = openbook_to_braid(word)
    complex_ = build_e1(word, humphries_system(word.surface))
    engine = e2_graded_ranks(complex_)
    psi = psi_survives(complex_)
    oracle = reduced_kh(braid)
    report = CrossCheckReport(
        str(word),
        str(braid),
        engine.nonzero(),
        oracle.by_homological(),
        psi.survives,
        plamenevskaya(braid).survives,
    )
    if not report.agree:
        raise CrossCheckMismatch(
            f"engine {report.engine_ranks} / psi={report.engine_psi} vs "
            f"oracle {report.oracle_ranks} / psi={report.oracle_psi} "
            f"on {report.word}"
        )
    return report
