"""The cube of resolutions: exterior algebras at vertices, maps on edges.

Every complete resolution is a connected sum of l copies of S^1 x S^2, so
its homology sits on an exterior algebra over GF(2) on l tracked meridian
classes.  An edge flips one letter's surgery coefficient; the induced map
is determined by the class of the surgered knot K in the source manifold:

* K nullhomologous  -> injective map  x |-> i(x) ^ [K''],  where [K''] is
  the new class created by the surgery;
* K primitive       -> surjective map induced functorially by the quotient
  H_1 / [K].

For a right-handed letter the coefficient change adds the curve's pushoff
to the diagram (K is the pushoff itself); for a left-handed letter it
removes it (K is the pushoff's meridian).

Exterior-algebra elements are bit-packed: position s of the integer is the
monomial whose factors are the basis elements in the bit positions of s.
Wedging with a basis vector is then a masked shift, so functorial maps cost
O(l) big-integer operations per monomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .curves import CurveSystem
from .errors import TorsionEncountered
from .linalg import f2_cokernel, smith_normal_form
from .surgery import (
    FramedLinkMatrix,
    letter_included,
    master_matrix,
    vertex_mask_to_tuple,
    vertex_tuple_to_mask,
)
from .words import TwistWord

WEDGE = "WEDGE"
QUOTIENT = "QUOTIENT"

Label = tuple[str, int]


@lru_cache(maxsize=None)
def _wedge_masks(l: int) -> tuple[int, ...]:
    """For each basis index j: mask of monomials not containing j."""
    masks = []
    for j in range(l):
        m = 0
        for s in range(1 << l):
            if not (s >> j) & 1:
                m |= 1 << s
        masks.append(m)
    return tuple(masks)


def wedge_by_vector(packed: int, vector: int, l: int) -> int:
    """Multiply a packed exterior element by a degree-1 vector (bitmask)."""
    if packed == 0 or vector == 0:
        return 0
    masks = _wedge_masks(l)
    out = 0
    v = vector
    while v:
        low = v & -v
        j = low.bit_length() - 1
        out ^= (packed & masks[j]) << (1 << j)
        v ^= low
    return out


@dataclass(frozen=True)
class ExteriorClass:
    vertex: int  # internal bitmask
    packed: int  # coefficients over monomials of the vertex space

    def is_zero(self) -> bool:
        return self.packed == 0


@dataclass
class VertexData:
    """Tracked GF(2) homology of one complete resolution."""

    mask: int
    components: tuple[Label, ...]
    rank: int  # l: number of S^1 x S^2 factors
    basis: tuple[Label, ...]
    classes: dict[Label, int]  # meridian class per component, over basis bits

    @property
    def dim(self) -> int:
        return 1 << self.rank


@dataclass
class EdgeMap:
    """Realized edge of the cube, from ``source`` to ``source | 1 << letter``."""

    source: int
    target: int
    letter: int
    kind: str  # WEDGE or QUOTIENT
    basis_images: tuple[int, ...]  # image of each source basis class
    wedge_class: int  # 0 unless kind == WEDGE
    target_rank: int

    def apply_monomial(self, mono: int) -> int:
        """Packed image of one source basis monomial."""
        out = 1  # the empty monomial
        l = self.target_rank
        m = mono
        while m:
            low = m & -m
            out = wedge_by_vector(out, self.basis_images[low.bit_length() - 1], l)
            if not out:
                return 0
            m ^= low
        if self.kind == WEDGE:
            out = wedge_by_vector(out, self.wedge_class, l)
        return out

    def monomial_table(self, source_rank: int) -> list[int]:
        """Images of all 2^l source monomials, by subset dynamic programming.

        Each monomial's image is one wedge on top of a smaller monomial's,
        which is much cheaper than recomputing products from scratch.
        """
        masks = _wedge_masks(self.target_rank)
        images = self.basis_images
        tab = [0] * (1 << source_rank)
        tab[0] = 1
        for mono in range(1, 1 << source_rank):
            low = mono & -mono
            prev = tab[mono ^ low]
            if not prev:
                continue
            vec = images[low.bit_length() - 1]
            out = 0
            while vec:
                vlow = vec & -vec
                j = vlow.bit_length() - 1
                out ^= (prev & masks[j]) << (1 << j)
                vec ^= vlow
            tab[mono] = out
        if self.kind == WEDGE:
            wc = self.wedge_class
            l = self.target_rank
            tab = [wedge_by_vector(x, wc, l) if x else 0 for x in tab]
        return tab

    def apply(self, packed: int) -> int:
        out = 0
        p = packed
        while p:
            low = p & -p
            out ^= self.apply_monomial(low.bit_length() - 1)
            p ^= low
        return out

    def realized_matrix(self, source_rank: int) -> list[int]:
        """Column images of all 2^l source monomials (for invariant checks)."""
        return [self.apply_monomial(mono) for mono in range(1 << source_rank)]


class CubeComplex:
    """E^1 page of a twist word: vertex spaces and edge maps on demand.

    ``certify`` controls the per-vertex torsion check (Smith normal form);
    it is on by default and must stay on for curve systems outside the
    shipped family.
    """

    def __init__(
        self,
        word: TwistWord,
        system: CurveSystem,
        certify: bool = True,
        weights: set[int] | None = None,
    ):
        if system.surface != word.surface:
            raise ValueError("curve system does not match the word's surface")
        self.word = word
        self.system = system
        self.n = len(word)
        self.n_neg = word.n_neg
        self.certify = certify
        self._weights = weights
        self.master = master_matrix(word, system)
        self.m = word.surface.chain_length
        self.vertices: dict[int, VertexData] = {}
        self._edges: dict[tuple[int, int], EdgeMap] = {}
        for mask in range(1 << self.n):
            if weights is not None and bin(mask).count("1") not in weights:
                continue
            self.vertices[mask] = self._resolve_vertex(mask)

    # -- vertices ----------------------------------------------------------

    def _included_letters(self, mask: int) -> list[int]:
        return [
            j
            for j, let in enumerate(self.word.letters)
            if letter_included(let.sign, (mask >> j) & 1)
        ]

    def _submatrix(self, comps: list[int]) -> list[list[int]]:
        return [[self.master[a][b] for b in comps] for a in comps]

    def _resolve_vertex(self, mask: int) -> VertexData:
        kept = self._included_letters(mask)
        idx = list(range(self.m)) + [self.m + j for j in kept]
        labels: tuple[Label, ...] = tuple(
            ("base", i + 1) for i in range(self.m)
        ) + tuple(("letter", j) for j in kept)
        sub = self._submatrix(idx)
        size = len(idx)
        rows_f2 = []
        for row in sub:
            packed = 0
            for j, x in enumerate(row):
                if x % 2:
                    packed |= 1 << j
            rows_f2.append(packed)
        basis_cols, col_classes = f2_cokernel(rows_f2, size)
        if self.certify:
            diag, _, _ = smith_normal_form(sub)
            if any(d > 1 for d in diag):
                raise TorsionEncountered(
                    f"torsion at vertex {vertex_mask_to_tuple(mask, self.n)}"
                )
        basis = tuple(labels[c] for c in basis_cols)
        classes = {labels[i]: col_classes[i] for i in range(size)}
        return VertexData(mask, labels, len(basis_cols), basis, classes)

    def vertex(self, vertex: int | tuple[int, ...]) -> VertexData:
        if not isinstance(vertex, int):
            vertex = vertex_tuple_to_mask(vertex)
        return self.vertices[vertex]

    def grading(self, mask: int) -> int:
        return bin(mask).count("1") - self.n_neg

    def vertex_tuple(self, mask: int) -> tuple[int, ...]:
        return vertex_mask_to_tuple(mask, self.n)

    # -- edges -------------------------------------------------------------

    def edge_map(self, source: int | tuple[int, ...], letter_or_target=None) -> EdgeMap:
        """Edge from a vertex along one letter flip.

        Accepts ``(source_mask, letter)`` or two vertex tuples/masks that
        differ in one coordinate.
        """
        if not isinstance(source, int):
            source = vertex_tuple_to_mask(source)
        if isinstance(letter_or_target, tuple):
            target = vertex_tuple_to_mask(letter_or_target)
            diff = source ^ target
            if bin(diff).count("1") != 1 or not (target & diff):
                raise ValueError("target must be an immediate successor")
            letter = diff.bit_length() - 1
        else:
            letter = letter_or_target
            if (source >> letter) & 1:
                raise ValueError("letter already at coefficient 1")
        key = (source, letter)
        cached = self._edges.get(key)
        if cached is None:
            cached = self._build_edge(source, letter)
            self._edges[key] = cached
        return cached

    def _linking_class(self, j: int, vdata: VertexData) -> int:
        """Class of letter j's pushoff as a knot in the vertex manifold."""
        cls = 0
        for label in vdata.components:
            kind, idx = label
            col = idx - 1 if kind == "base" else self.m + idx
            if self.master[self.m + j][col] % 2:
                cls ^= vdata.classes[label]
        return cls

    def _build_edge(self, source: int, letter: int) -> EdgeMap:
        target = source | (1 << letter)
        src = self.vertices[source]
        tgt = self.vertices[target]
        sign = self.word.letters[letter].sign
        if sign == 1:
            # the flip adds the pushoff; K is the pushoff in the source
            k_class = self._linking_class(letter, src)
            if k_class == 0:
                kind = WEDGE
                wedge_cls = tgt.classes[("letter", letter)]
            else:
                kind = QUOTIENT
                wedge_cls = 0
            images = tuple(tgt.classes[c] for c in src.basis)
        else:
            # the flip removes the pushoff; K is its meridian in the source
            k_class = src.classes[("letter", letter)]
            if k_class == 0:
                kind = WEDGE
                wedge_cls = self._linking_class(letter, tgt)
            else:
                kind = QUOTIENT
                wedge_cls = 0
            images = tuple(
                0 if c == ("letter", letter) else tgt.classes[c] for c in src.basis
            )
        return EdgeMap(source, target, letter, kind, images, wedge_cls, tgt.rank)


def build_e1(
    word: TwistWord,
    system: CurveSystem,
    certify: bool = True,
    weights: set[int] | None = None,
) -> CubeComplex:
    """Assemble the first page for a twist word."""
    return CubeComplex(word, system, certify=certify, weights=weights)


def edge_map(complex_: CubeComplex, i, i_prime) -> EdgeMap:
    return complex_.edge_map(i, i_prime)


def psi_tilde(complex_: CubeComplex) -> ExteriorClass:
    """Top exterior class at the all-infinity vertex (grading 0)."""
    mask = 0
    for j, let in enumerate(complex_.word.letters):
        if let.sign == -1:
            mask |= 1 << j
    vdata = complex_.vertices[mask]
    top = (1 << vdata.rank) - 1
    return ExteriorClass(mask, 1 << top)


def psi_is_cycle(complex_: CubeComplex) -> bool:
    psi = psi_tilde(complex_)
    mask = psi.vertex
    for j in range(complex_.n):
        if (mask >> j) & 1:
            continue
        edge = complex_.edge_map(mask, j)
        if edge.apply(psi.packed):
            return False
    return True


def verify_d_squared(complex_: CubeComplex) -> bool:
    """Check that both edge paths around every 2-face agree."""
    n = complex_.n
    for mask in sorted(complex_.vertices):
        free = [j for j in range(n) if not (mask >> j) & 1]
        src_rank = complex_.vertices[mask].rank
        tables = {}
        for j in free:
            if mask | (1 << j) in complex_.vertices:
                tables[j] = complex_.edge_map(mask, j).monomial_table(src_rank)
        for a_pos in range(len(free)):
            for b_pos in range(a_pos + 1, len(free)):
                a, b = free[a_pos], free[b_pos]
                if a not in tables or b not in tables:
                    continue
                e2 = complex_.edge_map(mask | (1 << a), b)
                f2 = complex_.edge_map(mask | (1 << b), a)
                for mono in range(1 << src_rank):
                    if e2.apply(tables[a][mono]) != f2.apply(tables[b][mono]):
                        return False
    return True


def dump(complex_: CubeComplex) -> str:
    """Text dump of the cube: vertices with ranks, edges with kinds."""
    lines = []
    n = complex_.n
    for mask in sorted(complex_.vertices, key=lambda m: (bin(m).count("1"), m)):
        v = complex_.vertices[mask]
        lines.append(
            f"vertex {complex_.vertex_tuple(mask)} l={v.rank} "
            f"dim={v.dim} I={complex_.grading(mask)}"
        )
    for mask in sorted(complex_.vertices, key=lambda m: (bin(m).count("1"), m)):
        for j in range(n):
            if (mask >> j) & 1 or (mask | (1 << j)) not in complex_.vertices:
                continue
            e = complex_.edge_map(mask, j)
            lines.append(
                f"edge {complex_.vertex_tuple(mask)} -> "
                f"{complex_.vertex_tuple(e.target)} {e.kind.lower()}"
            )
    return "\n".join(lines)
