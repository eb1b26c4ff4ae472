"""Framed-link presentations of complete resolutions and their homology.

A complete resolution keeps the letters whose surgery coefficient becomes 0
and erases the rest.  Its diagram has one 0-framed component per base handle
and one per kept letter; H_1 of the surgered manifold is the cokernel of the
linking matrix.  For the shipped curve systems every resolution is a
connected sum of S^1 x S^2 factors, so the cokernel is free; this is
certified through the Smith normal form and a violation raises
:class:`TorsionEncountered`.

Vertices of the cube are passed around internally as bitmasks with bit j
(little-endian) attached to letter j in word order.  Printed vertex tuples
list the coordinates in the reverse order, so that the tuple's first entry
belongs to the last-performed twist; this matches the usual way the small
worked examples are tabulated.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curves import CurveSystem
from .errors import TorsionEncountered
from .linalg import bareiss_det, f2_cokernel, int_rank, smith_normal_form
from .words import TwistWord

NULL = "NULL"
PRIMITIVE = "PRIMITIVE"


def vertex_tuple_to_mask(vertex: tuple[int, ...]) -> int:
    """Printed tuple (last-performed letter first) -> internal bitmask."""
    n = len(vertex)
    mask = 0
    for pos, bit in enumerate(vertex):
        if bit:
            mask |= 1 << (n - 1 - pos)
    return mask


def vertex_mask_to_tuple(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> (n - 1 - pos)) & 1 for pos in range(n))


def _as_mask(word: TwistWord, vertex: tuple[int, ...] | int) -> int:
    if isinstance(vertex, int):
        return vertex
    if len(vertex) != len(word):
        raise ValueError("vertex length does not match word length")
    return vertex_tuple_to_mask(vertex)


def letter_included(sign: int, bit: int) -> bool:
    """Does this letter contribute a 0-framed component at this vertex?

    A letter keeps its component exactly when the resolution replaces its
    surgery with a 0-surgery: right-handed twists at bit 1, left-handed at
    bit 0.  Otherwise the coefficient is infinity and the component is gone.
    """
    return bit == 1 if sign == 1 else bit == 0


def resolution_components(word: TwistWord, vertex: tuple[int, ...] | int) -> set[int]:
    """0-based positions of the letters kept at this vertex."""
    mask = _as_mask(word, vertex)
    return {
        j
        for j, let in enumerate(word.letters)
        if letter_included(let.sign, (mask >> j) & 1)
    }


@dataclass(frozen=True)
class FramedLinkMatrix:
    """Symmetric linking matrix with framings on the diagonal.

    Component labels: ``("base", i)`` for the base handles (1-based) and
    ``("letter", j)`` for kept letters (0-based word position).
    """

    labels: tuple[tuple[str, int], ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise ValueError("matrix shape does not match labels")

    @property
    def size(self) -> int:
        return len(self.labels)

    def index(self, label: tuple[str, int]) -> int:
        return self.labels.index(label)

    def with_meridian_of(self, label: tuple[str, int]) -> "FramedLinkMatrix":
        """Append a 0-framed meridian of one component."""
        i = self.index(label)
        n = self.size
        new_rows = [list(r) + [1 if j == i else 0] for j, r in enumerate(self.rows)]
        new_rows.append([1 if j == i else 0 for j in range(n)] + [0])
        return FramedLinkMatrix(
            self.labels + (("meridian", i),),
            tuple(tuple(r) for r in new_rows),
        )


def master_matrix(word: TwistWord, system: CurveSystem) -> list[list[int]]:
    """Linking matrix over all base components and all letters (framings 0)."""
    if system.surface != word.surface:
        raise ValueError("curve system does not match the word's surface")
    m = word.surface.chain_length
    n = len(word)
    size = m + n
    mat = [[0] * size for _ in range(size)]
    for i in range(m):
        for j in range(m):
            mat[i][j] = system.base_links[i][j]
    for j, let in enumerate(word.letters):
        system.check_curve(let.curve)
        vec = system.base_linking[let.curve]
        for i in range(m):
            mat[i][m + j] = mat[m + j][i] = vec[i]
    for j in range(n):
        mat[m + j][m + j] = system.framing(word.letters[j].curve)
        for jp in range(j + 1, n):
            lk = system.pushoff(word.letters[j].curve, word.letters[jp].curve)
            mat[m + j][m + jp] = mat[m + jp][m + j] = lk
    return mat


def build_resolution_matrix(
    word: TwistWord, system: CurveSystem, vertex: tuple[int, ...] | int
) -> FramedLinkMatrix:
    """Framed-link matrix of the complete resolution at a vertex."""
    mask = _as_mask(word, vertex)
    master = master_matrix(word, system)
    m = word.surface.chain_length
    kept = sorted(resolution_components(word, mask))
    idx = list(range(m)) + [m + j for j in kept]
    labels = tuple(("base", i + 1) for i in range(m)) + tuple(
        ("letter", j) for j in kept
    )
    rows = tuple(tuple(master[a][b] for b in idx) for a in idx)
    return FramedLinkMatrix(labels, rows)


@dataclass
class ResolutionHomology:
    """H_1 of one complete resolution over GF(2), with a tracked basis.

    ``basis`` lists the component labels whose meridians generate the
    cokernel; ``classes[label]`` is the class of that component's meridian,
    bit-packed over basis positions.
    """

    matrix: FramedLinkMatrix
    rank: int
    basis: tuple[tuple[str, int], ...]
    classes: dict[tuple[str, int], int]
    torsion_free: bool

    def meridian_class(self, label: tuple[str, int]) -> int:
        return self.classes[label]

    def knot_class(self, linking: dict[tuple[str, int], int]) -> int:
        """Class of an external knot given its linking numbers (mod 2)."""
        cls = 0
        for label, lk in linking.items():
            if lk % 2:
                cls ^= self.classes[label]
        return cls

    @staticmethod
    def classify(cls: int) -> str:
        return PRIMITIVE if cls else NULL


def h1_f2(matrix: FramedLinkMatrix, certify: bool = True) -> ResolutionHomology:
    """GF(2) cokernel of a resolution matrix, with torsion certification."""
    n = matrix.size
    rows_f2 = []
    for row in matrix.rows:
        packed = 0
        for j, x in enumerate(row):
            if x % 2:
                packed |= 1 << j
        rows_f2.append(packed)
    basis_cols, col_classes = f2_cokernel(rows_f2, n)
    torsion_free = True
    if certify:
        diag, _, _ = smith_normal_form([list(r) for r in matrix.rows])
        if any(d > 1 for d in diag):
            raise TorsionEncountered(
                f"resolution has torsion (Smith entries {sorted(set(diag))})"
            )
    rank = len(basis_cols)
    basis = tuple(matrix.labels[c] for c in basis_cols)
    classes = {matrix.labels[j]: col_classes[j] for j in range(n)}
    return ResolutionHomology(matrix, rank, basis, classes, torsion_free)


def homology_class_of(
    item: tuple[str, int] | dict[tuple[str, int], int],
    homology: ResolutionHomology,
) -> tuple[int, str]:
    """Class (and NULL/PRIMITIVE kind) of a meridian or an external knot.

    Pass a component label for its meridian's class, or a dict of linking
    numbers for the class of a knot not in the diagram.
    """
    if isinstance(item, dict):
        cls = homology.knot_class(item)
    else:
        cls = homology.meridian_class(item)
    return cls, ResolutionHomology.classify(cls)


def h1_order(word: TwistWord, system: CurveSystem) -> int | None:
    """|H_1| of the open book's manifold, or None when infinite.

    The full surgery matrix is the master linking matrix with the twist
    signs on the letter diagonal; the order is |det|.
    """
    master = master_matrix(word, system)
    m = word.surface.chain_length
    for j, let in enumerate(word.letters):
        master[m + j][m + j] += let.sign
    det = bareiss_det(master)
    return abs(det) if det else None


def resolution_h1_rank_z(matrix: FramedLinkMatrix) -> int:
    """Rank of H_1 over the rationals (components minus matrix rank)."""
    return matrix.size - int_rank([list(r) for r in matrix.rows])
