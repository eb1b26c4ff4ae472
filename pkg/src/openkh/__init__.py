"""Reduced Khovanov homology of open books over GF(2).

The package models abstract open books (a surface with a word of signed
Dehn twists), builds the cube-of-resolutions complex of the associated
surgery presentation, computes the graded homology of its first
differential, follows the distinguished class living at the all-infinity
vertex, and emits certified verdicts about the compatible contact
structure.  An independent reduced Khovanov / Turner calculator for braid
closures cross-validates the engine and computes transverse-knot data
(self-linking numbers, the s-invariant, the transverse class).
"""

__version__ = "0.1.0"

from .braidkh import (
    BigradedRanks,
    CrossCheckReport,
    PlamenevskayaReport,
    ResolutionState,
    TurnerReport,
    cross_check,
    link_determinant,
    plamenevskaya,
    reduced_kh,
    resolve_state,
    self_linking,
    turner_s,
)
from .cube import (
    CubeComplex,
    EdgeMap,
    ExteriorClass,
    build_e1,
    dump,
    edge_map,
    psi_tilde,
    verify_d_squared,
)
from .curves import (
    CurveSystem,
    dumps_system,
    humphries_system,
    load_system,
    loads_system,
    parametrized_system,
    save_system,
)
from .errors import (
    CrossCheckMismatch,
    MalformedToken,
    NotAKnot,
    NotBraidLike,
    OpenKhError,
    TorsionEncountered,
    UnknownCurve,
)
from .homology import (
    FilteredComplex,
    GradedRanks,
    PsiReport,
    Verdict,
    cube_to_filtered,
    e2_graded_ranks,
    euler_characteristic,
    f2_rank,
    psi_survives,
    staged_cancellation,
    verdict,
)
from .linalg import smith_normal_form
from .surgery import (
    FramedLinkMatrix,
    ResolutionHomology,
    build_resolution_matrix,
    h1_f2,
    h1_order,
    homology_class_of,
    resolution_components,
)
from .words import (
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
