"""
Combinatorial calculus for circle-free movies of singular foliations on
the sphere, with the tree test for the positive-saddle graph, a move
calculus with exact inverses, a realization search producing replayable
certificates, and the page-norm arithmetic for abstract open books.

Everything public is re-exported here; the submodules group the same
names by topic (core, canonical, tightness, moves, generate,
realization, norms, formats, cli).
"""

from .canonical import canonical_form, is_isomorphic, normalize, rebuild
from .core import (
    NEGATIVE,
    POSITIVE,
    Arc,
    EllipticPoint,
    FoliationMovie,
    InternalCheckError,
    SaddleEvent,
    Slice,
    SliceEmbedding,
    ValidationError,
    ValidationReport,
    Violation,
    apply_event_to_state,
    char_sign,
    normalize_ranks,
    rebase,
    relabel,
    replay_states,
    require_valid,
    rethread,
    rotations,
    sign_char,
    singularity_counts,
    slice_at,
    slice_embedding_at,
    star,
    validate,
)
from .formats import (
    FolDocument,
    FolParseError,
    MovDocument,
    parse_fol,
    parse_mov,
    serialize_fol,
    serialize_mov,
    validate_document,
)
from .generate import GenerationError, random_movie, trivial_movie
from .moves import (
    Applicability,
    ChangeInFoliation,
    FingerMove,
    InverseFingerMove,
    Move,
    MoveError,
    MoveScript,
    SwapPi,
    applicable,
    apply,
    apply_script,
    inverse,
)
from .norms import (
    AbstractOpenBook,
    NormLedger,
    Page,
    boundary_connect_sum,
    euler_char,
    heegaard_genus_from_norm,
    norm,
    subadditivity_bound,
    surgery_ledger,
    tight_additivity,
)
from .realization import (
    RealizationDeadlockError,
    RealizationOpenCaseError,
    RealizationResult,
    base_movie,
    enumerate_movies,
    realize,
    verify_realization,
)
from .tightness import (
    OVERTWISTED,
    TIGHT,
    GppEdge,
    GppGraph,
    boundary_circles,
    build_gpp,
    dividing_circle_count,
    is_tree,
    planar_boundary_count,
    tightness_verdict,
)

__all__ = [
    "AbstractOpenBook",
    "Applicability",
    "Arc",
    "ChangeInFoliation",
    "EllipticPoint",
    "FingerMove",
    "FolDocument",
    "FolParseError",
    "FoliationMovie",
    "GenerationError",
    "GppEdge",
    "GppGraph",
    "InternalCheckError",
    "InverseFingerMove",
    "MovDocument",
    "Move",
    "MoveError",
    "MoveScript",
    "NEGATIVE",
    "NormLedger",
    "OVERTWISTED",
    "POSITIVE",
    "Page",
    "RealizationDeadlockError",
    "RealizationOpenCaseError",
    "RealizationResult",
    "SaddleEvent",
    "Slice",
    "SliceEmbedding",
    "SwapPi",
    "TIGHT",
    "ValidationError",
    "ValidationReport",
    "Violation",
    "applicable",
    "apply",
    "apply_event_to_state",
    "apply_script",
    "base_movie",
    "boundary_circles",
    "boundary_connect_sum",
    "build_gpp",
    "canonical_form",
    "char_sign",
    "dividing_circle_count",
    "enumerate_movies",
    "euler_char",
    "heegaard_genus_from_norm",
    "inverse",
    "is_isomorphic",
    "is_tree",
    "norm",
    "normalize",
    "normalize_ranks",
    "parse_fol",
    "parse_mov",
    "planar_boundary_count",
    "random_movie",
    "realize",
    "rebase",
    "rebuild",
    "relabel",
    "replay_states",
    "require_valid",
    "rethread",
    "rotations",
    "serialize_fol",
    "serialize_mov",
    "sign_char",
    "singularity_counts",
    "slice_at",
    "slice_embedding_at",
    "star",
    "subadditivity_bound",
    "surgery_ledger",
    "tight_additivity",
    "tightness_verdict",
    "trivial_movie",
    "validate",
    "validate_document",
    "verify_realization",
]
