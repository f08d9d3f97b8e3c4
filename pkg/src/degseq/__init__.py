"""Degree-sequence realizability with full, corner-reduced and conjugate criteria."""

from .criteria import (
    CheckMode,
    CriterionReport,
    Verdict,
    check,
    check_bigraphic,
    check_bipartite_multigraph,
    check_digraphic,
    check_graphic,
    check_imbalance,
    check_multigraphic,
    check_score_sequence,
    check_structured_bipartite,
    index_sets,
    skip_corner_filter,
    sufficient_shortcut,
)
from .errors import DegSeqError
from .genconj import ClassSpec, ClassTag, IntMatrix, StructureMask, class_conjugate, maximal_matrix
from .oracle import Budget, Witness, fulkerson_ryser_step, realize
from .seqcore import (
    backward_difference,
    concavity_class,
    conjugate,
    corners,
    density,
    majorization,
    weak_dominance,
)

__version__ = "0.1.0"

__all__ = [
    "Budget",
    "CheckMode",
    "ClassSpec",
    "ClassTag",
    "CriterionReport",
    "DegSeqError",
    "IntMatrix",
    "StructureMask",
    "Verdict",
    "Witness",
    "backward_difference",
    "check",
    "check_bigraphic",
    "check_bipartite_multigraph",
    "check_digraphic",
    "check_graphic",
    "check_imbalance",
    "check_multigraphic",
    "check_score_sequence",
    "check_structured_bipartite",
    "class_conjugate",
    "concavity_class",
    "conjugate",
    "corners",
    "density",
    "fulkerson_ryser_step",
    "index_sets",
    "majorization",
    "maximal_matrix",
    "realize",
    "skip_corner_filter",
    "sufficient_shortcut",
    "weak_dominance",
]
