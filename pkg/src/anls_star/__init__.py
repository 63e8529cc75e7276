"""Tree similarity scoring for structured model outputs.

Compares a ground-truth tree of strings, nulls, one-of tuples, lists and
dicts against a predicted tree, normalizing by tree size so that partial
extractions, typos, missing structure and hallucinated structure all grade
smoothly between 0 and 1.
"""

from .errors import (
    AnlsStarError,
    DepthExceeded,
    DuplicateId,
    EmptyGroundTruth,
    EmptyTuple,
    MalformedInput,
    NonFiniteNumber,
    SinkWriteError,
    TupleInPrediction,
)
from .evaluation import (
    EvalReport,
    SampleResult,
    evaluate,
    evaluate_files,
    render_report,
    write_report,
)
from .matching import MatchAssignment, match_lists
from .metric import (
    ScoreBreakdown,
    ScorePair,
    anls_star,
    score,
    score_with_breakdown,
    tree_length,
)
from .similarity import SimilarityConfig, levenshtein_distance, nls, normalize_text
from .tree import (
    NONE,
    ONEOF_KEY,
    DictValue,
    DocumentSet,
    ListValue,
    NoneValue,
    Role,
    StringValue,
    TupleValue,
    ValueTree,
    canonical_scalar,
    load_document_set,
    parse_tree,
    tree_from_value,
    tree_to_value,
)

__version__ = "0.1.0"


def anls_star_values(ground_truth, prediction, config: SimilarityConfig | None = None) -> float:
    """Score two plain JSON-like values (dicts, lists, strings, numbers, None)."""
    g = tree_from_value(ground_truth, Role.GROUND_TRUTH)
    p = tree_from_value(prediction, Role.PREDICTION)
    return anls_star(g, p, config or SimilarityConfig())


__all__ = [
    "AnlsStarError",
    "DepthExceeded",
    "DictValue",
    "DocumentSet",
    "DuplicateId",
    "EmptyGroundTruth",
    "EmptyTuple",
    "EvalReport",
    "ListValue",
    "MalformedInput",
    "MatchAssignment",
    "NONE",
    "NoneValue",
    "NonFiniteNumber",
    "ONEOF_KEY",
    "Role",
    "SampleResult",
    "ScoreBreakdown",
    "ScorePair",
    "SimilarityConfig",
    "SinkWriteError",
    "StringValue",
    "TupleInPrediction",
    "TupleValue",
    "ValueTree",
    "anls_star",
    "anls_star_values",
    "canonical_scalar",
    "evaluate",
    "evaluate_files",
    "levenshtein_distance",
    "load_document_set",
    "match_lists",
    "nls",
    "normalize_text",
    "parse_tree",
    "render_report",
    "score",
    "score_with_breakdown",
    "tree_from_value",
    "tree_length",
    "tree_to_value",
    "write_report",
]
