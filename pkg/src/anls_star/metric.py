"""The recursive tree similarity score.

A comparison of two trees yields a pair (s, l): the accumulated similarity
and the accumulated size.  The final score is s/l, so every leaf carries
the same weight no matter how deeply it is nested.  Missing structure and
hallucinated structure are penalized symmetrically through the size term.

All accumulation is exact (rationals), which makes the result independent
of dict key order and list element order, and bit-reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DepthExceeded
from .matching import match_lists
from .similarity import DEFAULT_CONFIG, SimilarityConfig, nls_exact
from .tree import DictValue, ListValue, NoneValue, StringValue, TupleValue, ValueTree

DEFAULT_MAX_DEPTH = 128

# breakdown key used when the compared trees are not both dicts
ROOT_KEY = "$"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class ScorePair:
    """Accumulated similarity ``s`` and size ``l`` of a (sub)tree comparison."""

    s: Fraction
    l: int

    @property
    def ratio(self) -> Fraction:
        """s/l, defined as 1 when there was nothing to compare (l = 0)."""
        return _ONE if self.l == 0 else self.s / self.l


@dataclass(frozen=True)
class ScoreBreakdown:
    total: float
    per_key: dict[str, ScorePair]


def tree_length(x: ValueTree) -> int:
    """Leaf count of a tree: the size a missing or hallucinated subtree costs.

    None and strings count 1; lists and dicts sum their children; a tuple
    counts as its largest alternative.  Dict entries holding None are
    invisible, matching how they are ignored during scoring.
    """
    if isinstance(x, (NoneValue, StringValue)):
        return 1
    if isinstance(x, TupleValue):
        return max(tree_length(alt) for alt in x.alternatives)
    if isinstance(x, ListValue):
        return sum(tree_length(item) for item in x.elements)
    if isinstance(x, DictValue):
        return sum(
            tree_length(value)
            for value in x.entries.values()
            if not isinstance(value, NoneValue)
        )
    raise TypeError(f"not a ValueTree: {x!r}")


def score(
    g: ValueTree,
    p: ValueTree,
    config: SimilarityConfig = DEFAULT_CONFIG,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ScorePair:
    """Compare ground truth ``g`` against prediction ``p`` recursively."""
    _check_depth(g, max_depth)
    _check_depth(p, max_depth)
    return _score(g, p, config)


def anls_star(
    g: ValueTree,
    p: ValueTree,
    config: SimilarityConfig = DEFAULT_CONFIG,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> float:
    """Normalized tree similarity in [0, 1]; 1.0 when both trees are empty."""
    return float(score(g, p, config, max_depth=max_depth).ratio)


def score_with_breakdown(
    g: ValueTree,
    p: ValueTree,
    config: SimilarityConfig = DEFAULT_CONFIG,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
) -> ScoreBreakdown:
    """Like :func:`anls_star` but keeps the per-key contributions.

    When both trees are dicts, every top-level key (visible on either side)
    maps to the (s, l) it contributed; the contributions sum to the root
    pair.  Otherwise the breakdown holds a single entry under ``"$"``.
    """
    _check_depth(g, max_depth)
    _check_depth(p, max_depth)
    if isinstance(g, DictValue) and isinstance(p, DictValue):
        pair, per_key = _score_dicts(g, p, config)
    else:
        pair = _score(g, p, config)
        per_key = {ROOT_KEY: pair}
    return ScoreBreakdown(total=float(pair.ratio), per_key=per_key)


def _check_depth(tree: ValueTree, max_depth: int) -> None:
    # Iterative so that over-deep inputs fail with DepthExceeded instead of
    # exhausting the interpreter stack.
    stack: list[tuple[ValueTree, int]] = [(tree, 1)]
    while stack:
        node, depth = stack.pop()
        if depth > max_depth:
            raise DepthExceeded(f"tree nesting exceeds the configured limit of {max_depth}")
        if isinstance(node, TupleValue):
            children = node.alternatives
        elif isinstance(node, ListValue):
            children = node.elements
        elif isinstance(node, DictValue):
            children = tuple(node.entries.values())
        else:
            continue
        stack.extend((child, depth + 1) for child in children)


def _score(g: ValueTree, p: ValueTree, config: SimilarityConfig) -> ScorePair:
    if isinstance(g, NoneValue) and isinstance(p, NoneValue):
        return ScorePair(_ONE, 1)
    if isinstance(g, StringValue) and isinstance(p, StringValue):
        return ScorePair(nls_exact(g.text, p.text, config), 1)
    if isinstance(g, TupleValue):
        return _best_alternative(g.alternatives, p, config)
    if isinstance(g, ListValue) and isinstance(p, ListValue):
        return _score_lists(g, p, config)
    if isinstance(g, DictValue) and isinstance(p, DictValue):
        pair, _ = _score_dicts(g, p, config)
        return pair
    if isinstance(g, ListValue) and isinstance(p, StringValue) and g.elements:
        # A bare string answered against a ground-truth list is accepted if
        # it matches any element ("one of" cast); an empty list offers no
        # alternatives and falls through to the mismatch case.
        return _best_alternative(g.elements, p, config)
    return ScorePair(_ZERO, max(tree_length(g), tree_length(p)))


def _best_alternative(
    alternatives: tuple[ValueTree, ...],
    p: ValueTree,
    config: SimilarityConfig,
) -> ScorePair:
    # Highest ratio wins; equal ratios prefer higher s, then smaller l, so
    # the winning pair does not depend on how the alternatives are ordered.
    best_pair: ScorePair | None = None
    best_key = None
    for alt in alternatives:
        pair = _score(alt, p, config)
        key = (pair.ratio, pair.s, -pair.l)
        if best_key is None or key > best_key:
            best_key = key
            best_pair = pair
    assert best_pair is not None
    return best_pair


def _score_lists(g: ListValue, p: ListValue, config: SimilarityConfig) -> ScorePair:
    g_sizes = [tree_length(item) for item in g.elements]
    p_sizes = [tree_length(item) for item in p.elements]
    cache: dict[tuple[int, int], ScorePair] = {}

    def scorer(i: int, j: int):
        pair = cache.get((i, j))
        if pair is None:
            pair = _score(g.elements[i], p.elements[j], config)
            cache[(i, j)] = pair
        # Primary weight: the pairwise score.  The tie-breaking components
        # (higher s, then smaller combined length) pin the (s, l) outcome of
        # equally good assignments, keeping the result order-independent.
        return (pair.ratio, pair.s, g_sizes[i] + p_sizes[j] - pair.l)

    assignment = match_lists(range(len(g.elements)), range(len(p.elements)), scorer)
    s = _ZERO
    l = 0
    for i, j in assignment.pairs:
        pair = cache[(i, j)]
        s += pair.s
        l += pair.l
    l += sum(g_sizes[i] for i in assignment.unmatched_gt)
    l += sum(p_sizes[j] for j in assignment.unmatched_pred)
    return ScorePair(s, l)


def _score_dicts(
    g: DictValue, p: DictValue, config: SimilarityConfig
) -> tuple[ScorePair, dict[str, ScorePair]]:
    # Keys holding None are invisible: they neither score nor penalize.
    g_keys = {k for k, v in g.entries.items() if not isinstance(v, NoneValue)}
    p_keys = {k for k, v in p.entries.items() if not isinstance(v, NoneValue)}
    per_key: dict[str, ScorePair] = {}
    s = _ZERO
    l = 0
    for key in sorted(g_keys | p_keys):
        if key in g_keys and key in p_keys:
            pair = _score(g.entries[key], p.entries[key], config)
        elif key in g_keys:
            pair = ScorePair(_ZERO, tree_length(g.entries[key]))
        else:
            pair = ScorePair(_ZERO, tree_length(p.entries[key]))
        per_key[key] = pair
        s += pair.s
        l += pair.l
    return ScorePair(s, l), per_key
