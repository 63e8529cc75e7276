"""Normalized Levenshtein similarity with the ANLS threshold.

Similarities are computed exactly as rationals so that downstream
aggregation is order-independent and bit-reproducible; :func:`nls` converts
to float at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class SimilarityConfig:
    """Knobs for string comparison.

    tau is the similarity cutoff: raw similarities below it score 0.
    The defaults reproduce the published example scores.
    """

    tau: float = 0.5
    case_fold: bool = True
    trim: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must lie in [0, 1], got {self.tau}")

    def tau_exact(self) -> Fraction:
        return Fraction(self.tau)


DEFAULT_CONFIG = SimilarityConfig()


def levenshtein_distance(a: str, b: str) -> int:
    """Minimum number of single-character edits turning ``a`` into ``b``.

    Insertions, deletions and substitutions each count 1; strings are
    compared as sequences of Unicode code points.
    """
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    current = [0] * (len(b) + 1)
    for i, ch_a in enumerate(a, start=1):
        current[0] = i
        for j, ch_b in enumerate(b, start=1):
            cost = 0 if ch_a == ch_b else 1
            current[j] = min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost)
        previous, current = current, previous
    return previous[len(b)]


def normalize_text(a: str, config: SimilarityConfig = DEFAULT_CONFIG) -> str:
    """Apply the configured trimming and case folding; never touches inner whitespace."""
    if config.trim:
        a = a.strip()
    if config.case_fold:
        a = a.lower()
    return a


def nls_exact(g: str, p: str, config: SimilarityConfig = DEFAULT_CONFIG) -> Fraction:
    """Thresholded normalized Levenshtein similarity as an exact rational."""
    g_norm = normalize_text(g, config)
    p_norm = normalize_text(p, config)
    if not g_norm and not p_norm:
        return _ONE
    raw = _ONE - Fraction(levenshtein_distance(g_norm, p_norm), max(len(g_norm), len(p_norm)))
    return raw if raw >= config.tau_exact() else _ZERO


def nls(g: str, p: str, config: SimilarityConfig = DEFAULT_CONFIG) -> float:
    """Thresholded normalized Levenshtein similarity in [0, 1]."""
    return float(nls_exact(g, p, config))
