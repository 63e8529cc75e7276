"""Optimal assignment between ground-truth and prediction lists.

The matcher maximizes the summed pairwise score over all injective
assignments that fully match the shorter side.  Scores are handled exactly:
float weights are converted to the rational they denote, so optima and ties
are decided without rounding error.

A scorer may also return a tuple of numbers.  Tuples are compared
lexicographically, which lets callers pin down which of several equally
good assignments wins by adding lower-priority components; the primary
component is always the score being maximized.  Among assignments that are
optimal under the full weight, the one whose (gt_index, pred_index) pair
sequence is lexicographically smallest is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

Weight = tuple


@dataclass(frozen=True)
class MatchAssignment:
    """Matched index pairs plus the leftover indices on each side."""

    pairs: tuple[tuple[int, int], ...]
    unmatched_gt: tuple[int, ...]
    unmatched_pred: tuple[int, ...]


def match_lists(gt: Sequence, pred: Sequence, scorer: Callable) -> MatchAssignment:
    """Match ``gt`` against ``pred`` maximizing the total pairwise score.

    ``scorer(g, p)`` is called once per index pair and must be pure; it
    returns a number in [0, 1] (or a weight tuple, see module docstring).
    Either list may be empty.  Exactly min(len(gt), len(pred)) pairs are
    returned, so the shorter side is always fully matched.
    """
    n, m = len(gt), len(pred)
    k = min(n, m)
    if k == 0:
        return MatchAssignment((), tuple(range(n)), tuple(range(m)))

    weights = [[_as_weight(scorer(gt[i], pred[j])) for j in range(m)] for i in range(n)]
    dim = len(weights[0][0])
    for row in weights:
        for w in row:
            if len(w) != dim:
                raise ValueError("scorer returned weights of inconsistent dimension")
    zero = (Fraction(0),) * dim

    cur, tight = _solve_full(weights, n, m, zero)
    best_total = zero
    for i, j in cur.items():
        best_total = _vadd(best_total, weights[i][j])

    # Fix pairs gt-index by gt-index, always taking the smallest prediction
    # index that still completes to an optimal assignment.  Only pairs with
    # zero reduced cost against the optimal duals can appear in an optimal
    # assignment (complementary slackness), so all others are skipped
    # without solving the completion.
    pairs: list[tuple[int, int]] = []
    used_cols: set[int] = set()
    fixed_total = zero
    for i in range(n):
        if len(pairs) == k:
            break
        j_cur = cur.get(i)
        probe_upto = m if j_cur is None else j_cur
        chosen = None
        for j in range(probe_upto):
            if j in used_cols or not tight(i, j):
                continue
            rows_rest = list(range(i + 1, n))
            cols_rest = [c for c in range(m) if c not in used_cols and c != j]
            need = k - len(pairs) - 1
            if min(len(rows_rest), len(cols_rest)) != need:
                continue
            sub_total, sub_asg = _solve(weights, rows_rest, cols_rest, zero)
            total = _vadd(_vadd(fixed_total, weights[i][j]), sub_total)
            if total == best_total:
                chosen = j
                cur = {**dict(pairs), i: j, **sub_asg}
                break
        if chosen is None:
            chosen = j_cur
        if chosen is not None:
            pairs.append((i, chosen))
            used_cols.add(chosen)
            fixed_total = _vadd(fixed_total, weights[i][chosen])

    matched_rows = {i for i, _ in pairs}
    return MatchAssignment(
        tuple(pairs),
        tuple(i for i in range(n) if i not in matched_rows),
        tuple(j for j in range(m) if j not in used_cols),
    )


def _as_weight(value) -> Weight:
    components = value if isinstance(value, tuple) else (value,)
    out = []
    for c in components:
        if isinstance(c, bool):
            raise TypeError("scorer weights must be numbers, got a bool")
        if isinstance(c, float):
            out.append(Fraction(c))
        elif isinstance(c, (int, Fraction)):
            out.append(c)
        else:
            raise TypeError(f"scorer weights must be int, float or Fraction, got {type(c).__name__}")
    return tuple(out)


def _vadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def _solve_full(weights, n: int, m: int, zero: Weight):
    """Solve the whole matrix; returns (assignment, tightness predicate)."""
    if n <= m:
        cost = [[tuple(-x for x in weights[i][j]) for j in range(m)] for i in range(n)]
        local, u, v = _jv_min(cost, n, m, zero)
        assignment = dict(local.items())

        def tight(i: int, j: int) -> bool:
            return cost[i][j] == _vadd(u[i + 1], v[j + 1])

    else:
        cost = [[tuple(-x for x in weights[i][j]) for i in range(n)] for j in range(m)]
        local, u, v = _jv_min(cost, m, n, zero)
        assignment = {i: j for j, i in local.items()}

        def tight(i: int, j: int) -> bool:
            return cost[j][i] == _vadd(u[j + 1], v[i + 1])

    return assignment, tight


def _solve(weights, rows: list[int], cols: list[int], zero: Weight):
    """Best total weight and one maximizing assignment on a sub-matrix.

    Returns (total, {row_index: col_index}) over the original indices; the
    shorter of ``rows``/``cols`` is fully matched.
    """
    if not rows or not cols:
        return zero, {}
    if len(rows) <= len(cols):
        cost = [[tuple(-x for x in weights[r][c]) for c in cols] for r in rows]
        local, _, _ = _jv_min(cost, len(rows), len(cols), zero)
        assignment = {rows[i]: cols[j] for i, j in local.items()}
    else:
        cost = [[tuple(-x for x in weights[r][c]) for r in rows] for c in cols]
        local, _, _ = _jv_min(cost, len(cols), len(rows), zero)
        assignment = {rows[i]: cols[j] for j, i in local.items()}
    total = zero
    for r in sorted(assignment):
        total = _vadd(total, weights[r][assignment[r]])
    return total, assignment


def _jv_min(cost, n: int, m: int, zero: Weight):
    """Min-cost complete assignment of ``n`` rows to ``m`` >= n columns.

    Shortest-augmenting-path formulation with row/column potentials
    (Jonker-Volgenant style); works for arbitrary totally ordered additive
    weights, here tuples of exact rationals.  1-based internally; returns a
    0-based {row: col} map plus the final potentials, which form an optimal
    dual solution (reduced costs are non-negative and matched pairs tight).
    """
    u = [zero] * (n + 1)
    v = [zero] * (m + 1)
    p = [0] * (m + 1)  # p[j]: row currently assigned to column j (0 = free)
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv: list[Weight | None] = [None] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta: Weight | None = None
            j1 = 0
            for j in range(1, m + 1):
                if used[j]:
                    continue
                cur = _vsub(_vsub(cost[i0 - 1][j - 1], u[i0]), v[j])
                if minv[j] is None or cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if delta is None or minv[j] < delta:  # type: ignore[operator]
                    delta = minv[j]
                    j1 = j
            assert delta is not None
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] = _vadd(u[p[j]], delta)
                    v[j] = _vsub(v[j], delta)
                elif minv[j] is not None:
                    minv[j] = _vsub(minv[j], delta)
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    assignment = {p[j] - 1: j - 1 for j in range(1, m + 1) if p[j] > 0}
    return assignment, u, v
