"""Exact minimization of the discrete labeling cost by exhaustive search.

Because the cost separates over gap groups, each group's split is
enumerated independently against prefix sums of the per-stamp frame costs;
the work is quadratic in the span sizes rather than exponential. A guard
on the size of the equivalent naive enumeration keeps the oracle inside
its intended debugging scale.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ProbMatrix, SegmentPartition, TimestampSet, gap_scales, validate_inputs
from .errors import InstanceTooLarge, NoTimestamps
from .objective import discrete_objective


@dataclass(frozen=True)
class OracleLimits:
    """Size guard: maximum number of states the naive enumeration would visit."""

    max_states: float = 1e8


def _state_count(scales: np.ndarray) -> float:
    """Number of distinct integer partitions (product over gap groups)."""
    total = float(scales[0] + 1)
    for s in scales[1:-1]:
        total *= (s + 1) * (s + 2) / 2.0
        if total > 1e30:
            return total
    total *= float(scales[-1] + 1)
    return total


def brute_force_min(
    prob: ProbMatrix,
    stamps: TimestampSet,
    gap_penalty: float,
    limits: OracleLimits | None = None,
) -> tuple[SegmentPartition, float]:
    """Globally minimal integer partition and its exact cost.

    Ties are broken toward the lexicographically smallest flattened tuple
    (gap_0, left_0, right_0, gap_1, left_1, ...), which the per-group
    enumeration order realizes directly. The returned value is recomputed
    with discrete_objective so it matches that function bit for bit.
    """
    limits = limits or OracleLimits()
    prob, stamps = validate_inputs(prob, stamps)
    n = stamps.num_stamps
    if n == 0:
        raise NoTimestamps("the oracle needs at least one timestamp")
    scales = gap_scales(stamps, prob.num_frames)
    states = _state_count(scales)
    if states > limits.max_states:
        raise InstanceTooLarge(f"{states:.3g} partitions exceed the limit of {limits.max_states:.3g}")

    logp = -np.log(prob.values)
    # extend_right[i][r] = cost of labeling the r frames after stamp i;
    # extend_left analogous. Index 0 is the empty extension.
    extend_right = []
    extend_left = []
    for i in range(n):
        p = int(stamps.frames[i])
        col = logp[:, stamps.labels[i]]
        after = col[p + 1 : p + 1 + int(scales[i + 1])]
        before = col[max(p - int(scales[i]), 0) : p][::-1]
        extend_right.append(np.concatenate(([0.0], np.cumsum(after))))
        extend_left.append(np.concatenate(([0.0], np.cumsum(before))))

    left = np.zeros(n, dtype=np.int64)
    right = np.zeros(n, dtype=np.int64)
    gaps = np.zeros(n + 1, dtype=np.int64)

    # Head: gap ascending, labeled width is the remainder.
    head_scale = int(scales[0])
    g = np.arange(head_scale + 1)
    costs = gap_penalty * g + extend_left[0][head_scale - g]
    gaps[0] = int(np.argmin(costs))
    left[0] = head_scale - gaps[0]

    # Interior groups: right width ascending, then gap ascending.
    for i in range(n - 1):
        scale = int(scales[i + 1])
        best = (np.inf, 0, 0)
        for r in range(scale + 1):
            g = np.arange(scale - r + 1)
            costs = extend_right[i][r] + gap_penalty * g + extend_left[i + 1][scale - r - g]
            j = int(np.argmin(costs))
            if costs[j] < best[0]:
                best = (float(costs[j]), r, j)
        right[i] = best[1]
        gaps[i + 1] = best[2]
        left[i + 1] = scale - best[1] - best[2]

    # Tail: right width ascending.
    tail_scale = int(scales[n])
    r = np.arange(tail_scale + 1)
    costs = extend_right[n - 1][r] + gap_penalty * (tail_scale - r)
    right[n - 1] = int(np.argmin(costs))
    gaps[n] = tail_scale - right[n - 1]

    part = SegmentPartition(left, right, gaps, "integer")
    return part, discrete_objective(prob, stamps, part, gap_penalty)
