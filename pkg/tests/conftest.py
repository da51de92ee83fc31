"""Shared helpers: random instance generators and independent reference
implementations (pure-Python loops) used as oracles against the vectorized
library code."""

from __future__ import annotations

import math

import numpy as np

import stampseg as ss


def random_instance(seed, max_frames=120, max_classes=8, max_stamps=6):
    """Random probability matrix + strictly increasing stamps."""
    rng = np.random.default_rng(seed)
    num_frames = int(rng.integers(4, max_frames + 1))
    num_classes = int(rng.integers(2, max_classes + 1))
    num_stamps = int(rng.integers(1, min(max_stamps, num_frames) + 1))
    frames = np.sort(rng.choice(num_frames, size=num_stamps, replace=False))
    labels = rng.integers(0, num_classes, size=num_stamps)
    raw = rng.random((num_frames, num_classes)) + 1e-3
    prob = ss.ProbMatrix(raw / raw.sum(axis=1, keepdims=True))
    return prob, ss.TimestampSet(frames, labels)


def random_integer_partition(rng, stamps, num_frames):
    """Uniformly random valid integer partition for (stamps, num_frames)."""
    scales = ss.gap_scales(stamps, num_frames)
    n = stamps.num_stamps
    left = np.zeros(n, dtype=np.int64)
    right = np.zeros(n, dtype=np.int64)
    gaps = np.zeros(n + 1, dtype=np.int64)
    if n == 0:
        gaps[0] = num_frames
        return ss.SegmentPartition(left, right, gaps, "integer")
    left[0] = rng.integers(0, scales[0] + 1)
    gaps[0] = scales[0] - left[0]
    for i in range(n - 1):
        r = rng.integers(0, scales[i + 1] + 1)
        l = rng.integers(0, scales[i + 1] - r + 1)
        right[i] = r
        left[i + 1] = l
        gaps[i + 1] = scales[i + 1] - r - l
    right[-1] = rng.integers(0, scales[n] + 1)
    gaps[n] = scales[n] - right[-1]
    return ss.SegmentPartition(left, right, gaps, "integer")


def loop_discrete_objective(prob, stamps, part, beta):
    """Frame-by-frame reference for discrete_objective."""
    total = beta * sum(int(g) for g in part.gaps)
    for (frame, label), l, r in zip(stamps.pairs(), part.left, part.right):
        for t in range(frame - int(l), frame + int(r) + 1):
            total += -math.log(prob.values[t, label])
    return total


def loop_continuous_objective(prob, stamps, part, beta, sharpness):
    """Scalar-math reference for continuous_objective."""

    def f(t, c, w):
        return 1.0 / (
            (math.exp(min(sharpness * (t - c - w), 700)) + 1.0)
            * (math.exp(min(sharpness * (-t + c - w), 700)) + 1.0)
        )

    total = 0.0
    num_frames = prob.num_frames
    for i, (frame, label) in enumerate(stamps.pairs()):
        c = frame + (part.right[i] - part.left[i]) / 2.0
        w = (part.right[i] + part.left[i]) / 2.0
        for t in range(num_frames):
            total += -math.log(prob.values[t, label]) * f(t, c, w)
    for t in range(num_frames):
        cover = 0.0
        for i, (frame, _) in enumerate(stamps.pairs()):
            c = frame + (part.right[i] - part.left[i]) / 2.0
            w = (part.right[i] + part.left[i]) / 2.0
            cover += f(t, c, w)
        total += beta * (1.0 - cover)
    return total


def central_difference_gradient(prob, stamps, theta, beta, sharpness, step=1e-4):
    """Finite-difference gradient of the relaxed objective in logit space."""
    n = stamps.num_stamps
    fd = np.zeros_like(theta)
    for j in range(theta.size):
        hi = theta.copy()
        hi[j] += step
        lo = theta.copy()
        lo[j] -= step
        f_hi = ss.continuous_objective(
            prob, stamps, ss.reparameterize(ss.FreeParams.from_vector(hi, n), stamps, prob.num_frames),
            beta, sharpness,
        )
        f_lo = ss.continuous_objective(
            prob, stamps, ss.reparameterize(ss.FreeParams.from_vector(lo, n), stamps, prob.num_frames),
            beta, sharpness,
        )
        fd[j] = (f_hi - f_lo) / (2.0 * step)
    return fd


def enumerate_partitions(stamps, num_frames):
    """Yield every valid integer partition in lexicographic
    (gap_0, left_0, right_0, gap_1, left_1, ...) order."""
    scales = ss.gap_scales(stamps, num_frames)
    n = stamps.num_stamps

    def heads():
        for g in range(scales[0] + 1):
            yield g, scales[0] - g

    def interiors(scale):
        for r in range(scale + 1):
            for g in range(scale - r + 1):
                yield r, g, scale - r - g

    def tails():
        for r in range(scales[n] + 1):
            yield r, scales[n] - r

    def rec(i, left, right, gaps):
        if i == n - 1:
            for r, g in tails():
                yield left, right + [r], gaps + [g]
            return
        for r, g, l in interiors(scales[i + 1]):
            yield from rec(i + 1, left + [l], right + [r], gaps + [g])

    for g0, l0 in heads():
        yield from rec(0, [l0], [], [g0])


def naive_brute_force(prob, stamps, beta):
    """Full enumeration (independent of the library's decomposed oracle)."""
    best_val, best_part = None, None
    for left, right, gaps in enumerate_partitions(stamps, prob.num_frames):
        part = ss.SegmentPartition(left, right, gaps, "integer")
        val = loop_discrete_objective(prob, stamps, part, beta)
        if best_val is None or val < best_val:
            best_val, best_part = val, part
    return best_part, best_val


def fast_naive_brute_force(prob, stamps, beta):
    """Full cross-product enumeration with direct-slice cost tables.

    Still visits every partition explicitly (in the same lexicographic
    order), but looks extension costs up in tables built by direct slice
    sums, so instances with a few thousand states stay fast. The total cost
    of a partition is base stamp cost + per-stamp extension costs + the
    penalty on gap frames.
    """
    scales = ss.gap_scales(stamps, prob.num_frames)
    n = stamps.num_stamps
    left_cost, right_cost, base = [], [], 0.0
    for i, (frame, label) in enumerate(stamps.pairs()):
        col = prob.values[:, label]
        base += -math.log(col[frame])
        left_cost.append(
            [float(-np.sum(np.log(col[frame - l : frame]))) for l in range(scales[i] + 1)]
        )
        right_cost.append(
            [float(-np.sum(np.log(col[frame + 1 : frame + 1 + r]))) for r in range(scales[i + 1] + 1)]
        )

    best_val, best = None, None
    for left, right, gaps in enumerate_partitions(stamps, prob.num_frames):
        val = base + beta * sum(gaps)
        for i in range(n):
            val += left_cost[i][left[i]] + right_cost[i][right[i]]
        if best_val is None or val < best_val:
            best_val = val
            best = ss.SegmentPartition(list(left), list(right), list(gaps), "integer")
    return best, best_val
