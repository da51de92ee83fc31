"""Annotation simulators and a synthetic video generator.

Stands in for real datasets: synthesizes ground truth plus controllable
probability matrices, places one timestamp per action under several
strategies, and drops timestamps to emulate annotators missing actions.
All randomness flows through NumPy's PCG64 generator seeded explicitly, so
identical inputs and seeds reproduce byte-identical outputs everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (
    FrameLabeling,
    ProbMatrix,
    TimestampSet,
    VideoGroundTruth,
    labeling_to_segments,
    partition_to_labeling,
)
from .errors import StampsegError
from .metrics import evaluate
from .optimizer import OptimizerConfig, generate_labels
from .oracle import OracleLimits, brute_force_min


@dataclass(frozen=True)
class SynthSpec:
    """Recipe for one synthetic video.

    ``margin`` is the probability mass the matrix puts on the true class
    (the rest spread uniformly); ``boundary_blur`` frames on each side of a
    segment join are linearly cross-faded between the two pure rows.
    """

    num_segments: int
    min_length: int
    max_length: int
    num_classes: int
    margin: float
    boundary_blur: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.num_segments < 1:
            raise StampsegError("need at least one segment")
        if self.min_length < 1 or self.max_length < self.min_length:
            raise StampsegError(f"bad length range [{self.min_length}, {self.max_length}]")
        if self.num_classes < 2:
            raise StampsegError("need at least two classes")
        if not 1.0 / self.num_classes < self.margin <= 1.0:
            raise StampsegError(f"margin must be in (1/{self.num_classes}, 1], got {self.margin}")
        if self.boundary_blur < 0:
            raise StampsegError("boundary_blur must be >= 0")


def synth_video(spec: SynthSpec) -> tuple[VideoGroundTruth, ProbMatrix]:
    """Random segmentation plus a margin-peaked probability matrix."""
    rng = np.random.default_rng(spec.seed)
    lengths = rng.integers(spec.min_length, spec.max_length + 1, size=spec.num_segments)
    labels = np.empty(spec.num_segments, dtype=np.int64)
    labels[0] = rng.integers(spec.num_classes)
    for i in range(1, spec.num_segments):
        step = rng.integers(1, spec.num_classes)  # never 0, so neighbors differ
        labels[i] = (labels[i - 1] + step) % spec.num_classes
    gt = np.repeat(labels, lengths)
    num_frames = gt.size

    off = (1.0 - spec.margin) / (spec.num_classes - 1)
    values = np.full((num_frames, spec.num_classes), off)
    values[np.arange(num_frames), gt] = spec.margin

    blur = spec.boundary_blur
    if blur > 0 and spec.num_segments > 1:
        joins = np.cumsum(lengths)[:-1]  # first frame of each right segment
        pure = np.full((spec.num_classes, spec.num_classes), off)
        np.fill_diagonal(pure, spec.margin)
        for j, join in enumerate(joins):
            a, b = labels[j], labels[j + 1]
            lo = max(int(join) - blur, 0)
            hi = min(int(join) + blur, num_frames)
            for t in range(lo, hi):
                w = (t - (join - blur) + 0.5) / (2.0 * blur)
                values[t] = (1.0 - w) * pure[a] + w * pure[b]
    return VideoGroundTruth(gt), ProbMatrix(values)


def place_timestamps(gt: VideoGroundTruth, strategy: str, seed: int = 0) -> TimestampSet:
    """One timestamp per ground-truth run.

    Strategies: ``start`` (first frame), ``center`` (floor midpoint),
    ``uniform`` (uniform inside the run), ``gaussian`` (normal around the
    center with half the run length as standard deviation, rounded and
    clamped into the run).
    """
    if strategy not in ("start", "center", "uniform", "gaussian"):
        raise StampsegError(f"unknown placement strategy {strategy!r}")
    rng = np.random.default_rng(seed)
    frames = []
    labels = []
    for seg in labeling_to_segments(FrameLabeling(gt.labels)):
        if strategy == "start":
            frame = seg.start
        elif strategy == "center":
            frame = (seg.start + seg.end) // 2
        elif strategy == "uniform":
            frame = int(rng.integers(seg.start, seg.end + 1))
        else:
            draw = rng.normal((seg.start + seg.end) / 2.0, seg.length / 2.0)
            frame = int(np.clip(round(draw), seg.start, seg.end))
        frames.append(frame)
        labels.append(seg.label)
    return TimestampSet(np.array(frames, dtype=np.int64), np.array(labels, dtype=np.int64))


def stamp_confidence(stamps: TimestampSet, prob: ProbMatrix) -> np.ndarray:
    """Mean probability of each stamp's class over its surrounding span.

    A stamp's span runs from the midpoint with its previous neighbor to the
    midpoint with its next one (video edges for the outermost stamps).
    """
    n = stamps.num_stamps
    conf = np.empty(n)
    for i in range(n):
        lo = 0 if i == 0 else (int(stamps.frames[i - 1]) + int(stamps.frames[i])) // 2 + 1
        hi = prob.num_frames - 1 if i == n - 1 else (int(stamps.frames[i]) + int(stamps.frames[i + 1])) // 2
        conf[i] = prob.values[lo : hi + 1, stamps.labels[i]].mean()
    return conf


def drop_timestamps(
    full: TimestampSet,
    keep_fraction: float,
    seed: int = 0,
    weighting: str = "uniform",
    prob: ProbMatrix | None = None,
) -> TimestampSet:
    """Keep ceil(keep_fraction * N) timestamps, order preserved.

    ``uniform`` drops uniformly at random. ``confidence`` keeps stamps with
    probability proportional to their class confidence (see
    stamp_confidence), so poorly predicted actions are dropped more often;
    it requires ``prob``. Sampling without replacement is the sequential
    draw: pick one stamp at a time with weights renormalized over the
    remainder.
    """
    if not 0.0 <= keep_fraction <= 1.0:
        raise StampsegError(f"keep_fraction must be in [0, 1], got {keep_fraction}")
    if weighting not in ("uniform", "confidence"):
        raise StampsegError(f"unknown weighting {weighting!r}")
    n = full.num_stamps
    keep = int(np.ceil(keep_fraction * n))
    if keep >= n:
        return full
    rng = np.random.default_rng(seed)
    if weighting == "uniform":
        chosen = rng.choice(n, size=keep, replace=False)
    else:
        if prob is None:
            raise StampsegError("confidence weighting requires the probability matrix")
        weights = stamp_confidence(full, prob).copy()
        remaining = list(range(n))
        chosen = []
        for _ in range(keep):
            w = weights[remaining]
            pick = int(rng.choice(len(remaining), p=w / w.sum()))
            chosen.append(remaining.pop(pick))
        chosen = np.array(chosen, dtype=np.int64)
    chosen = np.sort(chosen)
    return TimestampSet(full.frames[chosen], full.labels[chosen])


@dataclass(frozen=True)
class SweepRow:
    """One beta setting's outcome: unknown-frame total plus the full report."""

    beta: float
    total_gap: int
    acc: float
    edit: float
    f1: dict[int, tuple[float, float, float]]
    labeled_precision: float
    coverage: float


def sweep_beta(
    prob: ProbMatrix,
    stamps: TimestampSet,
    gt: VideoGroundTruth,
    betas,
    cfg: OptimizerConfig | None = None,
    use_oracle: bool = False,
    oracle_limits: OracleLimits | None = None,
) -> list[SweepRow]:
    """Generate labels at each gap penalty in ``betas`` and score them.

    With ``use_oracle`` the exact brute-force minimizer replaces gradient
    descent (small instances only; ``oracle_limits`` loosens its guard).
    Rows come back in grid order.
    """
    betas = list(betas)
    if not betas:
        raise StampsegError("beta grid must be non-empty")
    base = cfg or OptimizerConfig()
    rows = []
    for beta in betas:
        run_cfg = replace(base, gap_penalty=float(beta))
        if use_oracle:
            part, _ = brute_force_min(prob, stamps, float(beta), oracle_limits)
            labeling = partition_to_labeling(part, stamps, prob.num_frames)
            total_gap = int(part.gaps.sum())
        else:
            labeling, trace = generate_labels(prob, stamps, run_cfg)
            total_gap = int(trace.final_integer.gaps.sum()) if trace else prob.num_frames
        report = evaluate(labeling, gt)
        rows.append(
            SweepRow(
                beta=float(beta),
                total_gap=total_gap,
                acc=report.acc,
                edit=report.edit,
                f1=report.f1,
                labeled_precision=report.labeled_precision,
                coverage=report.coverage,
            )
        )
    return rows
