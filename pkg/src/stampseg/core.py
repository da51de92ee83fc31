"""Domain types and conversions between partitions, labelings, and segments.

Conventions used throughout the package:

* Frames are 0-based indices over ``[0, T)``.
* ``UNKNOWN`` (-1) marks frames that carry no class label; downstream
  consumers are expected to ignore them.
* For ``N`` annotated frames ``p_0 < ... < p_{N-1}``, a partition assigns
  each annotated frame a labeled interval ``[p_i - left_i, p_i + right_i]``
  and fills the remaining frames with unknown gaps ``gaps_0 ... gaps_N``.
  The span sizes ("scales") tiled by each group are::

      gaps_0 + left_0                    = p_0
      right_i + gaps_{i+1} + left_{i+1}  = p_{i+1} - p_i - 1
      right_{N-1} + gaps_N               = T - 1 - p_{N-1}

  i.e. interior groups tile the frames strictly between two annotated
  frames, so a valid integer partition covers every frame exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    EmptyVideo,
    NonMonotoneTimestamps,
    PartitionMismatch,
    RowNotStochastic,
    StampsegError,
    TimestampOutOfRange,
)

UNKNOWN = -1

# Probability entries are floored here after loading so -log stays finite.
PROB_FLOOR = 1e-8

# Maximum tolerated deviation of a raw row sum from 1.
ROW_SUM_TOL = 1e-4


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class ProbMatrix:
    """T x C row-stochastic framewise class probabilities.

    Values are validated, floored at ``PROB_FLOOR`` and renormalized on
    construction; the stored array is read-only.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise RowNotStochastic(f"probability matrix must be 2-D, got shape {v.shape}")
        if v.shape[0] < 1:
            raise EmptyVideo("probability matrix has zero frames")
        if v.shape[1] < 2:
            raise RowNotStochastic(f"need at least 2 classes, got {v.shape[1]}")
        if not np.all(np.isfinite(v)):
            raise RowNotStochastic("probability matrix contains non-finite values")
        if v.min() < 0.0 or v.max() > 1.0:
            raise RowNotStochastic("probability entries must lie in [0, 1]")
        sums = v.sum(axis=1)
        bad = np.abs(sums - 1.0) > ROW_SUM_TOL
        if bad.any():
            row = int(np.argmax(bad))
            raise RowNotStochastic(f"row {row} sums to {sums[row]:.6g}, expected 1")
        v = np.maximum(v, PROB_FLOOR)
        v = v / v.sum(axis=1, keepdims=True)
        # Renormalization can push floored entries a few ulp below the floor.
        v = np.maximum(v, PROB_FLOOR)
        object.__setattr__(self, "values", _readonly(v))

    @property
    def num_frames(self) -> int:
        return self.values.shape[0]

    @property
    def num_classes(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class TimestampSet:
    """Annotated frames (strictly increasing) with their class labels."""

    frames: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        frames = np.atleast_1d(np.asarray(self.frames, dtype=np.int64))
        labels = np.atleast_1d(np.asarray(self.labels, dtype=np.int64))
        if frames.shape != labels.shape or frames.ndim != 1:
            raise StampsegError("frames and labels must be 1-D and equally long")
        if frames.size and frames.min() < 0:
            raise TimestampOutOfRange(f"negative frame index {frames.min()}")
        if frames.size and labels.min() < 0:
            raise StampsegError(f"negative class label {labels.min()}")
        if np.any(np.diff(frames) <= 0):
            raise NonMonotoneTimestamps(f"frames must be strictly increasing, got {frames.tolist()}")
        object.__setattr__(self, "frames", _readonly(frames))
        object.__setattr__(self, "labels", _readonly(labels))

    @classmethod
    def from_pairs(cls, pairs) -> "TimestampSet":
        """Build from an iterable of (frame, label) pairs."""
        pairs = list(pairs)
        frames = [f for f, _ in pairs]
        labels = [y for _, y in pairs]
        return cls(np.asarray(frames, dtype=np.int64), np.asarray(labels, dtype=np.int64))

    @property
    def num_stamps(self) -> int:
        return self.frames.size

    def pairs(self) -> list[tuple[int, int]]:
        return [(int(f), int(y)) for f, y in zip(self.frames, self.labels)]


@dataclass(frozen=True)
class SegmentPartition:
    """Per-timestamp boundary widths plus unknown-gap sizes.

    ``left``/``right`` have one entry per annotated frame, ``gaps`` has one
    more (head gap first, tail gap last). ``domain`` is ``"integer"`` for
    exact frame counts and ``"continuous"`` for relaxed real widths.
    """

    left: np.ndarray
    right: np.ndarray
    gaps: np.ndarray
    domain: str

    def __post_init__(self):
        if self.domain not in ("integer", "continuous"):
            raise StampsegError(f"unknown partition domain {self.domain!r}")
        dtype = np.int64 if self.domain == "integer" else np.float64
        left = np.atleast_1d(np.asarray(self.left, dtype=dtype))
        right = np.atleast_1d(np.asarray(self.right, dtype=dtype))
        gaps = np.atleast_1d(np.asarray(self.gaps, dtype=dtype))
        if left.shape != right.shape or gaps.size != left.size + 1:
            raise StampsegError(
                f"inconsistent partition sizes: {left.size} left, {right.size} right, {gaps.size} gaps"
            )
        object.__setattr__(self, "left", _readonly(left))
        object.__setattr__(self, "right", _readonly(right))
        object.__setattr__(self, "gaps", _readonly(gaps))

    @property
    def num_stamps(self) -> int:
        return self.left.size

    def total_gap(self) -> float:
        """Total number of unknown frames."""
        return self.gaps.sum()


@dataclass(frozen=True)
class FrameLabeling:
    """Per-frame class labels with UNKNOWN (-1) for unlabeled frames."""

    labels: np.ndarray

    def __post_init__(self):
        labels = np.atleast_1d(np.asarray(self.labels, dtype=np.int64))
        if labels.ndim != 1:
            raise StampsegError("labeling must be 1-D")
        if labels.size == 0:
            raise EmptyVideo("labeling has zero frames")
        if labels.min() < UNKNOWN:
            raise StampsegError(f"labels must be >= {UNKNOWN}, got {labels.min()}")
        object.__setattr__(self, "labels", _readonly(labels))

    @property
    def num_frames(self) -> int:
        return self.labels.size


@dataclass(frozen=True)
class VideoGroundTruth:
    """Dense per-frame ground-truth labels (no UNKNOWN entries)."""

    labels: np.ndarray

    def __post_init__(self):
        labels = np.atleast_1d(np.asarray(self.labels, dtype=np.int64))
        if labels.ndim != 1:
            raise StampsegError("ground truth must be 1-D")
        if labels.size == 0:
            raise EmptyVideo("ground truth has zero frames")
        if labels.min() < 0:
            raise StampsegError("ground truth may not contain UNKNOWN labels")
        object.__setattr__(self, "labels", _readonly(labels))

    @property
    def num_frames(self) -> int:
        return self.labels.size


@dataclass(frozen=True)
class Segment:
    """A maximal run of equal labels; ``end`` is inclusive."""

    label: int
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise StampsegError(f"segment start {self.start} after end {self.end}")

    @property
    def length(self) -> int:
        return self.end - self.start + 1


def validate_inputs(prob: ProbMatrix, stamps: TimestampSet) -> tuple[ProbMatrix, TimestampSet]:
    """Cross-check a probability matrix against a timestamp set.

    Both types validate their own invariants on construction; this adds the
    checks that need both: frames inside [0, T) and labels inside [0, C).
    Returns the pair unchanged on success.
    """
    if np.any(np.diff(stamps.frames) <= 0):
        raise NonMonotoneTimestamps("timestamp frames must be strictly increasing")
    if stamps.num_stamps:
        if stamps.frames[0] < 0 or stamps.frames[-1] >= prob.num_frames:
            raise TimestampOutOfRange(
                f"timestamp frame {int(stamps.frames[-1])} outside [0, {prob.num_frames})"
            )
        if stamps.labels.max() >= prob.num_classes:
            raise StampsegError(
                f"timestamp label {int(stamps.labels.max())} outside [0, {prob.num_classes})"
            )
    return prob, stamps


def gap_scales(stamps: TimestampSet, num_frames: int) -> np.ndarray:
    """Span size tiled by each gap group, head first and tail last.

    ``scales[0]`` counts the frames before the first annotated frame,
    ``scales[i]`` the frames strictly between annotated frames ``i-1`` and
    ``i``, and ``scales[N]`` the frames after the last one. For ``N == 0``
    the single entry is the whole video.
    """
    n = stamps.num_stamps
    if n == 0:
        return np.array([num_frames], dtype=np.int64)
    if stamps.frames[-1] >= num_frames:
        raise TimestampOutOfRange(
            f"timestamp frame {int(stamps.frames[-1])} outside [0, {num_frames})"
        )
    scales = np.empty(n + 1, dtype=np.int64)
    scales[0] = stamps.frames[0]
    scales[1:n] = np.diff(stamps.frames) - 1
    scales[n] = num_frames - 1 - stamps.frames[-1]
    return scales


def check_integer_partition(part: SegmentPartition, stamps: TimestampSet, num_frames: int) -> None:
    """Raise PartitionMismatch unless ``part`` tiles [0, num_frames) exactly."""
    if part.domain != "integer":
        raise PartitionMismatch(f"expected an integer partition, got {part.domain}")
    n = stamps.num_stamps
    if part.num_stamps != n:
        raise PartitionMismatch(f"partition has {part.num_stamps} stamps, timestamps have {n}")
    if (n and (part.left.min() < 0 or part.right.min() < 0)) or part.gaps.min() < 0:
        raise PartitionMismatch("widths and gaps must be non-negative")
    scales = gap_scales(stamps, num_frames)
    if n == 0:
        if part.gaps[0] != num_frames:
            raise PartitionMismatch(f"empty-annotation gap must equal {num_frames}, got {part.gaps[0]}")
        return
    spans = np.empty(n + 1, dtype=np.int64)
    spans[0] = part.gaps[0] + part.left[0]
    spans[1:n] = part.right[:-1] + part.gaps[1:n] + part.left[1:]
    spans[n] = part.right[-1] + part.gaps[n]
    if not np.array_equal(spans, scales):
        raise PartitionMismatch(f"group spans {spans.tolist()} do not tile scales {scales.tolist()}")


def partition_to_labeling(part: SegmentPartition, stamps: TimestampSet, num_frames: int) -> FrameLabeling:
    """Expand an integer partition into a dense labeling with UNKNOWN gaps."""
    check_integer_partition(part, stamps, num_frames)
    labels = np.full(num_frames, UNKNOWN, dtype=np.int64)
    for frame, label, l, r in zip(stamps.frames, stamps.labels, part.left, part.right):
        labels[frame - l : frame + r + 1] = label
    return FrameLabeling(labels)


def labeling_to_segments(lab: FrameLabeling) -> list[Segment]:
    """Maximal runs of equal labels, in temporal order."""
    labels = lab.labels
    boundaries = np.flatnonzero(np.diff(labels)) + 1
    starts = np.concatenate(([0], boundaries))
    ends = np.concatenate((boundaries - 1, [labels.size - 1]))
    return [Segment(int(labels[s]), int(s), int(e)) for s, e in zip(starts, ends)]


def segments_to_labeling(segments: list[Segment], num_frames: int) -> FrameLabeling:
    """Flatten segments back into a dense labeling (inverse of labeling_to_segments)."""
    labels = np.full(num_frames, UNKNOWN, dtype=np.int64)
    for seg in segments:
        labels[seg.start : seg.end + 1] = seg.label
    return FrameLabeling(labels)
