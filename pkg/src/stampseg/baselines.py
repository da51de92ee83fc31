"""Reference labelers to compare the boundary optimizer against.

All baselines emit a length-T labeling in which every annotated frame keeps
its annotated label; they differ in how the frames in between are treated.
"""

from __future__ import annotations

import numpy as np

from .core import UNKNOWN, FrameLabeling, TimestampSet, VideoGroundTruth, labeling_to_segments
from .errors import LabelMismatch, NoTimestamps, StampsegError, TimestampOutOfRange


def timestamps_only(stamps: TimestampSet, num_frames: int) -> FrameLabeling:
    """Label the annotated frames themselves; everything else UNKNOWN."""
    labels = np.full(num_frames, UNKNOWN, dtype=np.int64)
    if stamps.num_stamps and stamps.frames[-1] >= num_frames:
        raise TimestampOutOfRange(f"timestamp {int(stamps.frames[-1])} outside [0, {num_frames})")
    labels[stamps.frames] = stamps.labels
    return FrameLabeling(labels)


def uniform_k(stamps: TimestampSet, num_frames: int, k: int) -> FrameLabeling:
    """Split every inter-stamp span into k equal parts (k in {2, 3}).

    k=2 assigns each frame the label of its nearer stamp (the odd middle
    frame goes left); heads and tails take the nearest stamp's label
    entirely. k=3 labels the first and last thirds after the two stamps and
    leaves the middle third (plus any remainder) UNKNOWN; heads and tails
    get only their nearest third (rounded up) labeled.
    """
    if k not in (2, 3):
        raise StampsegError(f"k must be 2 or 3, got {k}")
    n = stamps.num_stamps
    if n == 0:
        raise NoTimestamps("uniform split needs at least one timestamp")
    if stamps.frames[-1] >= num_frames:
        raise TimestampOutOfRange(f"timestamp {int(stamps.frames[-1])} outside [0, {num_frames})")
    labels = np.full(num_frames, UNKNOWN, dtype=np.int64)
    labels[stamps.frames] = stamps.labels

    head = int(stamps.frames[0])
    tail = num_frames - 1 - int(stamps.frames[-1])
    if k == 2:
        labels[:head] = stamps.labels[0]
        labels[num_frames - tail :] = stamps.labels[-1]
    else:
        head_third = -(-head // 3)  # ceil
        tail_third = -(-tail // 3)
        labels[head - head_third : head] = stamps.labels[0]
        labels[stamps.frames[-1] + 1 : stamps.frames[-1] + 1 + tail_third] = stamps.labels[-1]

    for i in range(n - 1):
        lo = int(stamps.frames[i]) + 1
        hi = int(stamps.frames[i + 1])  # exclusive
        between = hi - lo
        if between == 0:
            continue
        if k == 2:
            split = lo + (between + 1) // 2
            labels[lo:split] = stamps.labels[i]
            labels[split:hi] = stamps.labels[i + 1]
        else:
            third = between // 3
            labels[lo : lo + third] = stamps.labels[i]
            labels[hi - third : hi] = stamps.labels[i + 1]
    return FrameLabeling(labels)


def gt_oracle(gt: VideoGroundTruth, stamps: TimestampSet) -> FrameLabeling:
    """Upper-bound labeler: copy each annotated frame's full ground-truth run.

    Runs without a timestamp stay UNKNOWN, so the output's labeled frames
    always match the ground truth exactly.
    """
    num_frames = gt.num_frames
    if stamps.num_stamps and stamps.frames[-1] >= num_frames:
        raise TimestampOutOfRange(f"timestamp {int(stamps.frames[-1])} outside [0, {num_frames})")
    labels = np.full(num_frames, UNKNOWN, dtype=np.int64)
    segments = labeling_to_segments(FrameLabeling(gt.labels))
    starts = np.array([seg.start for seg in segments])
    for frame, label in stamps.pairs():
        if gt.labels[frame] != label:
            raise LabelMismatch(
                f"timestamp at frame {frame} says class {label}, ground truth says {int(gt.labels[frame])}"
            )
        seg = segments[int(np.searchsorted(starts, frame, side="right")) - 1]
        labels[seg.start : seg.end + 1] = label
    return FrameLabeling(labels)
