"""Segmentation metrics: framewise accuracy, segmental edit score, F1 at
IoU thresholds, and label-quality diagnostics for labelings with UNKNOWN.

Conventions (documented because the classic metrics assume dense
predictions): UNKNOWN frames count as wrong for framewise accuracy, and
UNKNOWN segments are dropped from the predicted segment sequence before
edit and F1 are computed. labeled_precision/coverage quantify the
labelings themselves: accuracy over the frames a labeling dares to label,
and how many frames that is.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import UNKNOWN, FrameLabeling, VideoGroundTruth, labeling_to_segments
from .errors import LengthMismatch, StampsegError


@dataclass(frozen=True)
class MetricsReport:
    """All scores in percent; f1 maps the IoU threshold (in percent) to
    (precision, recall, f1)."""

    acc: float
    edit: float
    f1: dict[int, tuple[float, float, float]]
    labeled_precision: float
    coverage: float


def _check_lengths(pred: FrameLabeling, gt: VideoGroundTruth) -> None:
    if pred.num_frames != gt.num_frames:
        raise LengthMismatch(f"prediction has {pred.num_frames} frames, ground truth {gt.num_frames}")


def framewise_accuracy(pred: FrameLabeling, gt: VideoGroundTruth) -> float:
    """Percent of frames with the correct label; UNKNOWN is never correct."""
    _check_lengths(pred, gt)
    return 100.0 * float(np.count_nonzero(pred.labels == gt.labels)) / pred.num_frames


def levenshtein(a, b) -> int:
    """Unit-cost edit distance between two sequences."""
    a, b = list(a), list(b)
    prev = list(range(len(b) + 1))
    for i, x in enumerate(a, start=1):
        cur = [i] + [0] * len(b)
        for j, y in enumerate(b, start=1):
            cur[j] = prev[j - 1] if x == y else 1 + min(prev[j - 1], prev[j], cur[j - 1])
        prev = cur
    return prev[-1]


def _segment_labels(lab: FrameLabeling, drop_unknown: bool) -> list[int]:
    return [seg.label for seg in labeling_to_segments(lab) if not (drop_unknown and seg.label == UNKNOWN)]


def edit_score(pred: FrameLabeling, gt: VideoGroundTruth) -> float:
    """Normalized segmental edit score in percent.

    Compares the order of segment labels only: 100 * (1 - distance /
    max(lengths)), clamped at 0. UNKNOWN segments are removed from the
    prediction side first.
    """
    _check_lengths(pred, gt)
    seq_pred = _segment_labels(pred, drop_unknown=True)
    seq_gt = _segment_labels(FrameLabeling(gt.labels), drop_unknown=True)
    longest = max(len(seq_pred), len(seq_gt))
    if longest == 0:
        return 100.0
    score = 100.0 * (1.0 - levenshtein(seq_pred, seq_gt) / longest)
    return max(score, 0.0)


def f1_at(pred: FrameLabeling, gt: VideoGroundTruth, tau: float) -> tuple[float, float, float]:
    """Segmental (precision, recall, f1) in percent at IoU threshold ``tau``.

    Predicted non-UNKNOWN segments are walked in temporal order; each is
    matched to the same-class ground-truth segment of highest IoU (earliest
    on ties). A match with IoU >= tau on a still-unclaimed segment is a true
    positive and claims it; everything else is a false positive. Unclaimed
    ground-truth segments count as false negatives.
    """
    _check_lengths(pred, gt)
    if not 0.0 < tau < 1.0:
        raise StampsegError(f"tau must be in (0, 1), got {tau}")
    pred_segs = [s for s in labeling_to_segments(pred) if s.label != UNKNOWN]
    gt_segs = labeling_to_segments(FrameLabeling(gt.labels))
    claimed = np.zeros(len(gt_segs), dtype=bool)

    tp = fp = 0
    for ps in pred_segs:
        best_iou, best_idx = 0.0, None
        for j, gs in enumerate(gt_segs):
            if gs.label != ps.label:
                continue
            inter = min(ps.end, gs.end) - max(ps.start, gs.start) + 1
            if inter <= 0:
                continue
            union = ps.length + gs.length - inter
            iou = inter / union
            if iou > best_iou:
                best_iou, best_idx = iou, j
        if best_idx is not None and best_iou >= tau and not claimed[best_idx]:
            tp += 1
            claimed[best_idx] = True
        else:
            fp += 1
    fn = len(gt_segs) - int(claimed.sum())

    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2.0 * precision * recall / (precision + recall) if precision + recall else 0.0
    return 100.0 * precision, 100.0 * recall, 100.0 * f1


def label_quality(pred: FrameLabeling, gt: VideoGroundTruth) -> tuple[float, float]:
    """(labeled_precision, coverage) in percent.

    labeled_precision is the accuracy over non-UNKNOWN frames only (100 by
    convention when nothing is labeled); coverage is the labeled fraction.
    """
    _check_lengths(pred, gt)
    labeled = pred.labels != UNKNOWN
    num_labeled = int(labeled.sum())
    coverage = 100.0 * num_labeled / pred.num_frames
    if num_labeled == 0:
        return 100.0, coverage
    correct = int(np.count_nonzero(pred.labels[labeled] == gt.labels[labeled]))
    return 100.0 * correct / num_labeled, coverage


def evaluate(pred: FrameLabeling, gt: VideoGroundTruth, taus=(10, 25, 50)) -> MetricsReport:
    """Compute the full report; ``taus`` are IoU thresholds in percent."""
    labeled_precision, coverage = label_quality(pred, gt)
    return MetricsReport(
        acc=framewise_accuracy(pred, gt),
        edit=edit_score(pred, gt),
        f1={int(t): f1_at(pred, gt, t / 100.0) for t in taus},
        labeled_precision=labeled_precision,
        coverage=coverage,
    )
