"""End-to-end label generation: initialization, Adam descent, discretization.

A video's boundary widths are optimized in unconstrained logit space with
plain Adam for a fixed number of iterations, then the best iterate seen is
rounded to an exact integer partition and expanded into a dense labeling.
Everything here is deterministic given identical inputs and configuration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    UNKNOWN,
    FrameLabeling,
    ProbMatrix,
    SegmentPartition,
    TimestampSet,
    gap_scales,
    partition_to_labeling,
    validate_inputs,
)
from .errors import InvalidDuration, NoTimestamps, NonFiniteObjective, StampsegError
from .objective import FreeParams, _PlateauKernel, _stamp_weights, _value_and_grad, reparameterize


@dataclass(frozen=True)
class OptimizerConfig:
    """Hyperparameters for boundary optimization.

    ``init`` selects the starting point: "uniform" splits every group
    evenly, "fixed" starts labeled widths at ``init_seconds * fps`` frames
    (requires ``fps``). ``seed`` is recorded for reproducibility metadata;
    both built-in initializations are deterministic and do not consume it.
    """

    gap_penalty: float = 0.7
    learning_rate: float = 0.03
    iterations: int = 30
    sharpness: float = 0.025
    init: str = "uniform"
    init_seconds: float = 3.0
    fps: float | None = None
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_eps: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise StampsegError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.iterations < 1:
            raise StampsegError(f"iterations must be >= 1, got {self.iterations}")
        if self.gap_penalty < 0:
            raise StampsegError(f"gap_penalty must be >= 0, got {self.gap_penalty}")
        if self.init not in ("uniform", "fixed"):
            raise StampsegError(f"unknown init scheme {self.init!r}")
        if self.init == "fixed" and self.fps is None:
            raise StampsegError("fixed-duration init requires fps")


@dataclass(frozen=True)
class OptTrace:
    """Objective value at every iterate plus the selected final partitions."""

    objectives: np.ndarray
    final_continuous: SegmentPartition
    final_integer: SegmentPartition

    def __post_init__(self):
        object.__setattr__(self, "objectives", np.asarray(self.objectives, dtype=np.float64))


def init_uniform(stamps: TimestampSet, num_frames: int) -> FreeParams:
    """All-zero logits: equal halves at head/tail, equal thirds in between."""
    if stamps.num_stamps == 0:
        raise NoTimestamps("initialization needs at least one timestamp")
    return FreeParams.zeros(stamps.num_stamps)


def init_fixed_duration(
    stamps: TimestampSet, num_frames: int, seconds: float, fps: float
) -> FreeParams:
    """Start labeled widths at a fixed duration, remainder in the gaps.

    Interior groups get ``right = left = min(seconds * fps, scale / 3)``
    with the rest in the gap; head/tail pairs analogously cap the labeled
    width at half their scale. The cap keeps every gap strictly positive
    and degrades to the uniform split when the duration does not fit.
    """
    if stamps.num_stamps == 0:
        raise NoTimestamps("initialization needs at least one timestamp")
    duration = float(seconds) * float(fps)
    if duration < 1.0:
        raise InvalidDuration(f"fixed duration is {duration:.3g} frames, need >= 1")
    scales = gap_scales(stamps, num_frames).astype(np.float64)
    n = stamps.num_stamps

    def pair_logits(scale: float, labeled_first: bool) -> np.ndarray:
        if scale <= 0:
            return np.zeros(2)
        labeled = min(duration, scale / 2.0)
        gap = scale - labeled
        pair = (labeled, gap) if labeled_first else (gap, labeled)
        return np.log(pair)

    head = pair_logits(scales[0], labeled_first=False)
    tail = pair_logits(scales[n], labeled_first=True)
    interior = np.zeros((n - 1, 3))
    for i, scale in enumerate(scales[1:n]):
        if scale <= 0:
            continue
        side = min(duration, scale / 3.0)
        interior[i] = np.log([side, scale - 2.0 * side, side])
    return FreeParams(head, interior, tail)


def discretize(part: SegmentPartition, stamps: TimestampSet, num_frames: int) -> SegmentPartition:
    """Round a continuous partition to an exact integer tiling.

    Labeled widths are rounded half-to-even; each gap absorbs the residual.
    If rounding overshoots an interior span, the larger of the two labeled
    widths is decremented (ties broken on the right width) until the gap is
    back to zero.
    """
    n = part.num_stamps
    scales = gap_scales(stamps, num_frames)
    if n == 0:
        return SegmentPartition(part.left, part.right, scales, "integer")
    left = np.rint(part.left).astype(np.int64)
    right = np.rint(part.right).astype(np.int64)
    gaps = np.empty(n + 1, dtype=np.int64)
    gaps[0] = scales[0] - left[0]
    gaps[n] = scales[n] - right[-1]
    for i in range(n - 1):
        residual = scales[i + 1] - right[i] - left[i + 1]
        while residual < 0:
            if right[i] >= left[i + 1]:
                right[i] -= 1
            else:
                left[i + 1] -= 1
            residual += 1
        gaps[i + 1] = residual
    return SegmentPartition(left, right, gaps, "integer")


def optimize(prob: ProbMatrix, stamps: TimestampSet, cfg: OptimizerConfig) -> OptTrace:
    """Run Adam on the relaxed objective and return the best iterate found.

    The trace records the objective at the starting point and after each of
    ``cfg.iterations`` steps. The returned partitions come from the iterate
    with the lowest objective (the start included), so the final value never
    exceeds the initial one even when late Adam steps overshoot.
    """
    prob, stamps = validate_inputs(prob, stamps)
    n = stamps.num_stamps
    if n == 0:
        raise NoTimestamps("optimization needs at least one timestamp")
    if cfg.init == "fixed":
        free = init_fixed_duration(stamps, prob.num_frames, cfg.init_seconds, cfg.fps)
    else:
        free = init_uniform(stamps, prob.num_frames)

    residual = _stamp_weights(prob, stamps) - cfg.gap_penalty
    kernel = _PlateauKernel(prob.num_frames, cfg.sharpness)
    scales = gap_scales(stamps, prob.num_frames).astype(np.float64)

    def evaluate(theta: np.ndarray) -> tuple[float, np.ndarray]:
        value, grad = _value_and_grad(
            residual, stamps, FreeParams.from_vector(theta, n), cfg.gap_penalty, scales, kernel
        )
        if not np.isfinite(value):
            raise NonFiniteObjective(f"objective became {value}; check the probability input")
        return value, grad.to_vector()

    theta = free.to_vector()
    value, grad = evaluate(theta)
    objectives = [value]
    best_value, best_theta = value, theta.copy()

    m = np.zeros_like(theta)
    v = np.zeros_like(theta)
    b1, b2 = cfg.adam_beta1, cfg.adam_beta2
    for step in range(1, cfg.iterations + 1):
        m = b1 * m + (1.0 - b1) * grad
        v = b2 * v + (1.0 - b2) * grad * grad
        m_hat = m / (1.0 - b1**step)
        v_hat = v / (1.0 - b2**step)
        theta = theta - cfg.learning_rate * m_hat / (np.sqrt(v_hat) + cfg.adam_eps)
        value, grad = evaluate(theta)
        objectives.append(value)
        if value < best_value:
            best_value, best_theta = value, theta.copy()

    final_free = FreeParams.from_vector(best_theta, n)
    continuous = reparameterize(final_free, stamps, prob.num_frames)
    integer = discretize(continuous, stamps, prob.num_frames)
    return OptTrace(np.array(objectives), continuous, integer)


def generate_labels(
    prob: ProbMatrix, stamps: TimestampSet, cfg: OptimizerConfig | None = None
) -> tuple[FrameLabeling, OptTrace | None]:
    """Produce a dense labeling with UNKNOWN gaps from timestamp annotations.

    Composition of optimize -> discretize -> partition_to_labeling. With no
    timestamps at all the video is labeled entirely UNKNOWN and no
    optimization runs (the trace is None).
    """
    cfg = cfg or OptimizerConfig()
    prob, stamps = validate_inputs(prob, stamps)
    if stamps.num_stamps == 0:
        return FrameLabeling(np.full(prob.num_frames, UNKNOWN, dtype=np.int64)), None
    trace = optimize(prob, stamps, cfg)
    labeling = partition_to_labeling(trace.final_integer, stamps, prob.num_frames)
    return labeling, trace
