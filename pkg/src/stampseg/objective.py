"""Boundary-expansion objectives: smooth window relaxation and exact discrete form.

The discrete objective charges every frame inside a labeled interval
``[p_i - left_i, p_i + right_i]`` the negative log-probability of that
interval's class, plus a penalty of ``gap_penalty`` per unknown frame:

    sum_i sum_{t in interval_i} -log prob[t, label_i]  +  gap_penalty * sum gaps

The continuous relaxation replaces each interval indicator with a smooth
plateau (a product of two opposing sigmoids) whose window center and half
width are affine in the boundary widths, and replaces the explicit gap
count with ``sum_t (1 - sum_i plateau_i(t))`` over all frames. Boundary
widths themselves are expressed through per-group normalized exponentials
of unconstrained logits, which keeps every width non-negative and every
group summing exactly to its span, so the relaxed problem is unconstrained
and differentiable end to end.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .core import ProbMatrix, SegmentPartition, TimestampSet, gap_scales, check_integer_partition
from .errors import NoTimestamps, StampsegError

# Largest |exponent| for which the factored plateau evaluation cannot
# overflow float64; beyond it we fall back to elementwise stable sigmoids.
_FACTORED_EXP_LIMIT = 600.0


@dataclass(frozen=True)
class PlateauParams:
    """Smooth window: center, half width (>= 0), and transition sharpness (> 0)."""

    center: float
    half_width: float
    sharpness: float

    def __post_init__(self):
        if self.half_width < 0:
            raise StampsegError(f"half_width must be >= 0, got {self.half_width}")
        if self.sharpness <= 0:
            raise StampsegError(f"sharpness must be > 0, got {self.sharpness}")


def plateau(t, params: PlateauParams):
    """Evaluate the smooth window function at frame position(s) ``t``.

    Returns values in (0, 1): approximately 1 inside
    ``(center - half_width, center + half_width)``, approximately 0 outside,
    with a sigmoid transition of scale ``1 / sharpness`` at both edges.
    Computed as a product of two opposing sigmoids, stable for exponents up
    to several hundred.
    """
    t = np.asarray(t, dtype=np.float64)
    c, w, s = params.center, params.half_width, params.sharpness
    out = expit(s * (c + w - t)) * expit(s * (t - c + w))
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FreeParams:
    """Unconstrained logits behind a partition.

    ``head`` holds the pair driving (gap_0, left_0), each ``interior`` row
    the triple driving (right_i, gap_{i+1}, left_{i+1}), and ``tail`` the
    pair driving (right_{N-1}, gap_N).
    """

    head: np.ndarray
    interior: np.ndarray
    tail: np.ndarray

    def __post_init__(self):
        head = np.asarray(self.head, dtype=np.float64).reshape(2)
        tail = np.asarray(self.tail, dtype=np.float64).reshape(2)
        interior = np.asarray(self.interior, dtype=np.float64).reshape(-1, 3)
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "interior", interior)
        object.__setattr__(self, "tail", tail)

    @property
    def num_stamps(self) -> int:
        return self.interior.shape[0] + 1

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.head, self.interior.ravel(), self.tail])

    @classmethod
    def from_vector(cls, vec: np.ndarray, num_stamps: int) -> "FreeParams":
        vec = np.asarray(vec, dtype=np.float64)
        expected = 3 * num_stamps + 1
        if vec.size != expected:
            raise StampsegError(f"expected {expected} free parameters, got {vec.size}")
        return cls(vec[:2], vec[2:-2].reshape(num_stamps - 1, 3), vec[-2:])

    @classmethod
    def zeros(cls, num_stamps: int) -> "FreeParams":
        if num_stamps < 1:
            raise NoTimestamps("free parameters need at least one timestamp")
        return cls(np.zeros(2), np.zeros((num_stamps - 1, 3)), np.zeros(2))


def _normalized_exp(logits: np.ndarray) -> np.ndarray:
    """Row-wise exp normalized to sum 1, with max subtraction for safety."""
    z = logits - logits.max(axis=-1, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=-1, keepdims=True)


def _partition_from_scales(free: FreeParams, scales: np.ndarray) -> SegmentPartition:
    n = free.num_stamps
    left = np.empty(n)
    right = np.empty(n)
    gaps = np.empty(n + 1)
    gaps[0], left[0] = scales[0] * _normalized_exp(free.head)
    if n > 1:
        shares = scales[1:n, None] * _normalized_exp(free.interior)
        right[:-1] = shares[:, 0]
        gaps[1:n] = shares[:, 1]
        left[1:] = shares[:, 2]
    right[-1], gaps[n] = scales[n] * _normalized_exp(free.tail)
    return SegmentPartition(left, right, gaps, "continuous")


def reparameterize(free: FreeParams, stamps: TimestampSet, num_frames: int) -> SegmentPartition:
    """Map unconstrained logits to a continuous partition.

    Each group's widths are ``scale * softmax(logits)``, so they are
    strictly positive (when the scale is) and sum to the scale exactly up
    to rounding; groups with scale 0 map to all-zero widths.
    """
    n = stamps.num_stamps
    if n == 0:
        raise NoTimestamps("reparameterize needs at least one timestamp")
    if free.num_stamps != n:
        raise StampsegError(f"free parameters built for {free.num_stamps} stamps, got {n}")
    return _partition_from_scales(free, gap_scales(stamps, num_frames).astype(np.float64))


def window_params(stamps: TimestampSet, part: SegmentPartition) -> tuple[np.ndarray, np.ndarray]:
    """Per-stamp window centers and half widths for the smooth relaxation.

    The window for stamp ``i`` covers ``[p_i - left_i, p_i + right_i]``:
    center ``p_i + (right_i - left_i) / 2`` and half width
    ``(right_i + left_i) / 2``.
    """
    p = stamps.frames.astype(np.float64)
    centers = p + (part.right - part.left) / 2.0
    half_widths = (part.right + part.left) / 2.0
    return centers, half_widths


def _stamp_weights(prob: ProbMatrix, stamps: TimestampSet) -> np.ndarray:
    """(T, N) matrix of -log prob[t, label_i]."""
    return -np.log(prob.values[:, stamps.labels])


class _PlateauKernel:
    """Evaluates all N plateaus (and their edge sigmoids) on the frame grid.

    When exponents stay comfortably inside float64 range the two sigmoid
    arguments factor into per-frame and per-stamp exponentials, so the
    (T, N) evaluation needs no transcendentals beyond a one-off per-frame
    table; otherwise it falls back to elementwise stable sigmoids. Scratch
    buffers are reused across calls, so one kernel instance must not be
    shared between threads.
    """

    def __init__(self, num_frames: int, sharpness: float):
        self.t = np.arange(num_frames, dtype=np.float64)
        self.s = float(sharpness)
        # Factored form uses exp(+-s*t) and exp(+-s*(c +- w)); keep a margin
        # for |c| + w up to ~2T (widths never exceed the video length).
        self.factored = 3.0 * self.s * max(num_frames, 1) < _FACTORED_EXP_LIMIT
        if self.factored:
            self.exp_pos = np.exp(self.s * self.t)[:, None]
            self.exp_neg = np.exp(-self.s * self.t)[:, None]
        self._scratch: list[np.ndarray] | None = None

    def _buffers(self, num_stamps: int) -> list[np.ndarray]:
        shape = (self.t.size, num_stamps)
        if self._scratch is None or self._scratch[0].shape != shape:
            self._scratch = [np.empty(shape) for _ in range(3)]
        return self._scratch

    def sigmoids(self, centers: np.ndarray, half_widths: np.ndarray):
        """Return (sa, sb): the rising and falling edge sigmoids, shape (T, N).

        Freshly allocated arrays; safe to keep.
        """
        s = self.s
        if self.factored:
            va = np.exp(-s * (centers + half_widths))[None, :]
            vb = np.exp(s * (centers - half_widths))[None, :]
            sa = 1.0 / (1.0 + self.exp_pos * va)
            sb = 1.0 / (1.0 + self.exp_neg * vb)
        else:
            tt = self.t[:, None]
            sa = expit(s * (centers[None, :] + half_widths[None, :] - tt))
            sb = expit(s * (tt - centers[None, :] + half_widths[None, :]))
        return sa, sb

    def weighted_sums(self, centers: np.ndarray, half_widths: np.ndarray, weights: np.ndarray):
        """Frame sums of ``weights * f``, ``weights * f * sa``, ``weights * f * sb``.

        Returns three length-N vectors; the (T, N) intermediates live in the
        kernel's scratch buffers.
        """
        s = self.s
        sa, sb, wf = self._buffers(centers.size)
        if self.factored:
            np.multiply(self.exp_pos, np.exp(-s * (centers + half_widths))[None, :], out=sa)
            sa += 1.0
            np.reciprocal(sa, out=sa)
            np.multiply(self.exp_neg, np.exp(s * (centers - half_widths))[None, :], out=sb)
            sb += 1.0
            np.reciprocal(sb, out=sb)
        else:
            tt = self.t[:, None]
            expit(s * (centers[None, :] + half_widths[None, :] - tt), out=sa)
            expit(s * (tt - centers[None, :] + half_widths[None, :]), out=sb)
        np.multiply(sa, sb, out=wf)
        np.multiply(wf, weights, out=wf)
        total = wf.sum(axis=0)
        with_sa = np.einsum("ti,ti->i", wf, sa)
        with_sb = np.einsum("ti,ti->i", wf, sb)
        return total, with_sa, with_sb


def continuous_objective(
    prob: ProbMatrix,
    stamps: TimestampSet,
    part: SegmentPartition,
    gap_penalty: float,
    sharpness: float,
) -> float:
    """Smooth relaxation of the labeling cost for a continuous partition.

    Every frame contributes its class negative log-likelihood weighted by
    each stamp's plateau, and ``gap_penalty`` times one minus the total
    plateau mass at that frame (the smooth stand-in for counting unknown
    frames). Sums run over all frames; overlapping plateau tails are kept
    as-is.
    """
    if stamps.num_stamps == 0:
        raise NoTimestamps("continuous objective needs at least one timestamp")
    residual = _stamp_weights(prob, stamps) - gap_penalty
    centers, half_widths = window_params(stamps, part)
    kernel = _PlateauKernel(prob.num_frames, sharpness)
    sa, sb = kernel.sigmoids(centers, half_widths)
    return float((residual * (sa * sb)).sum() + gap_penalty * prob.num_frames)


def objective_gradient(
    prob: ProbMatrix,
    stamps: TimestampSet,
    free: FreeParams,
    gap_penalty: float,
    sharpness: float,
) -> tuple[float, FreeParams]:
    """Value and exact gradient of the relaxed objective in logit space.

    Returns ``(value, grad)`` where ``value`` equals
    ``continuous_objective(prob, stamps, reparameterize(free, ...), ...)``
    and ``grad`` mirrors the layout of ``free``. The chain rule runs through
    the window parameters and each group's normalized-exponential map.
    """
    if stamps.num_stamps == 0:
        raise NoTimestamps("gradient needs at least one timestamp")
    residual = _stamp_weights(prob, stamps) - gap_penalty
    kernel = _PlateauKernel(prob.num_frames, sharpness)
    scales = gap_scales(stamps, prob.num_frames).astype(np.float64)
    return _value_and_grad(residual, stamps, free, gap_penalty, scales, kernel)


def _value_and_grad(
    residual: np.ndarray,
    stamps: TimestampSet,
    free: FreeParams,
    gap_penalty: float,
    scales: np.ndarray,
    kernel: _PlateauKernel,
) -> tuple[float, FreeParams]:
    """Core evaluation; ``residual`` is the per-frame weight matrix minus
    the gap penalty, ``scales`` the precomputed group spans."""
    n = stamps.num_stamps
    num_frames = kernel.t.size
    part = _partition_from_scales(free, scales)
    centers, half_widths = window_params(stamps, part)
    s = kernel.s

    total, with_sa, with_sb = kernel.weighted_sums(centers, half_widths, residual)
    value = float(total.sum() + gap_penalty * num_frames)

    # d plateau / d center = s * f * (sb - sa); d plateau / d half_width =
    # s * f * (2 - sa - sb).
    d_center = s * (with_sb - with_sa)
    d_width = s * (2.0 * total - with_sa - with_sb)
    d_right = 0.5 * (d_center + d_width)
    d_left = 0.5 * (d_width - d_center)

    grad_head = _group_grad(
        np.array([part.gaps[0], part.left[0]]), np.array([0.0, d_left[0]]), scales[0]
    )
    grad_tail = _group_grad(
        np.array([part.right[-1], part.gaps[n]]), np.array([d_right[-1], 0.0]), scales[n]
    )
    if n > 1:
        z = np.stack([part.right[:-1], part.gaps[1:n], part.left[1:]], axis=1)
        u = np.stack([d_right[:-1], np.zeros(n - 1), d_left[1:]], axis=1)
        inner = (u * z).sum(axis=1, keepdims=True)
        safe = np.where(scales[1:n, None] > 0, scales[1:n, None], 1.0)
        grad_interior = z * (u - inner / safe)
    else:
        grad_interior = np.zeros((0, 3))
    return value, FreeParams(grad_head, grad_interior, grad_tail)


def _group_grad(z: np.ndarray, upstream: np.ndarray, scale: float) -> np.ndarray:
    """Backprop through widths = scale * softmax(logits) for one group."""
    if scale <= 0:
        return np.zeros_like(z)
    return z * (upstream - float(upstream @ z) / scale)


def discrete_objective(
    prob: ProbMatrix,
    stamps: TimestampSet,
    part: SegmentPartition,
    gap_penalty: float,
) -> float:
    """Exact labeling cost of an integer partition.

    Sums -log prob[t, label_i] over every frame of every labeled interval
    (annotated frames included) plus ``gap_penalty`` per unknown frame.
    """
    check_integer_partition(part, stamps, prob.num_frames)
    logp = -np.log(prob.values)
    total = gap_penalty * float(part.gaps.sum())
    for frame, label, l, r in zip(stamps.frames, stamps.labels, part.left, part.right):
        total += float(logp[frame - l : frame + r + 1, label].sum())
    return total
