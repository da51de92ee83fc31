"""Quickstart: from sparse timestamps to a dense labeling with unknowns.

Synthesizes a video whose classifier is confident inside actions and fuzzy
at transitions, annotates one frame per action, hides a third of those
annotations, and lets the boundary optimizer expand labels around the
surviving ones. Frames belonging to missed actions come back UNKNOWN (-1)
instead of inheriting a neighbor's label.

Run:  python3 demos/01_quickstart.py
"""

import numpy as np

import stampseg as ss

# A 10-action video, ~25-45 frames per action, 6 classes. The probability
# matrix puts 85% of the mass on the true class and cross-fades over 2
# frames at every action change.
spec = ss.SynthSpec(
    num_segments=10,
    min_length=25,
    max_length=45,
    num_classes=6,
    margin=0.85,
    boundary_blur=2,
    seed=5,
)
gt, prob = ss.synth_video(spec)
print(f"video: {gt.num_frames} frames, {spec.num_segments} actions, {spec.num_classes} classes")

# One timestamp per action at the action's center, then lose 30% of them.
full = ss.place_timestamps(gt, "center", seed=5)
kept = ss.drop_timestamps(full, keep_fraction=0.7, seed=5)
print(f"annotations: {full.num_stamps} placed, {kept.num_stamps} kept")

# Optimize boundary widths. Sharpness 0.5 suits these short synthetic
# actions; real multi-thousand-frame videos use the 0.025 default.
cfg = ss.OptimizerConfig(gap_penalty=0.7, sharpness=0.5)
labeling, trace = ss.generate_labels(prob, kept, cfg)
print(f"objective: {trace.objectives[0]:.2f} -> {trace.objectives.min():.2f} "
      f"over {trace.objectives.size - 1} iterations")

unknown = np.count_nonzero(labeling.labels == ss.UNKNOWN)
print(f"labeling: {unknown}/{gt.num_frames} frames left unknown")

report = ss.evaluate(labeling, gt)
print(f"accuracy {report.acc:.1f} | edit {report.edit:.1f} | "
      f"F1@50 {report.f1[50][2]:.1f}")
print(f"labeled precision {report.labeled_precision:.1f} at {report.coverage:.1f}% coverage")

# The point of unknowns: almost every frame the optimizer dared to label is
# correct, so a downstream model trains on clean supervision, while a dense
# baseline spreads the missing actions' frames across wrong labels.
dense = ss.uniform_k(kept, gt.num_frames, k=2)
print(f"uniform-2 baseline accuracy (no unknowns): {ss.framewise_accuracy(dense, gt):.1f}")
