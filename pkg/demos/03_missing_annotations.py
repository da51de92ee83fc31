"""Robustness to missing annotations: optimizer vs. baseline labelers.

Builds a 50-video corpus, drops 5-30% of the per-action timestamps, and
compares four labelers on the quality of the labels they would hand to a
downstream trainer. The boundary optimizer's labeled-frame precision barely
moves as annotations disappear (missed actions become unknown), while the
dense Uniform-2 baseline degrades steeply.

Writes demos/output/missing_annotations.png when matplotlib is available.

Run:  python3 demos/03_missing_annotations.py
"""

from pathlib import Path

import numpy as np

import stampseg as ss

KEEP_FRACTIONS = (1.0, 0.95, 0.9, 0.8, 0.7)
CFG = ss.OptimizerConfig(gap_penalty=0.7, sharpness=0.5)


def make_corpus(num_videos=50):
    corpus = []
    for v in range(num_videos):
        rng = np.random.default_rng(300 + v)
        spec = ss.SynthSpec(
            num_segments=int(rng.integers(6, 11)), min_length=20, max_length=40,
            num_classes=6, margin=0.8, boundary_blur=2, seed=300 + v,
        )
        gt, prob = ss.synth_video(spec)
        corpus.append((gt, prob, ss.place_timestamps(gt, "center", seed=v)))
    return corpus


def labelers(gt, prob, stamps):
    yield "optimizer", ss.generate_labels(prob, stamps, CFG)[0]
    yield "gt-oracle", ss.gt_oracle(gt, stamps)
    yield "uniform-2", ss.uniform_k(stamps, gt.num_frames, 2)
    yield "stamps-only", ss.timestamps_only(stamps, gt.num_frames)


corpus = make_corpus()
names = ["optimizer", "gt-oracle", "uniform-2", "stamps-only"]
precision = {n: [] for n in names}
accuracy = {n: [] for n in names}

for keep in KEEP_FRACTIONS:
    tallies = {n: [0, 0, 0, 0] for n in names}  # labeled, labeled-correct, frames, correct
    for v, (gt, prob, full) in enumerate(corpus):
        kept = ss.drop_timestamps(full, keep, seed=v)
        for name, lab in labelers(gt, prob, kept):
            mask = lab.labels != ss.UNKNOWN
            t = tallies[name]
            t[0] += int(mask.sum())
            t[1] += int(np.count_nonzero(lab.labels[mask] == gt.labels[mask]))
            t[2] += gt.num_frames
            t[3] += int(np.count_nonzero(lab.labels == gt.labels))
    for name in names:
        labeled, labeled_ok, frames, ok = tallies[name]
        precision[name].append(100.0 * labeled_ok / labeled if labeled else 100.0)
        accuracy[name].append(100.0 * ok / frames)

print("labeled-frame precision (quality of the supervision each labeler emits):")
print("keep fraction: " + "".join(f"{k:>8.0%}" for k in KEEP_FRACTIONS))
for name in names:
    print(f"{name:>12}: " + "".join(f"{v:8.2f}" for v in precision[name]))

print("\nframewise accuracy (unknown counts as wrong):")
for name in names:
    print(f"{name:>12}: " + "".join(f"{v:8.2f}" for v in accuracy[name]))

print("\n-> the optimizer tracks the gt-oracle's precision while the dense\n"
      "   baseline absorbs every missed action into a wrong label")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(__file__).parent / "output"
    out.mkdir(exist_ok=True)
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for name in names:
        axes[0].plot(KEEP_FRACTIONS, precision[name], marker="o", label=name)
        axes[1].plot(KEEP_FRACTIONS, accuracy[name], marker="o", label=name)
    for ax, title in zip(axes, ("labeled-frame precision", "framewise accuracy")):
        ax.set_xlabel("fraction of timestamps kept")
        ax.set_ylabel("percent")
        ax.set_title(title)
        ax.invert_xaxis()
        ax.grid(alpha=0.3)
    axes[0].legend()
    fig.tight_layout()
    fig.savefig(out / "missing_annotations.png", dpi=120)
    print(f"\nwrote {out / 'missing_annotations.png'}")
except ImportError:
    pass
