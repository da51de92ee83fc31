"""The machinery behind the optimizer: smooth windows and free logits.

The discrete "label these frames" decision is relaxed twice:

1. the interval indicator becomes a plateau -- a product of two opposing
   sigmoids -- so coverage is differentiable in the boundary positions;
2. the widths (left, gap, right) of every span between annotations become
   normalized exponentials of unconstrained logits, so no constraint
   handling is needed during descent.

Run:  python3 demos/02_smooth_windows.py
"""

import numpy as np

import stampseg as ss

# --- plateaus at a few sharpness settings ---------------------------------
print("plateau value by distance from center (half_width = 20):")
print("distance:      " + "".join(f"{d:>8d}" for d in (0, 10, 19, 20, 21, 30, 60)))
for sharpness in (0.025, 0.1, 0.5, 2.0):
    p = ss.PlateauParams(center=0.0, half_width=20.0, sharpness=sharpness)
    row = [ss.plateau(float(d), p) for d in (0, 10, 19, 20, 21, 30, 60)]
    print(f"sharpness {sharpness:<5}" + "".join(f"{v:8.3f}" for v in row))
print("-> at the window edge the value is ~0.5; larger sharpness means a\n"
      "   faster 1 -> 0 transition, approaching a hard indicator\n")

# --- logits to widths ------------------------------------------------------
stamps = ss.TimestampSet.from_pairs([(30, 0), (80, 1)])
num_frames = 120
free = ss.init_uniform(stamps, num_frames)
part = ss.reparameterize(free, stamps, num_frames)
print("uniform init widths (head pair, interior triple, tail pair):")
print(f"  gap {part.gaps[0]:.2f} | left {part.left[0]:.2f}   "
      f"right {part.right[0]:.2f} | gap {part.gaps[1]:.2f} | left {part.left[1]:.2f}   "
      f"right {part.right[1]:.2f} | gap {part.gaps[2]:.2f}")

# Whatever the logits, each group still sums to its span and stays positive.
rng = np.random.default_rng(0)
wild = ss.FreeParams.from_vector(rng.normal(0, 4, 7), 2)
part = ss.reparameterize(wild, stamps, num_frames)
scales = ss.gap_scales(stamps, num_frames)
print(f"random logits:  head sums to {part.gaps[0] + part.left[0]:.12f} (span {scales[0]})")
print(f"                interior sums to {part.right[0] + part.gaps[1] + part.left[1]:.12f} "
      f"(span {scales[1]})")

# --- the analytic gradient agrees with finite differences ------------------
raw = rng.random((num_frames, 3)) + 0.05
prob = ss.ProbMatrix(raw / raw.sum(axis=1, keepdims=True))
theta = rng.normal(0, 1, 7)
value, grad = ss.objective_gradient(
    prob, stamps, ss.FreeParams.from_vector(theta, 2), gap_penalty=0.7, sharpness=0.1
)
step = 1e-4
fd = np.zeros(7)
for j in range(7):
    hi, lo = theta.copy(), theta.copy()
    hi[j] += step
    lo[j] -= step
    fd[j] = (
        ss.continuous_objective(prob, stamps,
                                ss.reparameterize(ss.FreeParams.from_vector(hi, 2), stamps, num_frames),
                                0.7, 0.1)
        - ss.continuous_objective(prob, stamps,
                                  ss.reparameterize(ss.FreeParams.from_vector(lo, 2), stamps, num_frames),
                                  0.7, 0.1)
    ) / (2 * step)
print(f"\nobjective {value:.4f}; max |analytic - finite difference| = "
      f"{np.abs(grad.to_vector() - fd).max():.2e}")
