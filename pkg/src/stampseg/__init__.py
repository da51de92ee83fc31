"""stampseg: dense frame labelings with explicit unknown regions from
sparse timestamp annotations of untrimmed videos.

Given framewise class probabilities and one annotated frame per (known)
action, the boundary optimizer expands a labeled interval around every
annotation and leaves the frames nobody is confident about UNKNOWN, so
actions the annotator missed never inherit a neighbor's label.
"""

from .core import (
    UNKNOWN,
    FrameLabeling,
    ProbMatrix,
    Segment,
    SegmentPartition,
    TimestampSet,
    VideoGroundTruth,
    gap_scales,
    labeling_to_segments,
    partition_to_labeling,
    segments_to_labeling,
    validate_inputs,
)
from .objective import (
    FreeParams,
    PlateauParams,
    continuous_objective,
    discrete_objective,
    objective_gradient,
    plateau,
    reparameterize,
)
from .optimizer import (
    OptimizerConfig,
    OptTrace,
    discretize,
    generate_labels,
    init_fixed_duration,
    init_uniform,
    optimize,
)
from .oracle import OracleLimits, brute_force_min
from .baselines import gt_oracle, timestamps_only, uniform_k
from .metrics import (
    MetricsReport,
    edit_score,
    evaluate,
    f1_at,
    framewise_accuracy,
    label_quality,
    levenshtein,
)
from .simulate import (
    SweepRow,
    SynthSpec,
    drop_timestamps,
    place_timestamps,
    stamp_confidence,
    sweep_beta,
    synth_video,
)

__version__ = "0.1.0"

__all__ = [
    "UNKNOWN",
    "FrameLabeling",
    "FreeParams",
    "MetricsReport",
    "OptTrace",
    "OptimizerConfig",
    "OracleLimits",
    "PlateauParams",
    "ProbMatrix",
    "Segment",
    "SegmentPartition",
    "SweepRow",
    "SynthSpec",
    "TimestampSet",
    "VideoGroundTruth",
    "brute_force_min",
    "continuous_objective",
    "discrete_objective",
    "discretize",
    "drop_timestamps",
    "edit_score",
    "evaluate",
    "f1_at",
    "framewise_accuracy",
    "gap_scales",
    "generate_labels",
    "gt_oracle",
    "init_fixed_duration",
    "init_uniform",
    "label_quality",
    "labeling_to_segments",
    "levenshtein",
    "objective_gradient",
    "optimize",
    "partition_to_labeling",
    "place_timestamps",
    "plateau",
    "reparameterize",
    "segments_to_labeling",
    "stamp_confidence",
    "sweep_beta",
    "synth_video",
    "timestamps_only",
    "uniform_k",
    "validate_inputs",
]
