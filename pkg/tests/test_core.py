import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import stampseg as ss
from stampseg.errors import (
    EmptyVideo,
    NonMonotoneTimestamps,
    PartitionMismatch,
    RowNotStochastic,
    TimestampOutOfRange,
)

from conftest import random_integer_partition


def uniform_prob(num_frames, num_classes=2):
    return ss.ProbMatrix(np.full((num_frames, num_classes), 1.0 / num_classes))


class TestProbMatrix:
    def test_clamps_and_renormalizes(self):
        values = np.array([[1.0, 0.0], [0.5, 0.5]])
        prob = ss.ProbMatrix(values)
        assert prob.values.min() >= ss.core.PROB_FLOOR
        assert np.allclose(prob.values.sum(axis=1), 1.0)
        assert np.all(np.isfinite(-np.log(prob.values)))

    def test_rejects_empty(self):
        with pytest.raises(EmptyVideo):
            ss.ProbMatrix(np.zeros((0, 2)))

    def test_rejects_bad_rows(self):
        with pytest.raises(RowNotStochastic):
            ss.ProbMatrix(np.array([[0.7, 0.7], [0.5, 0.5]]))
        with pytest.raises(RowNotStochastic):
            ss.ProbMatrix(np.array([[1.2, -0.2], [0.5, 0.5]]))
        with pytest.raises(RowNotStochastic):
            ss.ProbMatrix(np.array([[np.nan, 1.0], [0.5, 0.5]]))

    def test_accepts_within_row_tolerance(self):
        prob = ss.ProbMatrix(np.array([[0.50004, 0.5], [0.5, 0.49996]]))
        assert np.allclose(prob.values.sum(axis=1), 1.0)

    def test_values_read_only(self):
        prob = uniform_prob(3)
        with pytest.raises(ValueError):
            prob.values[0, 0] = 0.9


class TestValidateInputs:
    def test_well_formed(self):
        prob = uniform_prob(10)
        stamps = ss.TimestampSet.from_pairs([(2, 0), (7, 1)])
        assert ss.validate_inputs(prob, stamps) == (prob, stamps)

    def test_non_monotone(self):
        with pytest.raises(NonMonotoneTimestamps):
            ss.TimestampSet.from_pairs([(7, 0), (2, 1)])
        with pytest.raises(NonMonotoneTimestamps):
            ss.TimestampSet.from_pairs([(2, 0), (2, 1)])

    def test_out_of_range(self):
        prob = uniform_prob(10)
        with pytest.raises(TimestampOutOfRange):
            ss.validate_inputs(prob, ss.TimestampSet.from_pairs([(10, 0)]))

    def test_label_out_of_range(self):
        prob = uniform_prob(10)
        with pytest.raises(ss.errors.StampsegError):
            ss.validate_inputs(prob, ss.TimestampSet.from_pairs([(3, 2)]))


class TestPartitionToLabeling:
    def test_single_stamp(self):
        stamps = ss.TimestampSet.from_pairs([(3, 0)])
        part = ss.SegmentPartition([1], [1], [2, 2], "integer")
        lab = ss.partition_to_labeling(part, stamps, 7)
        assert lab.labels.tolist() == [-1, -1, 0, 0, 0, -1, -1]

    def test_two_stamps_with_gap(self):
        stamps = ss.TimestampSet.from_pairs([(1, 0), (3, 1)])
        part = ss.SegmentPartition([1, 0], [0, 1], [0, 1, 0], "integer")
        lab = ss.partition_to_labeling(part, stamps, 5)
        assert lab.labels.tolist() == [0, 0, -1, 1, 1]

    def test_no_annotations(self):
        stamps = ss.TimestampSet(np.array([], dtype=np.int64), np.array([], dtype=np.int64))
        part = ss.SegmentPartition(np.zeros(0), np.zeros(0), [4], "integer")
        lab = ss.partition_to_labeling(part, stamps, 4)
        assert lab.labels.tolist() == [-1] * 4

    def test_mismatch_raises(self):
        stamps = ss.TimestampSet.from_pairs([(3, 0)])
        bad = ss.SegmentPartition([1], [1], [2, 1], "integer")
        with pytest.raises(PartitionMismatch):
            ss.partition_to_labeling(bad, stamps, 7)


class TestLabelingSegments:
    @pytest.mark.parametrize(
        "labels,expected",
        [
            ([0, 0, 1], [(0, 0, 1), (1, 2, 2)]),
            ([0], [(0, 0, 0)]),
            ([0, -1, 0], [(0, 0, 0), (-1, 1, 1), (0, 2, 2)]),
        ],
    )
    def test_examples(self, labels, expected):
        segs = ss.labeling_to_segments(ss.FrameLabeling(np.array(labels)))
        assert [(s.label, s.start, s.end) for s in segs] == expected


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_partition_roundtrip_and_conservation(seed):
    rng = np.random.default_rng(seed)
    num_frames = int(rng.integers(1, 40))
    num_stamps = int(rng.integers(0, min(5, num_frames) + 1))
    frames = np.sort(rng.choice(num_frames, size=num_stamps, replace=False))
    stamps = ss.TimestampSet(frames, rng.integers(0, 3, size=num_stamps))
    part = random_integer_partition(rng, stamps, num_frames)

    lab = ss.partition_to_labeling(part, stamps, num_frames)
    # frame conservation
    labeled = int(np.count_nonzero(lab.labels != ss.UNKNOWN))
    assert labeled == int((part.left + part.right + 1).sum())
    assert labeled + int(part.gaps.sum()) == num_frames
    # every stamp frame keeps its label
    for frame, label in stamps.pairs():
        assert lab.labels[frame] == label
    # segments round-trip to the identical labeling
    segs = ss.labeling_to_segments(lab)
    assert np.array_equal(ss.segments_to_labeling(segs, num_frames).labels, lab.labels)
    # consecutive segments always change label and tile the video
    assert all(a.end + 1 == b.start for a, b in zip(segs, segs[1:]))
    assert all(a.label != b.label for a, b in zip(segs, segs[1:]))
    assert segs[0].start == 0 and segs[-1].end == num_frames - 1
