"""On-disk formats: binary probability matrices, CSV labelings, JSON stamps.

Formats (bit-exact):

* Probability matrix, binary (.tspm): magic ``TSPM``, version byte 0x01,
  uint32-LE frame count T, uint32-LE class count C, then T*C float32-LE
  values row-major. CSV alternative: T lines of C comma-separated decimals,
  no header.
* Timestamps: JSON object ``{"num_frames": int, "timestamps": [{"frame":
  int, "label": int}, ...]}`` with 0-based ascending frames. Written in a
  canonical 2-space-indented rendering.
* Labelings / ground truth: CSV, one integer per line, -1 = UNKNOWN,
  exactly T lines.
* Metrics and sweep tables: CSV with the fixed header rows documented on
  the writer functions.

Readers return raw arrays so that read-then-write round-trips are
byte-identical; validation and probability clamping happen when the raw
data is turned into domain types. CSV floats are rendered with Python's
shortest round-trip decimal representation.
"""

from __future__ import annotations

import json
import struct
from pathlib import Path

import numpy as np

from .core import FrameLabeling, ProbMatrix, TimestampSet, VideoGroundTruth
from .errors import FormatError, StampsegError
from .metrics import MetricsReport

TSPM_MAGIC = b"TSPM"
TSPM_VERSION = 1

METRICS_HEADER = (
    "video,acc,edit,prec_10,rec_10,f1_10,prec_25,rec_25,f1_25,"
    "prec_50,rec_50,f1_50,labeled_precision,coverage"
)
SWEEP_HEADER = (
    "beta,total_gap,acc,edit,prec_10,rec_10,f1_10,prec_25,rec_25,f1_25,"
    "prec_50,rec_50,f1_50,labeled_precision,coverage"
)
TRACE_HEADER = "iteration,objective"


# ---------------------------------------------------------------- matrices


def write_prob_tspm(path, values: np.ndarray) -> None:
    """Write a T x C matrix in the binary TSPM layout (float32 payload)."""
    values = np.asarray(values)
    if values.ndim != 2:
        raise StampsegError(f"probability matrix must be 2-D, got shape {values.shape}")
    t, c = values.shape
    with open(path, "wb") as fh:
        fh.write(TSPM_MAGIC)
        fh.write(struct.pack("<BII", TSPM_VERSION, t, c))
        fh.write(np.ascontiguousarray(values, dtype="<f4").tobytes())


def read_prob_tspm(path) -> np.ndarray:
    """Read a binary TSPM file; returns the raw float32 payload as written."""
    with open(path, "rb") as fh:
        header = fh.read(13)
        if len(header) < 13:
            raise FormatError(f"{path}: truncated header ({len(header)} bytes, need 13)")
        magic = header[:4]
        if magic != TSPM_MAGIC:
            raise FormatError(f"{path}: bad magic bytes {magic!r}, expected {TSPM_MAGIC!r}")
        version, t, c = struct.unpack("<BII", header[4:])
        if version != TSPM_VERSION:
            raise FormatError(f"{path}: unsupported version {version}, expected {TSPM_VERSION}")
        payload = fh.read()
    expected = 4 * t * c
    if len(payload) != expected:
        raise FormatError(
            f"{path}: payload is {len(payload)} bytes at offset 13, expected {expected} for {t}x{c}"
        )
    return np.frombuffer(payload, dtype="<f4").reshape(t, c).astype("<f4")


def write_prob_csv(path, values: np.ndarray) -> None:
    """Write a matrix as T lines of C comma-separated decimals, no header."""
    values = np.asarray(values, dtype=np.float64)
    lines = [",".join(repr(float(x)) for x in row) for row in values]
    Path(path).write_text("\n".join(lines) + "\n")


def read_prob_csv(path) -> np.ndarray:
    lines = Path(path).read_text().splitlines()
    rows = []
    width = None
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            row = [float(x) for x in line.split(",")]
        except ValueError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise FormatError(f"{path}:{lineno}: row has {len(row)} values, expected {width}")
        rows.append(row)
    if not rows:
        raise FormatError(f"{path}: no probability rows")
    return np.asarray(rows, dtype=np.float64)


def read_prob_auto(path) -> np.ndarray:
    """Dispatch on extension; unknown extensions are sniffed by magic bytes."""
    path = Path(path)
    if path.suffix == ".tspm":
        return read_prob_tspm(path)
    if path.suffix == ".csv":
        return read_prob_csv(path)
    with open(path, "rb") as fh:
        head = fh.read(4)
    return read_prob_tspm(path) if head == TSPM_MAGIC else read_prob_csv(path)


def load_prob_matrix(path) -> ProbMatrix:
    """Read and validate a probability matrix (clamped + renormalized)."""
    try:
        return ProbMatrix(read_prob_auto(path))
    except StampsegError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{path}: {exc}") from None


# -------------------------------------------------------------- timestamps


def write_timestamps(path, num_frames: int, stamps: TimestampSet) -> None:
    payload = {
        "num_frames": int(num_frames),
        "timestamps": [{"frame": f, "label": y} for f, y in stamps.pairs()],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def read_timestamps(path) -> tuple[int, TimestampSet]:
    """Returns (num_frames, stamps); validates field types and frame order."""
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(payload, dict) or "num_frames" not in payload or "timestamps" not in payload:
        raise FormatError(f"{path}: expected object with 'num_frames' and 'timestamps'")
    num_frames = payload["num_frames"]
    if not isinstance(num_frames, int) or num_frames < 1:
        raise FormatError(f"{path}: 'num_frames' must be a positive integer, got {num_frames!r}")
    frames, labels = [], []
    for i, entry in enumerate(payload["timestamps"]):
        if not isinstance(entry, dict) or "frame" not in entry or "label" not in entry:
            raise FormatError(f"{path}: timestamps[{i}] must have 'frame' and 'label'")
        if not isinstance(entry["frame"], int) or not isinstance(entry["label"], int):
            raise FormatError(f"{path}: timestamps[{i}] fields must be integers")
        frames.append(entry["frame"])
        labels.append(entry["label"])
    try:
        stamps = TimestampSet(np.array(frames, dtype=np.int64), np.array(labels, dtype=np.int64))
    except StampsegError as exc:
        raise FormatError(f"{path}: {exc}") from None
    if stamps.num_stamps and stamps.frames[-1] >= num_frames:
        raise FormatError(f"{path}: frame {int(stamps.frames[-1])} outside [0, {num_frames})")
    return num_frames, stamps


# --------------------------------------------------------------- labelings


def write_labeling(path, labels: np.ndarray) -> None:
    """One integer per line; -1 encodes UNKNOWN."""
    labels = np.asarray(labels, dtype=np.int64)
    Path(path).write_text("\n".join(str(int(x)) for x in labels) + "\n")


def _read_label_column(path) -> np.ndarray:
    values = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise FormatError(f"{path}:{lineno}: expected an integer label, got {line!r}") from None
    if not values:
        raise FormatError(f"{path}: no labels")
    return np.asarray(values, dtype=np.int64)


def read_labeling(path) -> FrameLabeling:
    try:
        return FrameLabeling(_read_label_column(path))
    except StampsegError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"{path}: {exc}") from None


def read_ground_truth(path) -> VideoGroundTruth:
    labels = _read_label_column(path)
    if labels.min() < 0:
        line = int(np.argmax(labels < 0)) + 1
        raise FormatError(f"{path}:{line}: ground truth may not contain UNKNOWN (-1)")
    return VideoGroundTruth(labels)


# ------------------------------------------------------------------ tables


def _report_cells(report: MetricsReport) -> list[str]:
    cells = [repr(report.acc), repr(report.edit)]
    for tau in (10, 25, 50):
        precision, recall, f1 = report.f1[tau]
        cells += [repr(precision), repr(recall), repr(f1)]
    cells += [repr(report.labeled_precision), repr(report.coverage)]
    return cells


def write_metrics_csv(path, rows: list[tuple[str, MetricsReport]]) -> None:
    """Rows of (video name, report) under the METRICS_HEADER columns."""
    lines = [METRICS_HEADER]
    for name, report in rows:
        lines.append(",".join([name] + _report_cells(report)))
    Path(path).write_text("\n".join(lines) + "\n")


def write_sweep_csv(path, rows) -> None:
    """SweepRow records under the SWEEP_HEADER columns."""
    lines = [SWEEP_HEADER]
    for row in rows:
        cells = [repr(row.beta), str(row.total_gap), repr(row.acc), repr(row.edit)]
        for tau in (10, 25, 50):
            precision, recall, f1 = row.f1[tau]
            cells += [repr(precision), repr(recall), repr(f1)]
        cells += [repr(row.labeled_precision), repr(row.coverage)]
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")


def write_trace_csv(path, objectives: np.ndarray) -> None:
    lines = [TRACE_HEADER]
    lines += [f"{i},{repr(float(v))}" for i, v in enumerate(objectives)]
    Path(path).write_text("\n".join(lines) + "\n")
