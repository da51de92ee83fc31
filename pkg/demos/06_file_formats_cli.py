"""The on-disk formats and the command-line pipeline.

Everything the library does is also reachable through the ``stampseg``
command (or ``python3 -m stampseg``), wired together by four small file
formats: a binary probability matrix (TSPM), JSON timestamp annotations,
one-integer-per-line labelings (-1 = unknown), and fixed-header CSV
tables for metrics and sweeps. This script builds a workspace in a temp
directory and drives the full pipeline through subprocesses.

Run:  python3 demos/06_file_formats_cli.py
"""

import subprocess
import sys
import tempfile
from pathlib import Path

import stampseg as ss
from stampseg import fileio


def cli(*args):
    cmd = [sys.executable, "-m", "stampseg", *map(str, args)]
    print("$ stampseg " + " ".join(map(str, args)))
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.stdout:
        print(proc.stdout.rstrip())
    if proc.returncode != 0:
        print(proc.stderr.rstrip())
    print()
    return proc.returncode


work = Path(tempfile.mkdtemp(prefix="stampseg-demo-"))
print(f"workspace: {work}\n")

cli("synth", "--segments", 8, "--length-range", "20,35", "--classes", 5,
    "--margin", "0.85", "--blur", "2", "--seed", 11,
    "--out-gt", work / "video.gt.csv", "--out-probs", work / "video.tspm")

# peek at the binary layout: magic, version, dimensions, float32 payload
raw = (work / "video.tspm").read_bytes()
frames = int.from_bytes(raw[5:9], "little")
classes = int.from_bytes(raw[9:13], "little")
print(f"TSPM header: magic={raw[:4]!r} version={raw[4]} T={frames} C={classes} "
      f"payload={len(raw) - 13} bytes\n")

cli("simulate", "place", "--gt", work / "video.gt.csv", "--strategy", "center",
    "--seed", 11, "--out", work / "video.json")
cli("simulate", "drop", "--stamps", work / "video.json", "--keep", "0.75",
    "--seed", 11, "--out", work / "video.kept.json")
print((work / "video.kept.json").read_text().splitlines()[0] + " ...\n")

cli("generate", "--probs", work / "video.tspm", "--stamps", work / "video.kept.json",
    "--beta", "0.7", "--lambda-s", "0.5", "--out", work / "video.labels.csv",
    "--trace-out", work / "video.trace.csv")

cli("eval", "--pred", work / "video.labels.csv", "--gt", work / "video.gt.csv",
    "--out", work / "video.metrics.csv")
print("metrics CSV header:")
print(" " + (work / "video.metrics.csv").read_text().splitlines()[0] + "\n")

cli("baseline", "--method", "uniform3", "--stamps", work / "video.kept.json",
    "--out", work / "video.uniform3.csv")
cli("eval", "--pred", work / "video.uniform3.csv", "--gt", work / "video.gt.csv")

cli("sweep-beta", "--probs", work / "video.tspm", "--stamps", work / "video.kept.json",
    "--gt", work / "video.gt.csv", "--betas", "0.1,0.7,2.0", "--lambda-s", "0.5",
    "--out", work / "video.sweep.csv")

# formats round-trip byte-identically
prob_values = fileio.read_prob_tspm(work / "video.tspm")
fileio.write_prob_tspm(work / "copy.tspm", prob_values)
identical = (work / "copy.tspm").read_bytes() == raw
print(f"TSPM read-then-write round-trip byte-identical: {identical}")

labeling = fileio.read_labeling(work / "video.labels.csv")
unknown = int((labeling.labels == ss.UNKNOWN).sum())
print(f"labeling file: {labeling.num_frames} lines, {unknown} unknown (-1) entries")
