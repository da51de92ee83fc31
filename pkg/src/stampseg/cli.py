"""Command-line interface.

Subcommands: ``generate`` (timestamps -> labeling), ``baseline``,
``eval`` (single files or paired directories), ``oracle`` (exact
small-instance minimizer), ``simulate drop``/``simulate place``,
``synth``, and ``sweep-beta``. Exit status 0 on success, 1 for I/O or
format problems (with the offending file named), 2 for usage errors.

Batch ``eval`` pairs files by identical names in the two directories,
scores videos concurrently, and aggregates deterministically in name
order: edit and F1 are averaged per video while accuracy, labeled
precision, and coverage are frame-weighted across the batch.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import fileio
from .baselines import gt_oracle, timestamps_only, uniform_k
from .core import UNKNOWN, partition_to_labeling, validate_inputs
from .errors import StampsegError
from .metrics import MetricsReport, evaluate
from .optimizer import OptimizerConfig, generate_labels
from .oracle import OracleLimits, brute_force_min
from .simulate import SynthSpec, drop_timestamps, place_timestamps, sweep_beta, synth_video


def _add_optimizer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--beta", type=float, default=0.7, help="penalty per unknown frame")
    parser.add_argument("--lr", type=float, default=0.03, help="Adam learning rate")
    parser.add_argument("--iterations", type=int, default=30, help="Adam iterations")
    parser.add_argument("--lambda-s", type=float, default=0.025, dest="lambda_s",
                        help="plateau transition sharpness (1/frames)")
    parser.add_argument("--init", default="uniform",
                        help="'uniform' or 'fixed:<seconds>' (fixed needs --fps)")
    parser.add_argument("--fps", type=float, default=None, help="frames per second for fixed init")
    parser.add_argument("--seed", type=int, default=0)


def _config_from_args(parser: argparse.ArgumentParser, args) -> OptimizerConfig:
    init, seconds = args.init, 3.0
    if init.startswith("fixed"):
        if ":" in init:
            init, _, raw = init.partition(":")
            try:
                seconds = float(raw)
            except ValueError:
                parser.error(f"bad --init duration {raw!r}")
        if args.fps is None:
            parser.error("--init fixed requires --fps")
        init = "fixed"
    elif init != "uniform":
        parser.error(f"unknown --init scheme {args.init!r}")
    return OptimizerConfig(
        gap_penalty=args.beta,
        learning_rate=args.lr,
        iterations=args.iterations,
        sharpness=args.lambda_s,
        init=init,
        init_seconds=seconds,
        fps=args.fps,
        seed=args.seed,
    )


def _parse_taus(raw: str) -> tuple[int, ...]:
    return tuple(int(x) for x in raw.split(","))


def _print_report(report: MetricsReport, taus) -> None:
    print(f"Acc: {report.acc:.4f}")
    print(f"Edit: {report.edit:.4f}")
    for tau in taus:
        _, _, f1 = report.f1[tau]
        print(f"F1@{tau}: {f1:.4f}")
    print(f"Labeled precision: {report.labeled_precision:.4f}")
    print(f"Coverage: {report.coverage:.4f}")


def _cmd_generate(parser, args) -> int:
    cfg = _config_from_args(parser, args)
    prob = fileio.load_prob_matrix(args.probs)
    num_frames, stamps = fileio.read_timestamps(args.stamps)
    if num_frames != prob.num_frames:
        raise StampsegError(
            f"{args.stamps}: num_frames {num_frames} disagrees with {args.probs} ({prob.num_frames})"
        )
    labeling, trace = generate_labels(prob, stamps, cfg)
    fileio.write_labeling(args.out, labeling.labels)
    if trace is not None:
        if args.trace_out:
            fileio.write_trace_csv(args.trace_out, trace.objectives)
        unknown = int(np.count_nonzero(labeling.labels == UNKNOWN))
        print(
            f"objective {trace.objectives[0]:.6g} -> {trace.objectives.min():.6g} "
            f"in {trace.objectives.size - 1} iterations; {unknown}/{labeling.num_frames} frames unknown"
        )
    else:
        print("no timestamps: labeled everything unknown")
    return 0


def _cmd_baseline(parser, args) -> int:
    num_frames, stamps = fileio.read_timestamps(args.stamps)
    if args.method == "gt-oracle":
        if not args.gt:
            parser.error("--method gt-oracle requires --gt")
        gt = fileio.read_ground_truth(args.gt)
        labeling = gt_oracle(gt, stamps)
    elif args.method == "timestamps":
        labeling = timestamps_only(stamps, num_frames)
    else:
        labeling = uniform_k(stamps, num_frames, k=2 if args.method == "uniform2" else 3)
    fileio.write_labeling(args.out, labeling.labels)
    return 0


def _eval_one(pred_path, gt_path, taus) -> tuple[MetricsReport, np.ndarray, np.ndarray]:
    pred = fileio.read_labeling(pred_path)
    gt = fileio.read_ground_truth(gt_path)
    # the CSV header always carries 10/25/50, whatever --tau asks to print
    all_taus = tuple(dict.fromkeys(taus + (10, 25, 50)))
    return evaluate(pred, gt, all_taus), pred.labels, gt.labels


def _cmd_eval(parser, args) -> int:
    taus = _parse_taus(args.tau)
    pred_path, gt_path = Path(args.pred), Path(args.gt)
    if pred_path.is_dir() != gt_path.is_dir():
        parser.error("--pred and --gt must both be files or both be directories")

    if not pred_path.is_dir():
        report, _, _ = _eval_one(pred_path, gt_path, taus)
        _print_report(report, taus)
        if args.out:
            fileio.write_metrics_csv(args.out, [(pred_path.name, report)])
        return 0

    names = sorted(p.name for p in pred_path.iterdir() if p.is_file())
    if not names:
        raise StampsegError(f"{pred_path}: no prediction files")
    for name in names:
        if not (gt_path / name).is_file():
            raise StampsegError(f"{gt_path / name}: missing ground truth for {name}")
    with ThreadPoolExecutor() as pool:
        results = list(pool.map(lambda n: _eval_one(pred_path / n, gt_path / n, taus), names))

    rows = [(name, report) for name, (report, _, _) in zip(names, results)]
    total_frames = sum(pred.size for _, pred, _ in results)
    correct = sum(int(np.count_nonzero(pred == gt)) for _, pred, gt in results)
    labeled = sum(int(np.count_nonzero(pred != UNKNOWN)) for _, pred, _ in results)
    labeled_correct = sum(
        int(np.count_nonzero((pred != UNKNOWN) & (pred == gt))) for _, pred, gt in results
    )
    all_taus = tuple(dict.fromkeys(taus + (10, 25, 50)))
    aggregate = MetricsReport(
        acc=100.0 * correct / total_frames,
        edit=float(np.mean([r.edit for _, r in rows])),
        f1={
            tau: tuple(float(np.mean([r.f1[tau][j] for _, r in rows])) for j in range(3))
            for tau in all_taus
        },
        labeled_precision=100.0 * labeled_correct / labeled if labeled else 100.0,
        coverage=100.0 * labeled / total_frames,
    )
    print(f"{len(names)} videos")
    _print_report(aggregate, taus)
    if args.out:
        fileio.write_metrics_csv(args.out, rows + [("ALL", aggregate)])
    return 0


def _cmd_oracle(parser, args) -> int:
    prob = fileio.load_prob_matrix(args.probs)
    num_frames, stamps = fileio.read_timestamps(args.stamps)
    if num_frames != prob.num_frames:
        raise StampsegError(
            f"{args.stamps}: num_frames {num_frames} disagrees with {args.probs} ({prob.num_frames})"
        )
    validate_inputs(prob, stamps)
    part, value = brute_force_min(prob, stamps, args.beta, OracleLimits(max_states=args.max_states))
    print(f"optimal objective {value!r}; total unknown frames {int(part.gaps.sum())}")
    if args.out:
        labeling = partition_to_labeling(part, stamps, prob.num_frames)
        fileio.write_labeling(args.out, labeling.labels)
    return 0


def _cmd_simulate_drop(parser, args) -> int:
    num_frames, stamps = fileio.read_timestamps(args.stamps)
    prob = fileio.load_prob_matrix(args.probs) if args.probs else None
    if args.weighting == "confidence" and prob is None:
        parser.error("--weighting confidence requires --probs")
    kept = drop_timestamps(stamps, args.keep, seed=args.seed, weighting=args.weighting, prob=prob)
    fileio.write_timestamps(args.out, num_frames, kept)
    print(f"kept {kept.num_stamps}/{stamps.num_stamps} timestamps")
    return 0


def _cmd_simulate_place(parser, args) -> int:
    gt = fileio.read_ground_truth(args.gt)
    stamps = place_timestamps(gt, args.strategy, seed=args.seed)
    fileio.write_timestamps(args.out, gt.num_frames, stamps)
    print(f"placed {stamps.num_stamps} timestamps")
    return 0


def _cmd_synth(parser, args) -> int:
    try:
        min_len, max_len = (int(x) for x in args.length_range.split(","))
    except ValueError:
        parser.error(f"bad --length-range {args.length_range!r}, expected MIN,MAX")
    spec = SynthSpec(
        num_segments=args.segments,
        min_length=min_len,
        max_length=max_len,
        num_classes=args.classes,
        margin=args.margin,
        boundary_blur=args.blur,
        seed=args.seed,
    )
    gt, prob = synth_video(spec)
    fileio.write_labeling(args.out_gt, gt.labels)
    if Path(args.out_probs).suffix == ".csv":
        fileio.write_prob_csv(args.out_probs, prob.values)
    else:
        fileio.write_prob_tspm(args.out_probs, prob.values)
    print(f"synthesized {gt.num_frames} frames, {args.segments} segments, {args.classes} classes")
    return 0


def _cmd_sweep_beta(parser, args) -> int:
    cfg = _config_from_args(parser, args)
    prob = fileio.load_prob_matrix(args.probs)
    num_frames, stamps = fileio.read_timestamps(args.stamps)
    gt = fileio.read_ground_truth(args.gt)
    if num_frames != prob.num_frames or gt.num_frames != prob.num_frames:
        raise StampsegError(f"{args.probs}: frame counts of probs/stamps/gt disagree")
    try:
        betas = [float(x) for x in args.betas.split(",")]
    except ValueError:
        parser.error(f"bad --betas {args.betas!r}, expected comma-separated numbers")
    rows = sweep_beta(prob, stamps, gt, betas, cfg, use_oracle=args.use_oracle)
    fileio.write_sweep_csv(args.out, rows)
    for row in rows:
        print(
            f"beta={row.beta:g} gap={row.total_gap} acc={row.acc:.2f} "
            f"labeled_precision={row.labeled_precision:.2f} coverage={row.coverage:.2f}"
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stampseg",
        description="Dense frame labelings with explicit unknown regions from timestamp annotations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="optimize boundaries and write a labeling")
    p.add_argument("--probs", required=True)
    p.add_argument("--stamps", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--trace-out", dest="trace_out", default=None)
    _add_optimizer_flags(p)

    p = sub.add_parser("baseline", help="run a reference labeler")
    p.add_argument("--method", required=True, choices=["timestamps", "uniform2", "uniform3", "gt-oracle"])
    p.add_argument("--stamps", required=True)
    p.add_argument("--gt", default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("eval", help="score a labeling (or a directory of them)")
    p.add_argument("--pred", required=True)
    p.add_argument("--gt", required=True)
    p.add_argument("--tau", default="10,25,50")
    p.add_argument("--out", default=None)

    p = sub.add_parser("oracle", help="exact minimizer for small instances")
    p.add_argument("--probs", required=True)
    p.add_argument("--stamps", required=True)
    p.add_argument("--beta", type=float, default=0.7)
    p.add_argument("--max-states", dest="max_states", type=float, default=1e8)
    p.add_argument("--out", default=None)

    p = sub.add_parser("simulate", help="annotation simulators")
    sim = p.add_subparsers(dest="simulate_command", required=True)
    d = sim.add_parser("drop", help="randomly remove timestamps")
    d.add_argument("--stamps", required=True)
    d.add_argument("--keep", type=float, required=True)
    d.add_argument("--weighting", default="uniform", choices=["uniform", "confidence"])
    d.add_argument("--probs", default=None)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out", required=True)
    pl = sim.add_parser("place", help="place one timestamp per ground-truth run")
    pl.add_argument("--gt", required=True)
    pl.add_argument("--strategy", required=True, choices=["start", "center", "uniform", "gaussian"])
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--out", required=True)

    p = sub.add_parser("synth", help="generate a synthetic video")
    p.add_argument("--segments", type=int, required=True)
    p.add_argument("--length-range", dest="length_range", required=True, help="MIN,MAX frames")
    p.add_argument("--classes", type=int, required=True)
    p.add_argument("--margin", type=float, required=True)
    p.add_argument("--blur", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out-gt", dest="out_gt", required=True)
    p.add_argument("--out-probs", dest="out_probs", required=True)

    p = sub.add_parser("sweep-beta", help="labelings and scores across a beta grid")
    p.add_argument("--probs", required=True)
    p.add_argument("--stamps", required=True)
    p.add_argument("--gt", required=True)
    p.add_argument("--betas", required=True, help="comma-separated grid")
    p.add_argument("--use-oracle", dest="use_oracle", action="store_true")
    p.add_argument("--out", required=True)
    _add_optimizer_flags(p)

    return parser


_DISPATCH = {
    "generate": _cmd_generate,
    "baseline": _cmd_baseline,
    "eval": _cmd_eval,
    "oracle": _cmd_oracle,
    "synth": _cmd_synth,
    "sweep-beta": _cmd_sweep_beta,
}


def run(argv) -> int:
    """Parse and execute; returns the process exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.command == "simulate":
            handler = _cmd_simulate_drop if args.simulate_command == "drop" else _cmd_simulate_place
            return handler(parser, args)
        return _DISPATCH[args.command](parser, args)
    except SystemExit as exc:  # parser.error inside a handler
        return exc.code if isinstance(exc.code, int) else 2
    except (StampsegError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
