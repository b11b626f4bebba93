"""Command-line entry points: run, stats, scene, layout, serve."""

from __future__ import annotations

import argparse
import json
import sys

from .geometry import CanvasSpec, ViewState
from .harness import (
    ExperimentConfig,
    TrialRecord,
    friedman,
    parse_csv,
    run_experiment,
    write_csv,
)
from .placement import STRATEGIES, place, layout_to_dict
from .scene import SceneConfig, generate_scene, scene_from_json, scene_to_json
from .tasks import TASK_KINDS


def _csv_list(text: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in text.split(",") if part.strip())


def cmd_run(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        conditions=_csv_list(args.conditions),
        tasks=_csv_list(args.tasks),
        sizes=tuple(int(s) for s in _csv_list(args.sizes)),
        trials_per_cell=args.trials,
        master_seed=args.seed,
    )
    records = run_experiment(config, workers=args.parallel)
    with open(args.out, "w", encoding="utf-8", newline="") as fp:
        write_csv(records, fp)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def _group_key(record: TrialRecord, by: tuple[str, ...]) -> tuple:
    return tuple(getattr(record, col) for col in by)


def cmd_stats(args: argparse.Namespace) -> int:
    with open(args.infile, encoding="utf-8", newline="") as fp:
        records = parse_csv(fp)
    by = _csv_list(args.by) if args.by else ("condition", "task")
    for col in by:
        if col not in ("condition", "task", "size"):
            print(f"cannot group by {col!r}", file=sys.stderr)
            return 2

    groups: dict[tuple, list[TrialRecord]] = {}
    for r in records:
        groups.setdefault(_group_key(r, by), []).append(r)
    for key in sorted(groups, key=str):
        rows = groups[key]
        times = [r.proxy_time_s for r in rows]
        mean = sum(times) / len(times)
        label = " ".join(f"{c}={v}" for c, v in zip(by, key))
        print(f"{label} n={len(rows)} mean_proxy_time_s={mean:.3f}")

    if args.friedman:
        metric = args.friedman
        if not records or not hasattr(records[0], metric):
            print(f"no such metric: {metric!r}", file=sys.stderr)
            return 2
        conditions = [c for c in STRATEGIES if any(r.condition == c for r in records)]
        blocks: dict[tuple, dict[str, float]] = {}
        for r in records:
            block = blocks.setdefault((r.task, r.size, r.trial_index), {})
            block[r.condition] = float(getattr(r, metric))
        matrix = [
            [block[c] for c in conditions]
            for block in blocks.values()
            if all(c in block for c in conditions)
        ]
        if len(matrix) < 2 or len(conditions) < 2:
            print("friedman: not enough complete blocks", file=sys.stderr)
            return 2
        result = friedman(matrix)
        print(
            f"friedman({metric}): chi2={result.chi2:.6f} "
            f"df={result.df} p={result.p:.6g}"
        )
    return 0


def cmd_scene(args: argparse.Namespace) -> int:
    config = SceneConfig(size=args.size)
    scene = generate_scene(config, args.seed)
    text = scene_to_json(scene, config)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_layout(args: argparse.Namespace) -> int:
    with open(args.scene, encoding="utf-8") as fp:
        scene = scene_from_json(fp.read())
    layout = place(
        args.condition,
        scene,
        ViewState(yaw_deg=args.yaw, pitch_deg=args.pitch),
        CanvasSpec(),
    )
    text = json.dumps(layout_to_dict(layout), indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fp:
            fp.write(text + "\n")
    else:
        print(text)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arlabel",
        description="Label-placement simulator for 360-degree object fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the simulated experiment grid")
    p_run.add_argument("--conditions", default=",".join(STRATEGIES))
    p_run.add_argument("--tasks", default=",".join(TASK_KINDS))
    p_run.add_argument("--sizes", default="10,20")
    p_run.add_argument("--trials", type=int, default=6)
    p_run.add_argument("--seed", type=int, default=42)
    p_run.add_argument("--out", required=True)
    p_run.add_argument("--parallel", type=int, default=None, metavar="WORKERS")
    p_run.set_defaults(func=cmd_run)

    p_stats = sub.add_parser("stats", help="summaries and the Friedman test")
    p_stats.add_argument("--in", dest="infile", required=True)
    p_stats.add_argument("--by", default="condition,task")
    p_stats.add_argument("--friedman", default=None, metavar="METRIC")
    p_stats.set_defaults(func=cmd_stats)

    p_scene = sub.add_parser("scene", help="generate a scene JSON")
    p_scene.add_argument("--size", type=int, default=10)
    p_scene.add_argument("--seed", type=int, default=42)
    p_scene.add_argument("--out", default=None)
    p_scene.set_defaults(func=cmd_scene)

    p_layout = sub.add_parser("layout", help="compute a label layout JSON")
    p_layout.add_argument("--scene", required=True)
    p_layout.add_argument("--condition", required=True, choices=STRATEGIES)
    p_layout.add_argument("--yaw", type=float, default=0.0)
    p_layout.add_argument("--pitch", type=float, default=0.0)
    p_layout.add_argument("--out", default=None)
    p_layout.set_defaults(func=cmd_layout)

    p_serve = sub.add_parser("serve", help="start the local HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
