"""Experiment runner, CSV logging, descriptive stats, and the Friedman test.

Child seeds are derived by hashing the master seed with the full cell
coordinates, so results are identical under any execution order or degree
of parallelism.
"""

from __future__ import annotations

import csv
import hashlib
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .agent import AgentConfig, TrialRecord, run_trial
from .geometry import CanvasSpec
from .placement import STRATEGIES
from .scene import SceneConfig, generate_scene
from .tasks import TASK_KINDS, build_task

CSV_COLUMNS = (
    "trial_id",
    "condition",
    "task",
    "size",
    "seed",
    "travel_deg",
    "gaze_deg",
    "labels_read",
    "context_switches",
    "num_travels",
    "proxy_time_s",
    "answer",
    "correct",
)

VALID_SIZES = (10, 20)


class DegenerateInput(Exception):
    pass


class CellError(Exception):
    """A trial failed; carries the full cell coordinates."""

    def __init__(self, condition: str, task: str, size: int, index: int, cause: Exception):
        super().__init__(
            f"trial failed at condition={condition} task={task} "
            f"size={size} trial={index}: {cause!r}"
        )
        self.cell = (condition, task, size, index)
        self.cause = cause


@dataclass(frozen=True)
class ExperimentConfig:
    conditions: tuple[str, ...] = STRATEGIES
    tasks: tuple[str, ...] = TASK_KINDS
    sizes: tuple[int, ...] = VALID_SIZES
    trials_per_cell: int = 6
    master_seed: int = 42
    agent: AgentConfig = field(default_factory=AgentConfig)
    canvas: CanvasSpec = field(default_factory=CanvasSpec)

    def __post_init__(self) -> None:
        if not self.conditions or not self.tasks or not self.sizes:
            raise ValueError("conditions, tasks, and sizes must be non-empty")
        for c in self.conditions:
            if c not in STRATEGIES:
                raise ValueError(f"unknown condition: {c!r}")
        for t in self.tasks:
            if t not in TASK_KINDS:
                raise ValueError(f"unknown task: {t!r}")
        for s in self.sizes:
            if s not in VALID_SIZES:
                raise ValueError(f"unsupported size: {s}")
        if self.trials_per_cell < 1:
            raise ValueError("trials_per_cell must be >= 1")


def stable_seed(master_seed: int, condition: str, task: str, size: int, index: int) -> int:
    """Deterministic 63-bit child seed, independent of Python's hash salt."""
    key = f"{master_seed}|{condition}|{task}|{size}|{index}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big") >> 1


def _cells(config: ExperimentConfig) -> list[tuple[str, str, int, int]]:
    # Canonical order, independent of the order selections were given in.
    conditions = [c for c in STRATEGIES if c in config.conditions]
    tasks = [t for t in TASK_KINDS if t in config.tasks]
    sizes = sorted(set(config.sizes))
    return [
        (c, t, s, i)
        for c in conditions
        for t in tasks
        for s in sizes
        for i in range(config.trials_per_cell)
    ]


def _run_cell(args: tuple[ExperimentConfig, str, str, int, int]) -> TrialRecord:
    config, condition, task, size, index = args
    seed = stable_seed(config.master_seed, condition, task, size, index)
    try:
        scene = generate_scene(SceneConfig(size=size), seed)
        instance = build_task(task, scene, seed)
        return run_trial(
            instance,
            condition,
            config.agent,
            config.canvas,
            size=size,
            trial_index=index,
            seed=seed,
        )
    except Exception as exc:  # keep the cell coordinates in the report
        raise CellError(condition, task, size, index, exc) from exc


def run_experiment(
    config: ExperimentConfig, workers: int | None = None
) -> list[TrialRecord]:
    """All trial records in canonical cell order.

    workers > 1 runs cells in a process pool; output is identical to the
    sequential run.
    """
    cells = _cells(config)
    jobs = [(config, c, t, s, i) for (c, t, s, i) in cells]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_run_cell, jobs, chunksize=8))
    return [_run_cell(job) for job in jobs]


# ---------------------------------------------------------------------------
# CSV


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)  # shortest exact round-trip form
    return str(value)


def trial_id(record: TrialRecord) -> str:
    return f"{record.condition}:{record.task}:{record.size}:{record.trial_index}"


def write_csv(records: list[TrialRecord], fp) -> None:
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                trial_id(r),
                r.condition,
                r.task,
                _format_value(r.size),
                _format_value(r.seed),
                _format_value(r.travel_deg),
                _format_value(r.gaze_deg),
                _format_value(r.labels_read),
                _format_value(r.context_switches),
                _format_value(r.num_travels),
                _format_value(r.proxy_time_s),
                r.answer,
                _format_value(r.correct),
            ]
        )


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def parse_csv(fp) -> list[TrialRecord]:
    reader = csv.reader(fp)
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header: {header}")
    records = []
    for row in reader:
        vals = dict(zip(CSV_COLUMNS, row))
        records.append(
            TrialRecord(
                condition=vals["condition"],
                task=vals["task"],
                size=int(vals["size"]),
                trial_index=int(vals["trial_id"].rsplit(":", 1)[1]),
                seed=int(vals["seed"]),
                travel_deg=float(vals["travel_deg"]),
                gaze_deg=float(vals["gaze_deg"]),
                labels_read=int(vals["labels_read"]),
                context_switches=int(vals["context_switches"]),
                num_travels=int(vals["num_travels"]),
                proxy_time_s=float(vals["proxy_time_s"]),
                answer=vals["answer"],
                correct=vals["correct"] == "true",
            )
        )
    return records


# ---------------------------------------------------------------------------
# Statistics


@dataclass(frozen=True)
class SummaryRow:
    condition: str
    task: str
    size: int
    n: int
    mean_proxy_time_s: float
    ci95_halfwidth_s: float
    mean_travel_deg: float
    mean_num_travels: float


def _mean(xs: list[float]) -> float:
    return sum(xs) / len(xs)


def _ci95_halfwidth(xs: list[float]) -> float:
    n = len(xs)
    if n < 2:
        return 0.0
    m = _mean(xs)
    s = math.sqrt(sum((x - m) ** 2 for x in xs) / (n - 1))
    return 1.96 * s / math.sqrt(n)


def summarize_records(records: list[TrialRecord]) -> list[SummaryRow]:
    cells: dict[tuple[str, str, int], list[TrialRecord]] = {}
    for r in records:
        cells.setdefault((r.condition, r.task, r.size), []).append(r)

    def cell_order(key: tuple[str, str, int]):
        c, t, s = key
        ci = STRATEGIES.index(c) if c in STRATEGIES else len(STRATEGIES)
        ti = TASK_KINDS.index(t) if t in TASK_KINDS else len(TASK_KINDS)
        return (ci, ti, s)

    rows = []
    for key in sorted(cells, key=cell_order):
        group = cells[key]
        times = [r.proxy_time_s for r in group]
        rows.append(
            SummaryRow(
                condition=key[0],
                task=key[1],
                size=key[2],
                n=len(group),
                mean_proxy_time_s=_mean(times),
                ci95_halfwidth_s=_ci95_halfwidth(times),
                mean_travel_deg=_mean([r.travel_deg for r in group]),
                mean_num_travels=_mean([float(r.num_travels) for r in group]),
            )
        )
    return rows


@dataclass(frozen=True)
class FriedmanResult:
    chi2: float
    df: int
    p: float


def _average_ranks(row: list[float]) -> list[float]:
    order = sorted(range(len(row)), key=lambda j: row[j])
    ranks = [0.0] * len(row)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and row[order[j + 1]] == row[order[i]]:
            j += 1
        avg = (i + j) / 2.0 + 1.0  # ranks are 1-based
        for idx in order[i : j + 1]:
            ranks[idx] = avg
        i = j + 1
    return ranks


def friedman(matrix: list[list[float]]) -> FriedmanResult:
    """Friedman rank test over an n-subjects x k-conditions matrix."""
    n = len(matrix)
    if n < 2:
        raise DegenerateInput("need at least 2 subjects")
    k = len(matrix[0])
    if k < 2:
        raise DegenerateInput("need at least 2 conditions")
    if any(len(row) != k for row in matrix):
        raise DegenerateInput("ragged matrix")

    rank_means = [0.0] * k
    for row in matrix:
        for j, r in enumerate(_average_ranks(list(row))):
            rank_means[j] += r
    rank_means = [s / n for s in rank_means]

    center = (k + 1) / 2.0
    chi2 = 12.0 * n / (k * (k + 1)) * sum((rm - center) ** 2 for rm in rank_means)
    df = k - 1
    return FriedmanResult(chi2=chi2, df=df, p=chi2_sf(chi2, df))


def chi2_sf(x: float, df: int) -> float:
    """Upper-tail chi-square probability Q(df/2, x/2)."""
    if x <= 0:
        return 1.0
    return _gammaincc_regularized(df / 2.0, x / 2.0)


def _gammaincc_regularized(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0.

    Series expansion for x < a + 1, Lentz continued fraction otherwise.
    """
    if x < 0 or a <= 0:
        raise ValueError("domain error")
    if x == 0:
        return 1.0
    lg = math.lgamma(a)
    if x < a + 1.0:
        # P(a, x) by series; Q = 1 - P.
        term = 1.0 / a
        total = term
        ap = a
        for _ in range(1000):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * 1e-16:
                break
        p = total * math.exp(-x + a * math.log(x) - lg)
        return max(0.0, min(1.0, 1.0 - p))
    # Modified Lentz for the continued fraction of Q.
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    q = math.exp(-x + a * math.log(x) - lg) * h
    return max(0.0, min(1.0, q))
