"""Deterministic simulator for AR label placement around a 360-degree
field of objects: scene generation, five placement strategies, task
builders, a synthetic search agent, and an experiment harness."""

from .geometry import (
    CanvasSpec,
    ScreenPoint,
    ViewState,
    WorldPosition,
    is_in_view,
    normalize_angle,
    project,
    relative_direction,
)
from .scene import Scene, SceneConfig, SceneObject, generate_scene, validate_scene
from .placement import (
    STRATEGIES,
    LabelBox,
    LabelLayout,
    LeaderLine,
    place,
    layout_metrics,
    layout_to_dict,
    layout_to_json,
    resolve_overlaps_1d,
)
from .tasks import TaskInstance, build_task, oracle_answer
from .agent import AgentConfig, TrialRecord, min_rotation, run_trial
from .harness import (
    ExperimentConfig,
    friedman,
    parse_csv,
    run_experiment,
    summarize_records,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AgentConfig",
    "CanvasSpec",
    "ExperimentConfig",
    "LabelBox",
    "LabelLayout",
    "LeaderLine",
    "STRATEGIES",
    "Scene",
    "SceneConfig",
    "SceneObject",
    "ScreenPoint",
    "TaskInstance",
    "TrialRecord",
    "ViewState",
    "WorldPosition",
    "build_task",
    "friedman",
    "generate_scene",
    "is_in_view",
    "layout_metrics",
    "layout_to_dict",
    "layout_to_json",
    "min_rotation",
    "normalize_angle",
    "oracle_answer",
    "parse_csv",
    "place",
    "project",
    "relative_direction",
    "resolve_overlaps_1d",
    "run_experiment",
    "run_trial",
    "summarize_records",
    "validate_scene",
    "write_csv",
]
