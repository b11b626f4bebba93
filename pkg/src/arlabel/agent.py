"""Synthetic search agent executing tasks under each label condition.

The agent models the strategies reported by study participants: in-view
conditions (situated, boundary) scan the surrounding space; out-of-view
conditions (height, angle, value) read the canvas first and then make
directed travels.  It always answers correctly; the model targets cost
proxies (rotation, gaze, label reads, context switches), not error rates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import CanvasSpec, ScreenPoint, ViewState, normalize_angle
from .placement import LabelLayout, place
from .tasks import TaskInstance, oracle_answer

IN_VIEW_CONDITIONS = ("situated", "boundary")
OUT_OF_VIEW_CONDITIONS = ("height", "angle", "value")

YAW_STEP_DEG = 1.0


class UnknownCondition(Exception):
    pass


@dataclass(frozen=True)
class AgentConfig:
    """Cost-model calibration knobs (invented constants, surfaced here)."""

    yaw_speed_dps: float = 60.0
    gaze_speed_dps: float = 300.0
    label_read_s: float = 0.5
    context_switch_s: float = 0.3
    scan_direction: str = "clockwise"

    def __post_init__(self) -> None:
        if min(self.yaw_speed_dps, self.gaze_speed_dps) <= 0:
            raise ValueError("rates must be strictly positive")
        if min(self.label_read_s, self.context_switch_s) < 0:
            raise ValueError("durations must be non-negative")
        if self.scan_direction not in ("clockwise", "counterclockwise"):
            raise ValueError(f"bad scan_direction: {self.scan_direction!r}")


@dataclass(frozen=True)
class TrialRecord:
    condition: str
    task: str
    size: int
    trial_index: int
    seed: int
    travel_deg: float
    gaze_deg: float
    labels_read: int
    context_switches: int
    num_travels: int
    proxy_time_s: float
    answer: str
    correct: bool


def min_rotation(rel_azimuth_deg: float) -> float:
    """Smallest rotation magnitude facing the given relative azimuth."""
    return abs(normalize_angle(rel_azimuth_deg))


def proxy_time(
    travel_deg: float,
    gaze_deg: float,
    labels_read: int,
    context_switches: int,
    agent: AgentConfig,
) -> float:
    return (
        travel_deg / agent.yaw_speed_dps
        + gaze_deg / agent.gaze_speed_dps
        + labels_read * agent.label_read_s
        + context_switches * agent.context_switch_s
    )


class _TrialRunner:
    """Mutable walk state for a single trial."""

    def __init__(
        self,
        instance: TaskInstance,
        condition: str,
        agent: AgentConfig,
        canvas: CanvasSpec,
    ):
        self.instance = instance
        self.condition = condition
        self.agent = agent
        self.canvas = canvas
        self.highlights = instance.label_highlights(
            frozenset() if instance.kind == "summarize" else frozenset(("red", "blue"))
        )
        self.revealed: set[str] = set()
        self.fov_half = canvas.fov_h_deg / 2.0

        self.yaw = 0.0
        self.travel_deg = 0.0
        self.gaze_deg = 0.0
        self.labels_read = 0
        self.context_switches = 0
        self.num_travels = 0
        self.seen_labels: set[int] = set()

    # -- primitives ---------------------------------------------------------

    def _azimuth(self, object_id: int) -> float:
        return self.instance.scene.by_id(object_id).position.azimuth_deg

    def _elevation(self, object_id: int) -> float:
        obj = self.instance.scene.by_id(object_id)
        return math.degrees(
            math.atan2(obj.position.height_m - 1.6, obj.position.radius_m)
        )

    def _rel_az(self, object_id: int) -> float:
        return normalize_angle(self._azimuth(object_id) - self.yaw)

    def _layout(self, pitch: float = 0.0) -> LabelLayout:
        if self.instance.kind == "summarize":
            highlights = self.instance.label_highlights(frozenset(self.revealed))
        else:
            highlights = self.highlights
        return place(
            self.condition,
            self.instance.scene,
            ViewState(self.yaw, pitch),
            self.canvas,
            highlights,
        )

    def _visual_deg(self, d_m: float) -> float:
        return math.degrees(math.atan2(d_m, self.canvas.distance_m))

    def _glance(self, point: ScreenPoint) -> None:
        # Saccade from canvas center to the point and back.
        d = math.hypot(point.x_m, point.y_m)
        self.gaze_deg += 2.0 * self._visual_deg(d)

    def _gaze_path(self, points: list[ScreenPoint]) -> None:
        prev = ScreenPoint(0.0, 0.0)
        for pt in points:
            self.gaze_deg += self._visual_deg(
                math.hypot(pt.x_m - prev.x_m, pt.y_m - prev.y_m)
            )
            prev = pt

    def _read_label(self, point: ScreenPoint) -> None:
        self.labels_read += 1
        self._glance(point)

    def _travel_direct(self, target_azimuth: float) -> None:
        """Minimal directed rotation; placement recomputed per 1-degree step."""
        rel = normalize_angle(target_azimuth - self.yaw)
        steps = int(abs(rel) // YAW_STEP_DEG)
        sign = 1.0 if rel >= 0 else -1.0
        for _ in range(steps):
            self.yaw = (self.yaw + sign * YAW_STEP_DEG) % 360.0
            self._layout()
        self.yaw = target_azimuth % 360.0
        self.travel_deg += abs(rel)

    # -- in-view scan -------------------------------------------------------

    def _scan_step_sign(self) -> float:
        return 1.0 if self.agent.scan_direction == "clockwise" else -1.0

    def _directed_distance(self, azimuth: float) -> float:
        d = (azimuth - self.yaw) % 360.0
        return d if self._scan_step_sign() > 0 else (360.0 - d) % 360.0

    def _glance_new(self, layout: LabelLayout) -> None:
        for box in layout.boxes:
            if box.object_id not in self.seen_labels:
                self.seen_labels.add(box.object_id)
                self._read_label(box.center)

    def _scan_pitch(self, pending: list[int]) -> float:
        in_window = [
            oid for oid in pending if abs(self._rel_az(oid)) <= self.fov_half
        ]
        if not in_window:
            return 0.0
        nearest = min(in_window, key=lambda oid: (abs(self._rel_az(oid)), oid))
        return self._elevation(nearest)

    def _scan_to(self, pending: list[int], on_reached) -> None:
        """One directed scan processing every pending target in encounter
        order; targets already inside the FoV window are centered first."""
        sign = self._scan_step_sign()
        remaining = list(pending)
        self._glance_new(self._layout(self._scan_pitch(remaining)))
        while remaining:
            in_window = [
                oid for oid in remaining if abs(self._rel_az(oid)) <= self.fov_half
            ]
            if in_window:
                oid = min(in_window, key=lambda o: (abs(self._rel_az(o)), o))
                self.travel_deg += abs(self._rel_az(oid))
                self.yaw = self._azimuth(oid)
                self._glance_new(self._layout(self._elevation(oid)))
                remaining.remove(oid)
                on_reached(oid)
                continue
            oid = min(
                remaining,
                key=lambda o: (self._directed_distance(self._azimuth(o)), o),
            )
            steps = int(
                math.ceil(self._directed_distance(self._azimuth(oid)) / YAW_STEP_DEG)
            )
            for _ in range(steps):
                self.yaw = (self.yaw + sign * YAW_STEP_DEG) % 360.0
                self.travel_deg += YAW_STEP_DEG
                self._glance_new(self._layout(self._scan_pitch(remaining)))
            remaining.remove(oid)
            on_reached(oid)

    # -- scripts ------------------------------------------------------------

    def run(self) -> tuple[float, float, int, int, int]:
        kind = self.instance.kind
        if self.condition in IN_VIEW_CONDITIONS:
            getattr(self, f"_in_view_{kind}")()
        elif self.condition in OUT_OF_VIEW_CONDITIONS:
            getattr(self, f"_out_of_view_{kind}")()
        else:
            raise UnknownCondition(self.condition)
        return (
            self.travel_deg,
            self.gaze_deg,
            self.labels_read,
            self.context_switches,
            self.num_travels,
        )

    def _in_view_identify(self) -> None:
        target = self.instance.target_ids[0]
        self._scan_to([target], lambda oid: None)
        self.num_travels = 1
        # Look from the green label to the object to note its color.
        self.context_switches += 1

    def _in_view_compare(self) -> None:
        def observe(oid: int) -> None:
            # Bind label to object and note rating and color.
            self.context_switches += 2

        self._scan_to(list(self.instance.target_ids), observe)
        best = max(
            self.instance.target_ids,
            key=lambda oid: self.instance.scene.by_id(oid).rating,
        )
        # Return to the decisive target to confirm its color.
        self._travel_direct(self._azimuth(best))
        self.context_switches += 1
        self.num_travels = 2

    def _in_view_summarize(self) -> None:
        clusters = self.instance.clusters
        seed_cluster = {
            self.instance.target_ids[0]: "red",
            self.instance.target_ids[1]: "blue",
        }

        def reach_seed(seed_id: int) -> None:
            name = seed_cluster[seed_id]
            self.revealed.add(name)
            self.context_switches += 1  # click to reveal
            # Visit each revealed neighbor to read its situated label.
            for member in clusters[name]:
                if member == seed_id:
                    continue
                self._travel_direct(self._azimuth(member))
                self.labels_read += 1
                self._glance(ScreenPoint(0.0, 0.12))
            self.labels_read += 1  # the seed's own label
            self.context_switches += 1  # tally the cluster average

        self._scan_to(list(self.instance.target_ids), reach_seed)
        # Return to the first cluster to double-check its average.
        self._travel_direct(self._azimuth(self.instance.target_ids[0]))
        self.num_travels = 2

    def _canvas_lookup(self, needed: list[int]) -> None:
        """Find the needed labels on the canvas without moving."""
        layout = self._layout()
        boxes = {b.object_id: b for b in layout.boxes}
        if self.condition == "value":
            # Ranked scan: a fast pop-out sweep down the sorted column;
            # only the highlighted labels are read in full.
            column = sorted(layout.boxes, key=lambda b: -b.center.y_m)
            self._gaze_path([b.center for b in column])
        for oid in needed:
            self._read_label(boxes[oid].center)

    def _out_of_view_identify(self) -> None:
        target = self.instance.target_ids[0]
        self._canvas_lookup([target])
        # Angle travels directly; height and value creep toward the
        # indicated side, which covers the same minimal rotation.
        self._travel_direct(self._azimuth(target))
        self.num_travels = 1
        self.context_switches += 1

    def _out_of_view_compare(self) -> None:
        self._canvas_lookup(list(self.instance.target_ids))
        best = max(
            self.instance.target_ids,
            key=lambda oid: self.instance.scene.by_id(oid).rating,
        )
        self._travel_direct(self._azimuth(best))
        self.num_travels = 1
        self.context_switches += 1

    def _out_of_view_summarize(self) -> None:
        seeds = list(self.instance.target_ids)
        self._canvas_lookup(seeds)
        seed_cluster = {seeds[0]: "red", seeds[1]: "blue"}
        # Visit the nearer seed first, then the other; reveal each cluster.
        seeds.sort(key=lambda oid: (min_rotation(self._rel_az(oid)), oid))
        for seed_id in seeds:
            self._travel_direct(self._azimuth(seed_id))
            self.revealed.add(seed_cluster[seed_id])
            self.context_switches += 1  # click to reveal
        self.num_travels = 2
        # Read both clusters' labels on the canvas and answer from them.
        self.context_switches += 1
        layout = self._layout()
        boxes = {b.object_id: b for b in layout.boxes}
        members = [m for c in ("red", "blue") for m in self.instance.clusters[c]]
        self._gaze_path([boxes[m].center for m in members if m in boxes])
        self.labels_read += len(members)


def run_trial(
    instance: TaskInstance,
    condition: str,
    agent: AgentConfig | None = None,
    canvas: CanvasSpec | None = None,
    size: int | None = None,
    trial_index: int = 0,
    seed: int = 0,
) -> TrialRecord:
    """Execute one simulated trial and return its cost record."""
    agent = agent or AgentConfig()
    canvas = canvas or CanvasSpec()
    runner = _TrialRunner(instance, condition, agent, canvas)
    travel, gaze, reads, switches, travels = runner.run()
    answer = oracle_answer(instance)
    return TrialRecord(
        condition=condition,
        task=instance.kind,
        size=size if size is not None else instance.scene.size,
        trial_index=trial_index,
        seed=seed,
        travel_deg=travel,
        gaze_deg=gaze,
        labels_read=reads,
        context_switches=switches,
        num_travels=travels,
        proxy_time_s=proxy_time(travel, gaze, reads, switches, agent),
        answer=answer.value,
        correct=True,
    )
