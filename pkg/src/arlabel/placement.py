"""The five label-placement strategies, overlap resolution, clutter metrics.

Strategies: situated and boundary label only in-view objects; height,
angle, and value label every object.  All placements are pure functions of
(scene, view, canvas) plus an optional per-object highlight map.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .geometry import (
    CanvasSpec,
    ScreenPoint,
    ViewState,
    is_in_view,
    normalize_angle_positive,
    project,
    relative_direction,
)
from .scene import Scene, SceneObject

STRATEGIES = ("situated", "boundary", "height", "angle", "value")

BOX_W = 0.10
BOX_H = 0.035
# Vertical offset of a situated label above the projected object center;
# clears a 20 cm cube at 2.5 m.
SITUATED_OFFSET = 0.12
# Extra clearance when stacking situated labels vertically.
SITUATED_V_GAP = 0.01
# Minimum edge-to-edge clearance for boundary labels.
EDGE_GAP = 0.005
# Vertical clearance between rows of the value column.
VALUE_ROW_GAP = 0.005

OVERLAP_EPS = 1e-9


class CapacityExceeded(Exception):
    """Total interval length exceeds the available span."""


@dataclass(frozen=True)
class LabelBox:
    object_id: int
    center: ScreenPoint
    width_m: float = BOX_W
    height_m: float = BOX_H
    text: str = ""
    value: int = 0
    highlight: str = "none"
    arrow: str = "none"

    @property
    def x_range(self) -> tuple[float, float]:
        return (self.center.x_m - self.width_m / 2, self.center.x_m + self.width_m / 2)

    @property
    def y_range(self) -> tuple[float, float]:
        return (self.center.y_m - self.height_m / 2, self.center.y_m + self.height_m / 2)


@dataclass(frozen=True)
class LeaderLine:
    object_id: int
    frm: ScreenPoint
    to: ScreenPoint
    present: bool = True


@dataclass(frozen=True)
class LabelLayout:
    strategy: str
    boxes: tuple[LabelBox, ...]
    leaders: tuple[LeaderLine, ...]
    anchors: tuple[ScreenPoint, ...]
    # Object ids per independent overlap-resolution group; resolution only
    # guarantees zero overlap inside a group.
    groups: tuple[tuple[int, ...], ...] = field(default=())


# ---------------------------------------------------------------------------
# 1D overlap resolution


def resolve_overlaps_1d(
    intervals: list[tuple[float, float]],
    bounds: tuple[float, float],
    circular: bool = False,
) -> list[float]:
    """Order-preserving non-overlapping centers for (desired_center, length).

    Linear mode keeps the list order and the bounds; circular mode treats
    the list as circular order on a ring of circumference (hi - lo).
    Displacement is minimized by cluster merging (forward stacking with
    median relaxation), then clamped into bounds.

    Raises CapacityExceeded when the total length does not fit the span.
    """
    if not intervals:
        return []
    lo, hi = bounds
    span = hi - lo
    total = sum(length for _, length in intervals)
    if total > span + OVERLAP_EPS:
        raise CapacityExceeded(f"total length {total} exceeds span {span}")
    if circular:
        return _resolve_circular(intervals, lo, span)
    return _resolve_linear(intervals, lo, hi)


def _resolve_linear(
    intervals: list[tuple[float, float]], lo: float, hi: float
) -> list[float]:
    n = len(intervals)
    lengths = [length for _, length in intervals]
    # Transform to a monotonicity problem: with cumulative offsets o_i,
    # spacing constraints become u_i = c_i - o_i nondecreasing.
    offsets = [0.0] * n
    for i in range(1, n):
        offsets[i] = offsets[i - 1] + (lengths[i - 1] + lengths[i]) / 2
    targets = [intervals[i][0] - offsets[i] for i in range(n)]

    # Pool-adjacent-violators with medians (L1-optimal isotonic fit).
    clusters: list[list[float]] = []  # member targets, in order
    values: list[float] = []  # current cluster value
    for t in targets:
        clusters.append([t])
        values.append(t)
        while len(clusters) > 1 and values[-2] > values[-1] + 1e-15:
            merged = clusters[-2] + clusters[-1]
            clusters.pop()
            values.pop()
            clusters[-1] = merged
            values[-1] = _median(merged)
    centers = []
    for cluster, value in zip(clusters, values):
        centers.extend([value] * len(cluster))
    centers = [centers[i] + offsets[i] for i in range(n)]

    # Clamp into bounds; feasible because capacity was checked.
    centers[0] = max(centers[0], lo + lengths[0] / 2)
    for i in range(1, n):
        centers[i] = max(
            centers[i],
            lo + lengths[i] / 2,
            centers[i - 1] + (lengths[i - 1] + lengths[i]) / 2,
        )
    centers[n - 1] = min(centers[n - 1], hi - lengths[n - 1] / 2)
    for i in range(n - 2, -1, -1):
        centers[i] = min(
            centers[i],
            hi - lengths[i] / 2,
            centers[i + 1] - (lengths[i] + lengths[i + 1]) / 2,
        )
    return centers


def _median(values: list[float]) -> float:
    s = sorted(values)
    n = len(s)
    if n % 2:
        return s[n // 2]
    return (s[n // 2 - 1] + s[n // 2]) / 2


def _resolve_circular(
    intervals: list[tuple[float, float]], lo: float, circumference: float
) -> list[float]:
    n = len(intervals)
    pos = [((c - lo) % circumference) for c, _ in intervals]
    lengths = [length for _, length in intervals]
    if n == 1:
        return [lo + pos[0]]

    # Cut the ring at the largest gap between consecutive desired
    # positions and solve the unrolled linear problem without bounds.
    gaps = [(pos[(i + 1) % n] - pos[i]) % circumference for i in range(n)]
    cut = max(range(n), key=lambda i: (gaps[i], -i))
    order = [(cut + 1 + k) % n for k in range(n)]
    start = pos[order[0]]
    unrolled = [(pos[i] - start) % circumference for i in order]
    sub = [(unrolled[k], lengths[order[k]]) for k in range(n)]
    solved = _resolve_unbounded(sub)

    # Wrap-around overlap after unrolling means the ring is too crowded
    # for displacement-minimal placement; fall back to even packing.
    wrap_gap = (solved[0] + circumference) - solved[-1]
    if wrap_gap + OVERLAP_EPS < (lengths[order[-1]] + lengths[order[0]]) / 2:
        slack = (circumference - sum(lengths)) / n
        solved = []
        acc = unrolled[0]
        for k in range(n):
            if k > 0:
                acc += (lengths[order[k - 1]] + lengths[order[k]]) / 2 + slack
            solved.append(acc)

    centers = [0.0] * n
    for k, i in enumerate(order):
        centers[i] = lo + ((start + solved[k]) % circumference)
    return centers


def _resolve_unbounded(intervals: list[tuple[float, float]]) -> list[float]:
    big = sum(abs(c) + length for c, length in intervals) + 1.0
    return _resolve_linear(intervals, -big, big)


def resolve_with_compression(
    intervals: list[tuple[float, float]],
    bounds: tuple[float, float],
    circular: bool = False,
) -> list[float]:
    """resolve_overlaps_1d, falling back to order-preserving placement
    with minimal uniform overlap when capacity is exceeded."""
    try:
        return resolve_overlaps_1d(intervals, bounds, circular)
    except CapacityExceeded:
        lo, hi = bounds
        lengths = [length for _, length in intervals]
        n = len(intervals)
        if circular:
            gap = ((hi - lo) - sum(lengths)) / n
            centers = [intervals[0][0]]
            for i in range(1, n):
                centers.append(centers[-1] + (lengths[i - 1] + lengths[i]) / 2 + gap)
            return [lo + ((c - lo) % (hi - lo)) for c in centers]
        gap = ((hi - lo) - sum(lengths)) / (n - 1) if n > 1 else 0.0
        centers = [lo + lengths[0] / 2]
        for i in range(1, n):
            centers.append(centers[-1] + (lengths[i - 1] + lengths[i]) / 2 + gap)
        return centers


# ---------------------------------------------------------------------------
# Shared helpers


def _clamp(v: float, lo: float, hi: float) -> float:
    return max(lo, min(hi, v))


def _highlight_of(obj: SceneObject, highlights: dict[int, str] | None) -> str:
    if highlights is None:
        return "none"
    return highlights.get(obj.id, "none")


def _box_edge_point(box: LabelBox, target: ScreenPoint) -> ScreenPoint:
    """Point where the segment from box center to target leaves the box."""
    cx, cy = box.center.x_m, box.center.y_m
    dx, dy = target.x_m - cx, target.y_m - cy
    if dx == 0 and dy == 0:
        return ScreenPoint(cx, cy - box.height_m / 2)
    tx = (box.width_m / 2) / abs(dx) if dx else math.inf
    ty = (box.height_m / 2) / abs(dy) if dy else math.inf
    t = min(tx, ty)
    return ScreenPoint(cx + dx * t, cy + dy * t)


def _situated_components(
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec,
    highlights: dict[int, str] | None,
) -> tuple[dict[int, LabelBox], dict[int, LeaderLine], dict[int, ScreenPoint]]:
    """Situated boxes for the in-view subset; shared by situated and height."""
    hw, hh = canvas.half_width_m, canvas.half_height_m
    anchors: dict[int, ScreenPoint] = {}
    projections: dict[int, ScreenPoint] = {}
    for obj in scene.objects:
        if is_in_view(obj.position, view, canvas):
            pt = project(obj.position, view, canvas)
            projections[obj.id] = pt
            anchors[obj.id] = ScreenPoint(pt.x_m, pt.y_m + SITUATED_OFFSET)

    # Raise conflicting boxes vertically; x stays at the projected column
    # (clamped only for containment).
    order = sorted(anchors, key=lambda oid: (anchors[oid].y_m, oid))
    placed: dict[int, tuple[float, float]] = {}
    for oid in order:
        cx = _clamp(anchors[oid].x_m, -hw + BOX_W / 2, hw - BOX_W / 2)
        cy = max(anchors[oid].y_m, -hh + BOX_H / 2)
        for _ in range(len(order) + 1):
            conflicts = [
                py
                for px, py in placed.values()
                if abs(px - cx) < BOX_W - OVERLAP_EPS
                and abs(py - cy) < BOX_H - OVERLAP_EPS
            ]
            if not conflicts:
                break
            cy = max(conflicts) + BOX_H + SITUATED_V_GAP
        placed[oid] = (cx, min(cy, hh - BOX_H / 2))

    boxes: dict[int, LabelBox] = {}
    leaders: dict[int, LeaderLine] = {}
    for oid, (cx, cy) in placed.items():
        obj = scene.by_id(oid)
        boxes[oid] = LabelBox(
            object_id=oid,
            center=ScreenPoint(cx, cy),
            text=obj.name,
            value=obj.rating,
            highlight=_highlight_of(obj, highlights),
        )
        leaders[oid] = LeaderLine(
            object_id=oid,
            frm=ScreenPoint(cx, cy - BOX_H / 2),
            to=projections[oid],
        )
    return boxes, leaders, anchors


def _x_overlap_groups(boxes: list[LabelBox]) -> list[tuple[int, ...]]:
    """Connected components of horizontal overlap (vertical stacks)."""
    n = len(boxes)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            wi = (boxes[i].width_m + boxes[j].width_m) / 2
            if abs(boxes[i].center.x_m - boxes[j].center.x_m) < wi - OVERLAP_EPS:
                parent[find(i)] = find(j)
    comps: dict[int, list[int]] = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(boxes[i].object_id)
    return [tuple(sorted(ids)) for ids in comps.values()]


# ---------------------------------------------------------------------------
# Strategies


def place_situated(
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec,
    highlights: dict[int, str] | None = None,
) -> LabelLayout:
    """One label directly above each in-view object."""
    boxes, leaders, anchors = _situated_components(scene, view, canvas, highlights)
    ids = sorted(boxes)
    box_list = [boxes[i] for i in ids]
    return LabelLayout(
        strategy="situated",
        boxes=tuple(box_list),
        leaders=tuple(leaders[i] for i in ids),
        anchors=tuple(anchors[i] for i in ids),
        groups=tuple(_x_overlap_groups(box_list)),
    )


def place_boundary(
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec,
    highlights: dict[int, str] | None = None,
) -> LabelLayout:
    """In-view labels aligned at the bottom canvas edge, x-aligned with
    their objects; center-first priority, conflicts pushed outward."""
    hw, hh = canvas.half_width_m, canvas.half_height_m
    y0 = -hh + BOX_H / 2
    x_lim = hw - BOX_W / 2

    desired: dict[int, float] = {}
    projections: dict[int, ScreenPoint] = {}
    for obj in scene.objects:
        if is_in_view(obj.position, view, canvas):
            pt = project(obj.position, view, canvas)
            projections[obj.id] = pt
            desired[obj.id] = pt.x_m

    placed: dict[int, float] = {}
    step = BOX_W + EDGE_GAP

    def push(x: float, direction: float) -> float:
        for _ in range(len(desired) + 1):
            conflicts = [
                px for px in placed.values() if abs(px - x) < step - OVERLAP_EPS
            ]
            if not conflicts:
                return x
            frontier = max(conflicts, key=lambda px: direction * px)
            x = frontier + direction * step
        return x

    for oid in sorted(desired, key=lambda i: (abs(desired[i]), i)):
        direction = 1.0 if desired[oid] >= 0 else -1.0
        x0 = _clamp(desired[oid], -x_lim, x_lim)
        x = push(x0, direction)
        if abs(x) > x_lim + OVERLAP_EPS:
            # outward slot runs off-canvas; take the nearest inward slot
            x = push(x0, -direction)
        # both directions full only when the whole row is over capacity
        placed[oid] = _clamp(x, -x_lim, x_lim)

    ids = sorted(placed)
    boxes = []
    leaders = []
    anchors = []
    for oid in ids:
        obj = scene.by_id(oid)
        center = ScreenPoint(placed[oid], y0)
        boxes.append(
            LabelBox(
                object_id=oid,
                center=center,
                text=obj.name,
                value=obj.rating,
                highlight=_highlight_of(obj, highlights),
            )
        )
        leaders.append(
            LeaderLine(
                object_id=oid,
                frm=ScreenPoint(center.x_m, center.y_m + BOX_H / 2),
                to=projections[oid],
            )
        )
        anchors.append(ScreenPoint(desired[oid], y0))
    return LabelLayout(
        strategy="boundary",
        boxes=tuple(boxes),
        leaders=tuple(leaders),
        anchors=tuple(anchors),
        groups=(tuple(ids),) if ids else (),
    )


def place_height(
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec,
    highlights: dict[int, str] | None = None,
) -> LabelLayout:
    """Situated labels in view; out-of-view labels on the closer lateral
    edge with y encoding where the object will appear when faced."""
    hw, hh = canvas.half_width_m, canvas.half_height_m
    boxes, leaders, anchors = _situated_components(scene, view, canvas, highlights)

    sides: dict[str, list[tuple[float, int]]] = {"left": [], "right": []}
    for obj in scene.objects:
        if obj.id in boxes:
            continue
        rel_az, elev = relative_direction(obj.position, view)
        # rel_az is in (-180, 180]; exactly 180 goes right.
        side = "left" if rel_az < 0 else "right"
        y = _clamp(
            canvas.distance_m * math.tan(math.radians(elev)),
            -(hh - BOX_H / 2),
            hh - BOX_H / 2,
        )
        sides[side].append((y, obj.id))

    groups: list[tuple[int, ...]] = list(_x_overlap_groups(list(boxes.values())))
    for side, entries in sides.items():
        if not entries:
            continue
        entries.sort()
        centers = resolve_with_compression(
            [(y, BOX_H) for y, _ in entries], (-hh, hh)
        )
        x = (-hw + BOX_W / 2) if side == "left" else (hw - BOX_W / 2)
        for (desired_y, oid), cy in zip(entries, centers):
            obj = scene.by_id(oid)
            boxes[oid] = LabelBox(
                object_id=oid,
                center=ScreenPoint(x, cy),
                text=obj.name,
                value=obj.rating,
                highlight=_highlight_of(obj, highlights),
            )
            anchors[oid] = ScreenPoint(x, desired_y)
        groups.append(tuple(sorted(oid for _, oid in entries)))

    ids = sorted(boxes)
    return LabelLayout(
        strategy="height",
        boxes=tuple(boxes[i] for i in ids),
        leaders=tuple(leaders[i] for i in sorted(leaders)),
        anchors=tuple(anchors[i] for i in ids),
        groups=tuple(groups),
    )


def _perimeter_point(s: float, half_w: float, half_h: float) -> ScreenPoint:
    """Point at clockwise arc length s from top-center of a rectangle."""
    w, h = 2 * half_w, 2 * half_h
    p = 2 * (w + h)
    s = s % p
    if s <= w / 2:
        return ScreenPoint(s, half_h)
    s -= w / 2
    if s <= h:
        return ScreenPoint(half_w, half_h - s)
    s -= h
    if s <= w:
        return ScreenPoint(half_w - s, -half_h)
    s -= w
    if s <= h:
        return ScreenPoint(-half_w, -half_h + s)
    s -= h
    return ScreenPoint(-half_w + s, half_h)


def angle_arc_position(rel_azimuth_deg: float, canvas: CanvasSpec) -> float:
    """Clockwise perimeter arc length encoding a relative azimuth."""
    theta = normalize_angle_positive(rel_azimuth_deg)
    return theta / 360.0 * canvas.perimeter_m


def place_angle(
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec,
    highlights: dict[int, str] | None = None,
) -> LabelLayout:
    """Every label on the canvas perimeter at the arc position encoding
    its relative azimuth; top = ahead, bottom = behind."""
    hw, hh = canvas.half_width_m, canvas.half_height_m
    # Box centers ride an inset track so boxes stay inside the canvas.
    in_hw, in_hh = hw - BOX_W / 2, hh - BOX_H / 2
    perimeter_in = 4 * (in_hw + in_hh)

    entries = []  # (theta, id, anchor, in_view, projection)
    for obj in scene.objects:
        rel_az, _ = relative_direction(obj.position, view)
        theta = normalize_angle_positive(rel_az)
        s_outer = angle_arc_position(rel_az, canvas)
        anchor = _perimeter_point(s_outer, hw, hh)
        pt = project(obj.position, view, canvas)
        entries.append(
            (theta, obj.id, anchor, is_in_view(obj.position, view, canvas), pt)
        )
    entries.sort(key=lambda e: (e[0], e[1]))

    # A uniform footprint of one box width plus height guarantees no 2D
    # overlap even for neighbors meeting across a track corner.
    footprint = BOX_W + BOX_H
    desired = [
        (theta / 360.0 * perimeter_in, footprint) for theta, *_ in entries
    ]
    centers_s = resolve_with_compression(desired, (0.0, perimeter_in), circular=True)

    boxes: dict[int, LabelBox] = {}
    anchors: dict[int, ScreenPoint] = {}
    leaders: dict[int, LeaderLine] = {}
    for (theta, oid, anchor, in_view, pt), s_in in zip(entries, centers_s):
        obj = scene.by_id(oid)
        center = _perimeter_point(s_in, in_hw, in_hh)
        box = LabelBox(
            object_id=oid,
            center=center,
            text=obj.name,
            value=obj.rating,
            highlight=_highlight_of(obj, highlights),
        )
        boxes[oid] = box
        anchors[oid] = anchor
        if in_view and pt is not None:
            leaders[oid] = LeaderLine(
                object_id=oid, frm=_box_edge_point(box, pt), to=pt
            )

    ids = sorted(boxes)
    return LabelLayout(
        strategy="angle",
        boxes=tuple(boxes[i] for i in ids),
        leaders=tuple(leaders[i] for i in sorted(leaders)),
        anchors=tuple(anchors[i] for i in ids),
        groups=(tuple(ids),) if ids else (),
    )


def place_value(
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec,
    highlights: dict[int, str] | None = None,
) -> LabelLayout:
    """Fixed left column ordered by descending rating (ties by name);
    arrows point toward out-of-view objects."""
    hw, hh = canvas.half_width_m, canvas.half_height_m
    x = -hw + BOX_W / 2
    ordered = sorted(scene.objects, key=lambda o: (-o.rating, o.name))

    n = len(ordered)
    pitch = BOX_H + VALUE_ROW_GAP
    if n > 1 and (n - 1) * pitch + BOX_H > 2 * hh:
        pitch = (2 * hh - BOX_H) / (n - 1)
    y_top = hh - BOX_H / 2

    boxes: dict[int, LabelBox] = {}
    anchors: dict[int, ScreenPoint] = {}
    leaders: dict[int, LeaderLine] = {}
    row_of: dict[int, int] = {}
    for row, obj in enumerate(ordered):
        center = ScreenPoint(x, y_top - row * pitch)
        in_view = is_in_view(obj.position, view, canvas)
        if in_view:
            arrow = "none"
        else:
            rel_az, _ = relative_direction(obj.position, view)
            arrow = "left" if rel_az < 0 else "right"
        box = LabelBox(
            object_id=obj.id,
            center=center,
            text=obj.name,
            value=obj.rating,
            highlight=_highlight_of(obj, highlights),
            arrow=arrow,
        )
        boxes[obj.id] = box
        anchors[obj.id] = center
        row_of[obj.id] = row
        if in_view:
            pt = project(obj.position, view, canvas)
            leaders[obj.id] = LeaderLine(
                object_id=obj.id, frm=_box_edge_point(box, pt), to=pt
            )

    ids = sorted(boxes)
    return LabelLayout(
        strategy="value",
        boxes=tuple(boxes[i] for i in ids),
        leaders=tuple(leaders[i] for i in sorted(leaders)),
        anchors=tuple(anchors[i] for i in ids),
        groups=(tuple(ids),) if ids else (),
    )


PLACEMENTS = {
    "situated": place_situated,
    "boundary": place_boundary,
    "height": place_height,
    "angle": place_angle,
    "value": place_value,
}


def place(
    strategy: str,
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec,
    highlights: dict[int, str] | None = None,
) -> LabelLayout:
    try:
        fn = PLACEMENTS[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy: {strategy!r}") from None
    return fn(scene, view, canvas, highlights)


# ---------------------------------------------------------------------------
# Clutter metrics


def _segments_properly_intersect(
    a: ScreenPoint, b: ScreenPoint, c: ScreenPoint, d: ScreenPoint
) -> bool:
    def orient(p: ScreenPoint, q: ScreenPoint, r: ScreenPoint) -> float:
        return (q.x_m - p.x_m) * (r.y_m - p.y_m) - (q.y_m - p.y_m) * (r.x_m - p.x_m)

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    return (o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0) and o1 != 0 and o2 != 0 and o3 != 0 and o4 != 0


def count_line_crossings(layout: LabelLayout) -> int:
    """Unordered pairs of present leaders that properly intersect.
    Shared endpoints do not count."""
    segs = [(l.frm, l.to) for l in layout.leaders if l.present]
    count = 0
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if _segments_properly_intersect(*segs[i], *segs[j]):
                count += 1
    return count


def box_overlap_area(a: LabelBox, b: LabelBox) -> float:
    ox = min(a.x_range[1], b.x_range[1]) - max(a.x_range[0], b.x_range[0])
    oy = min(a.y_range[1], b.y_range[1]) - max(a.y_range[0], b.y_range[0])
    return max(0.0, ox) * max(0.0, oy)


@dataclass(frozen=True)
class ClutterMetrics:
    mean_leader_length_m: float
    crossing_count: int
    total_box_overlap_m2: float
    mean_label_object_gap_m: float
    mean_label_label_gap_m: float


def layout_metrics(
    layout: LabelLayout,
    scene: Scene,
    view: ViewState,
    canvas: CanvasSpec | None = None,
) -> ClutterMetrics:
    canvas = canvas or CanvasSpec()
    leaders = [l for l in layout.leaders if l.present]
    lengths = [
        math.hypot(l.to.x_m - l.frm.x_m, l.to.y_m - l.frm.y_m) for l in leaders
    ]
    mean_leader = sum(lengths) / len(lengths) if lengths else 0.0

    overlap = 0.0
    for i in range(len(layout.boxes)):
        for j in range(i + 1, len(layout.boxes)):
            overlap += box_overlap_area(layout.boxes[i], layout.boxes[j])

    gaps = []
    for box in layout.boxes:
        obj = scene.by_id(box.object_id)
        if is_in_view(obj.position, view, canvas):
            pt = project(obj.position, view, canvas)
            gaps.append(
                math.hypot(box.center.x_m - pt.x_m, box.center.y_m - pt.y_m)
            )
    mean_obj_gap = sum(gaps) / len(gaps) if gaps else 0.0

    ll = []
    for i in range(len(layout.boxes)):
        for j in range(i + 1, len(layout.boxes)):
            a, b = layout.boxes[i].center, layout.boxes[j].center
            ll.append(math.hypot(a.x_m - b.x_m, a.y_m - b.y_m))
    mean_ll_gap = sum(ll) / len(ll) if ll else 0.0

    return ClutterMetrics(
        mean_leader_length_m=mean_leader,
        crossing_count=count_line_crossings(layout),
        total_box_overlap_m2=overlap,
        mean_label_object_gap_m=mean_obj_gap,
        mean_label_label_gap_m=mean_ll_gap,
    )


# ---------------------------------------------------------------------------
# Strategy metadata (design-space factors per strategy)


@dataclass(frozen=True)
class StrategyMetadata:
    name: str
    in_view: bool
    out_of_view: bool
    label_label_proximity: str
    label_object_proximity: str
    encodes_lateral: str
    encodes_vertical: str
    encodes_direction: bool
    encodes_angle: bool
    encodes_value: bool
    label_movement: bool
    body_movement: str
    gaze_pattern: str
    familiarity: str
    predictability: str


STRATEGY_METADATA = {
    "situated": StrategyMetadata(
        name="situated", in_view=True, out_of_view=False,
        label_label_proximity="low", label_object_proximity="high",
        encodes_lateral="yes", encodes_vertical="yes",
        encodes_direction=False, encodes_angle=False, encodes_value=False,
        label_movement=False, body_movement="high", gaze_pattern="arbitrary",
        familiarity="high", predictability="low",
    ),
    "boundary": StrategyMetadata(
        name="boundary", in_view=True, out_of_view=False,
        label_label_proximity="high", label_object_proximity="medium",
        encodes_lateral="yes", encodes_vertical="no",
        encodes_direction=False, encodes_angle=False, encodes_value=False,
        label_movement=False, body_movement="high", gaze_pattern="linear",
        familiarity="low", predictability="high",
    ),
    "height": StrategyMetadata(
        name="height", in_view=True, out_of_view=True,
        label_label_proximity="low/medium", label_object_proximity="high",
        encodes_lateral="in-view only", encodes_vertical="yes",
        encodes_direction=True, encodes_angle=False, encodes_value=False,
        label_movement=True, body_movement="medium", gaze_pattern="arbitrary/linear",
        familiarity="medium", predictability="low",
    ),
    "angle": StrategyMetadata(
        name="angle", in_view=True, out_of_view=True,
        label_label_proximity="high", label_object_proximity="medium",
        encodes_lateral="yes", encodes_vertical="no",
        encodes_direction=True, encodes_angle=True, encodes_value=False,
        label_movement=True, body_movement="low", gaze_pattern="linear",
        familiarity="low", predictability="high",
    ),
    "value": StrategyMetadata(
        name="value", in_view=True, out_of_view=True,
        label_label_proximity="high", label_object_proximity="low",
        encodes_lateral="no", encodes_vertical="no",
        encodes_direction=True, encodes_angle=False, encodes_value=True,
        label_movement=False, body_movement="medium", gaze_pattern="linear",
        familiarity="medium", predictability="high",
    ),
}


# ---------------------------------------------------------------------------
# Serialization


def layout_to_dict(layout: LabelLayout) -> dict:
    return {
        "strategy": layout.strategy,
        "boxes": [
            {
                "object_id": b.object_id,
                "x_m": b.center.x_m,
                "y_m": b.center.y_m,
                "w_m": b.width_m,
                "h_m": b.height_m,
                "text": b.text,
                "value": b.value,
                "highlight": b.highlight,
                "arrow": b.arrow,
            }
            for b in layout.boxes
        ],
        "leaders": [
            {
                "object_id": l.object_id,
                "from": [l.frm.x_m, l.frm.y_m],
                "to": [l.to.x_m, l.to.y_m],
            }
            for l in layout.leaders
            if l.present
        ],
    }


def layout_to_json(layout: LabelLayout) -> str:
    return json.dumps(layout_to_dict(layout))
