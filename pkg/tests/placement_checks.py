"""Layout invariant checkers shared by the placement and acceptance tests."""

from __future__ import annotations

import math

from arlabel.geometry import CanvasSpec, ViewState, is_in_view, project, relative_direction
from arlabel.placement import (
    LabelLayout,
    angle_arc_position,
    box_overlap_area,
    place,
    place_angle,
)
from arlabel.scene import Scene

TOL = 1e-9


def check_completeness(layout: LabelLayout, scene: Scene, view: ViewState, canvas: CanvasSpec):
    ids = {b.object_id for b in layout.boxes}
    in_view = {o.id for o in scene.objects if is_in_view(o.position, view, canvas)}
    if layout.strategy in ("situated", "boundary"):
        assert ids == in_view, (layout.strategy, ids, in_view)
    else:
        assert ids == {o.id for o in scene.objects}


def check_containment(layout: LabelLayout, canvas: CanvasSpec):
    for b in layout.boxes:
        assert abs(b.center.x_m) <= canvas.half_width_m - b.width_m / 2 + TOL
        assert abs(b.center.y_m) <= canvas.half_height_m - b.height_m / 2 + TOL


def check_no_overlap_within_groups(layout: LabelLayout):
    boxes = {b.object_id: b for b in layout.boxes}
    for group in layout.groups:
        if layout.strategy == "boundary":
            # zero overlap is only promised while the bottom row has room
            demand = sum(boxes[oid].width_m + 0.005 for oid in group) - 0.005
            if demand > 2 * CanvasSpec().half_width_m + TOL:
                continue
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                area = box_overlap_area(boxes[a], boxes[b])
                assert area <= TOL, (layout.strategy, a, b, area)


def check_angle_circular_order(layout: LabelLayout, scene: Scene, view: ViewState, canvas: CanvasSpec):
    entries = []
    for o in scene.objects:
        rel, _ = relative_direction(o.position, view)
        entries.append((rel % 360.0, o.id))
    entries.sort()
    boxes = {b.object_id: b for b in layout.boxes}
    perim_in = 4 * (
        canvas.half_width_m - 0.05 + canvas.half_height_m - 0.0175
    )
    positions = [
        _arc_of(boxes[oid].center, canvas) for _, oid in entries
    ]
    # circular order preserved: positions, walked in theta order, wrap at
    # most once around the inset track
    wraps = sum(
        1
        for i in range(len(positions))
        if positions[(i + 1) % len(positions)] < positions[i] - TOL
    )
    assert wraps <= 1, (positions, wraps)


def _arc_of(center, canvas: CanvasSpec) -> float:
    hw = canvas.half_width_m - 0.05
    hh = canvas.half_height_m - 0.0175
    x, y = center.x_m, center.y_m
    w, h = 2 * hw, 2 * hh
    if abs(y - hh) < 1e-7 and x >= -1e-7:
        return x
    if abs(x - hw) < 1e-7:
        return w / 2 + (hh - y)
    if abs(y + hh) < 1e-7:
        return w / 2 + h + (hw - x)
    if abs(x + hw) < 1e-7:
        return w / 2 + h + w + (y + hh)
    return w / 2 + h + w + h + (x + hw)


def check_angle_rotation_equivariance(scene: Scene, view: ViewState, canvas: CanvasSpec, delta: float = 37.0):
    a = place_angle(scene, view, canvas)
    b = place_angle(
        scene, ViewState(view.yaw_deg + delta, view.pitch_deg), canvas
    )
    p = canvas.perimeter_m
    shift = delta / 360.0 * p
    ids = [box.object_id for box in a.boxes]
    anchors_a = dict(zip(ids, a.anchors))
    anchors_b = dict(zip([box.object_id for box in b.boxes], b.anchors))
    for oid in ids:
        sa = _outer_arc_of(anchors_a[oid], canvas)
        sb = _outer_arc_of(anchors_b[oid], canvas)
        diff = (sa - sb - shift) % p
        assert min(diff, p - diff) <= 1e-9, (oid, sa, sb)


def _outer_arc_of(pt, canvas: CanvasSpec) -> float:
    hw, hh = canvas.half_width_m, canvas.half_height_m
    x, y = pt.x_m, pt.y_m
    w, h = 2 * hw, 2 * hh
    if abs(y - hh) < 1e-7 and x >= -1e-7:
        return x
    if abs(x - hw) < 1e-7:
        return w / 2 + (hh - y)
    if abs(y + hh) < 1e-7:
        return w / 2 + h + (hw - x)
    if abs(x + hw) < 1e-7:
        return w / 2 + h + w + (y + hh)
    return w / 2 + h + w + h + (x + hw)


def check_height_side_rule(layout: LabelLayout, scene: Scene, view: ViewState, canvas: CanvasSpec):
    boxes = {b.object_id: b for b in layout.boxes}
    for o in scene.objects:
        if is_in_view(o.position, view, canvas):
            continue
        rel, _ = relative_direction(o.position, view)
        x = boxes[o.id].center.x_m
        if rel < 0:
            assert x == -(canvas.half_width_m - boxes[o.id].width_m / 2)
        else:
            assert x == canvas.half_width_m - boxes[o.id].width_m / 2


def check_value_order(layout: LabelLayout, scene: Scene):
    by_id = {o.id: o for o in scene.objects}
    rows = sorted(layout.boxes, key=lambda b: -b.center.y_m)
    keys = [(-by_id[b.object_id].rating, by_id[b.object_id].name) for b in rows]
    assert keys == sorted(keys), keys


def check_situated_x_fidelity(layout: LabelLayout, scene: Scene, view: ViewState, canvas: CanvasSpec):
    ids = [b.object_id for b in layout.boxes]
    for oid, anchor in zip(ids, layout.anchors):
        pt = project(scene.by_id(oid).position, view, canvas)
        assert anchor.x_m == pt.x_m


def check_leaders_only_in_view(layout: LabelLayout, scene: Scene, view: ViewState, canvas: CanvasSpec):
    for leader in layout.leaders:
        if leader.present:
            obj = scene.by_id(leader.object_id)
            assert is_in_view(obj.position, view, canvas)


def check_all(strategy: str, scene: Scene, view: ViewState, canvas: CanvasSpec):
    layout = place(strategy, scene, view, canvas)
    check_completeness(layout, scene, view, canvas)
    check_containment(layout, canvas)
    check_no_overlap_within_groups(layout)
    check_leaders_only_in_view(layout, scene, view, canvas)
    if strategy == "angle":
        check_angle_circular_order(layout, scene, view, canvas)
    if strategy == "height":
        check_height_side_rule(layout, scene, view, canvas)
    if strategy == "value":
        check_value_order(layout, scene)
    if strategy == "situated":
        check_situated_x_fidelity(layout, scene, view, canvas)
    return layout
