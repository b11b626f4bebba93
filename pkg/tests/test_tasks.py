import json

import pytest

from arlabel.geometry import normalize_angle
from arlabel.scene import Scene, SceneConfig, generate_scene, zone_of
from arlabel.tasks import (
    BLUE_CLUSTER_SIZE,
    COMPARE_MIN_SEPARATION_DEG,
    RED_CLUSTER_SIZE,
    Answer,
    build_compare,
    build_identify,
    build_summarize,
    build_task,
    instance_from_dict,
    instance_to_dict,
    instance_to_json,
    mirror_scene,
    oracle_answer,
)


def scenes(n=100, size=10):
    cfg = SceneConfig(size=size)
    return [generate_scene(cfg, seed) for seed in range(n)]


def test_identify_constraints():
    for i, scene in enumerate(scenes()):
        inst = build_identify(scene, i)
        assert inst.kind == "identify"
        assert len(inst.target_ids) == 1
        target = inst.scene.by_id(inst.target_ids[0])
        assert zone_of(target.position.azimuth_deg) in (2, 3)
        assert target.color in ("red", "yellow", "blue")
        assert inst.correct_answer == Answer("color", target.color)
        assert oracle_answer(inst) == inst.correct_answer


def test_identify_deterministic():
    scene = generate_scene(SceneConfig(size=10), 1)
    assert build_identify(scene, 5) == build_identify(scene, 5)


def test_identify_mirror_flips_about_half_the_time():
    flipped = 0
    total = 60
    for i, scene in enumerate(scenes(total)):
        inst = build_identify(scene, i)
        original_azimuths = {
            o.id: o.position.azimuth_deg for o in scene.objects
        }
        got = inst.scene.by_id(0).position.azimuth_deg
        if abs(got - original_azimuths[0]) > 1e-9:
            assert got == pytest.approx((360.0 - original_azimuths[0]) % 360.0)
            flipped += 1
    assert 10 <= flipped <= 50


def test_mirror_scene_reflects_azimuth():
    scene = generate_scene(SceneConfig(size=10), 2)
    mirrored = mirror_scene(scene)
    for a, b in zip(scene.objects, mirrored.objects):
        assert b.position.azimuth_deg == pytest.approx(
            (360.0 - a.position.azimuth_deg) % 360.0
        )
        assert b.position.radius_m == a.position.radius_m
    assert mirrored.zone_assignment == {
        o.id: zone_of(o.position.azimuth_deg) for o in mirrored.objects
    }


def test_compare_constraints():
    for i, scene in enumerate(scenes()):
        inst = build_compare(scene, i)
        assert len(inst.target_ids) == 3
        targets = [inst.scene.by_id(t) for t in inst.target_ids]
        zones = {zone_of(t.position.azimuth_deg) for t in targets}
        assert len(zones) == 3
        for j in range(3):
            for k in range(j + 1, 3):
                sep = abs(
                    normalize_angle(
                        targets[j].position.azimuth_deg
                        - targets[k].position.azimuth_deg
                    )
                )
                assert sep >= COMPARE_MIN_SEPARATION_DEG
        ratings = [t.rating for t in targets]
        assert len(set(ratings)) == 3
        assert all(1 <= r <= 4 for r in ratings)  # no 5-star targets
        colors = [t.color for t in targets]
        assert len(set(colors)) == 3
        best = max(targets, key=lambda t: t.rating)
        assert inst.correct_answer == Answer("color", best.color)
        assert oracle_answer(inst) == inst.correct_answer


def test_summarize_constraints():
    for i, scene in enumerate(scenes(100)):
        inst = build_summarize(scene, i)
        red = inst.clusters["red"]
        blue = inst.clusters["blue"]
        assert len(red) == RED_CLUSTER_SIZE
        assert len(blue) == BLUE_CLUSTER_SIZE
        assert not (set(red) & set(blue))
        assert inst.target_ids == (red[0], blue[0])
        seeds = [inst.scene.by_id(t) for t in inst.target_ids]
        assert zone_of(seeds[0].position.azimuth_deg) != zone_of(
            seeds[1].position.azimuth_deg
        )
        sum_red = sum(inst.scene.by_id(i).rating for i in red)
        sum_blue = sum(inst.scene.by_id(i).rating for i in blue)
        assert sum_red % RED_CLUSTER_SIZE == 0  # integer means
        assert sum_blue % BLUE_CLUSTER_SIZE == 0
        assert all(o.color == "grey" for o in inst.scene.objects)
        assert oracle_answer(inst) == inst.correct_answer


def test_summarize_answer_distribution():
    counts = {"red": 0, "blue": 0, "equal": 0}
    for i, scene in enumerate(scenes(200)):
        counts[build_summarize(scene, i).correct_answer.value] += 1
    assert all(c >= 0.10 * 200 for c in counts.values()), counts


def test_label_highlights():
    scene = generate_scene(SceneConfig(size=10), 4)
    ident = build_identify(scene, 4)
    assert ident.label_highlights() == {ident.target_ids[0]: "green"}

    summ = build_summarize(scene, 4)
    pre = summ.label_highlights()
    assert pre == {summ.target_ids[0]: "red", summ.target_ids[1]: "blue"}
    post = summ.label_highlights(frozenset(("red",)))
    for oid in summ.clusters["red"]:
        assert post[oid] == "red"
    assert post[summ.target_ids[1]] == "blue"


def test_object_colors_reveal():
    scene = generate_scene(SceneConfig(size=10), 9)
    summ = build_summarize(scene, 9)
    pre = summ.object_colors()
    assert set(pre.values()) == {"grey"}
    post = summ.object_colors(frozenset(("blue",)))
    for oid in summ.clusters["blue"]:
        assert post[oid] == "blue"


def test_build_task_dispatch():
    scene = generate_scene(SceneConfig(size=10), 8)
    assert build_task("identify", scene, 8).kind == "identify"
    with pytest.raises(ValueError):
        build_task("locate", scene, 8)


def test_instance_serialization_round_trip():
    scene = generate_scene(SceneConfig(size=10), 12)
    for kind in ("identify", "compare", "summarize"):
        inst = build_task(kind, scene, 12)
        doc = json.loads(instance_to_json(inst))
        back = instance_from_dict(doc)
        assert back == inst


def test_instance_serialization_answer_withheld():
    scene = generate_scene(SceneConfig(size=10), 13)
    inst = build_task("compare", scene, 13)
    doc = instance_to_dict(inst, include_answer=False)
    assert "correct_answer" not in doc
