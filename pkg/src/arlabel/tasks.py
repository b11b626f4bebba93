"""Identify / Compare / Summarize trial construction and answer oracle.

Target-selection constraints: Identify picks a target away from the front
zone (after a seeded mirror flip), Compare spreads three targets so no two
fit the FoV at once, Summarize builds disjoint red (3) and blue (4)
clusters whose mean ratings are integers.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, replace

from .geometry import WorldPosition, normalize_angle
from .scene import Scene, SceneObject, scene_from_dict, scene_to_dict, zone_of

TASK_KINDS = ("identify", "compare", "summarize")
OBJECT_COLORS = ("red", "yellow", "blue")

# Minimum pairwise circular separation of compare targets: wider than the
# 35-degree FoV plus label margin, so no two targets share a view.
COMPARE_MIN_SEPARATION_DEG = 40.0
RED_CLUSTER_SIZE = 3
BLUE_CLUSTER_SIZE = 4
MAX_ATTEMPTS = 1000


class NoEligibleTarget(Exception):
    pass


class NoFeasibleTriple(Exception):
    pass


class NoDisjointClusters(Exception):
    pass


@dataclass(frozen=True)
class Answer:
    kind: str  # "color" or "cluster"
    value: str  # red/yellow/blue for color; red/blue/equal for cluster

    def to_dict(self) -> dict:
        return {"kind": self.kind, "value": self.value}


@dataclass(frozen=True)
class TaskInstance:
    kind: str
    scene: Scene  # colors/ratings already applied
    target_ids: tuple[int, ...]
    correct_answer: Answer
    clusters: dict[str, tuple[int, ...]] | None = None

    def label_highlights(self, revealed: frozenset[str] = frozenset()) -> dict[int, str]:
        """Label colors; grey labels are reported as 'none'."""
        if self.kind in ("identify", "compare"):
            return {oid: "green" for oid in self.target_ids}
        highlights = {self.target_ids[0]: "red", self.target_ids[1]: "blue"}
        for cluster in revealed:
            for oid in self.clusters[cluster]:
                highlights[oid] = cluster
        return highlights

    def object_colors(self, revealed: frozenset[str] = frozenset()) -> dict[int, str]:
        colors = {o.id: o.color for o in self.scene.objects}
        if self.kind == "summarize":
            for cluster in revealed:
                for oid in self.clusters[cluster]:
                    colors[oid] = cluster
        return colors


def _recolor(scene: Scene, colors: dict[int, str]) -> Scene:
    return scene.with_objects(
        tuple(replace(o, color=colors.get(o.id, o.color)) for o in scene.objects)
    )


def _rerate(scene: Scene, ratings: dict[int, int]) -> Scene:
    return scene.with_objects(
        tuple(replace(o, rating=ratings.get(o.id, o.rating)) for o in scene.objects)
    )


def mirror_scene(scene: Scene) -> Scene:
    """Reflect azimuths about the initial facing direction."""
    objects = tuple(
        replace(
            o,
            position=WorldPosition(
                (360.0 - o.position.azimuth_deg) % 360.0,
                o.position.radius_m,
                o.position.height_m,
            ),
        )
        for o in scene.objects
    )
    return Scene(
        objects=objects,
        seed=scene.seed,
        zone_assignment={
            o.id: zone_of(o.position.azimuth_deg) for o in objects
        },
    )


def _circular_separation(a: float, b: float) -> float:
    return abs(normalize_angle(a - b))


def _objects_in_zones(scene: Scene, zones: set[int]) -> list[SceneObject]:
    return [
        o for o in scene.objects
        if zone_of(o.position.azimuth_deg) in zones
    ]


def build_identify(scene: Scene, seed: int) -> TaskInstance:
    """Single target in zone 2 or 3 (after a seeded mirror flip), label
    highlighted green; answer is the target object's color."""
    rng = random.Random(seed)
    if rng.random() < 0.5:
        scene = mirror_scene(scene)
    eligible = _objects_in_zones(scene, {2, 3})
    if not eligible:
        raise NoEligibleTarget("zones 2 and 3 contain no objects")
    target = rng.choice(sorted(eligible, key=lambda o: o.id))
    colors = {o.id: rng.choice(OBJECT_COLORS) for o in scene.objects}
    colored = _recolor(scene, colors)
    return TaskInstance(
        kind="identify",
        scene=colored,
        target_ids=(target.id,),
        correct_answer=Answer("color", colors[target.id]),
    )


def build_compare(scene: Scene, seed: int) -> TaskInstance:
    """Three targets in distinct zones, pairwise at least 40 degrees
    apart, distinct ratings from 1-4 and distinct colors; answer is the
    color of the highest-rated target."""
    rng = random.Random(seed)
    by_zone: dict[int, list[SceneObject]] = {z: [] for z in range(1, 6)}
    for o in scene.objects:
        by_zone[zone_of(o.position.azimuth_deg)].append(o)

    targets: list[SceneObject] | None = None
    for _ in range(MAX_ATTEMPTS):
        zones = rng.sample(range(1, 6), 3)
        picks = [rng.choice(sorted(by_zone[z], key=lambda o: o.id)) for z in zones]
        seps = [
            _circular_separation(
                picks[i].position.azimuth_deg, picks[j].position.azimuth_deg
            )
            for i in range(3)
            for j in range(i + 1, 3)
        ]
        if min(seps) >= COMPARE_MIN_SEPARATION_DEG:
            targets = picks
            break
    if targets is None:
        raise NoFeasibleTriple(f"no 40-degree-separated triple after {MAX_ATTEMPTS} tries")

    ratings = dict(zip((t.id for t in targets), rng.sample(range(1, 5), 3)))
    target_colors = dict(zip((t.id for t in targets), rng.sample(OBJECT_COLORS, 3)))
    colors = {
        o.id: target_colors.get(o.id, None) or rng.choice(OBJECT_COLORS)
        for o in scene.objects
    }
    staged = _rerate(_recolor(scene, colors), ratings)
    best = max(targets, key=lambda t: ratings[t.id])
    return TaskInstance(
        kind="compare",
        scene=staged,
        target_ids=tuple(t.id for t in targets),
        correct_answer=Answer("color", colors[best.id]),
    )


def _distance_3d(a: SceneObject, b: SceneObject) -> float:
    ax, ay, az = a.cartesian()
    bx, by, bz = b.cartesian()
    return math.sqrt((ax - bx) ** 2 + (ay - by) ** 2 + (az - bz) ** 2)


def _ratings_with_mean(rng: random.Random, size: int, mean: int) -> list[int]:
    """Integer ratings in [1,5] of the given length and exact mean."""
    total = size * mean
    for _ in range(MAX_ATTEMPTS):
        head = [rng.randint(1, 5) for _ in range(size - 1)]
        last = total - sum(head)
        if 1 <= last <= 5:
            return head + [last]
    # All-equal assignment always realizes an integer mean.
    return [mean] * size


def build_summarize(scene: Scene, seed: int) -> TaskInstance:
    """Red cluster of 3 and blue cluster of 4 grown from two seed objects
    in distinct zones; cluster mean ratings are integers; all objects are
    grey until the clusters are revealed."""
    if scene.size < 10:
        raise ValueError("summarize needs a scene of at least 10 objects")
    rng = random.Random(seed)
    by_zone: dict[int, list[SceneObject]] = {z: [] for z in range(1, 6)}
    for o in scene.objects:
        by_zone[zone_of(o.position.azimuth_deg)].append(o)

    result = None
    for _ in range(MAX_ATTEMPTS):
        za, zb = rng.sample(range(1, 6), 2)
        red_seed = rng.choice(sorted(by_zone[za], key=lambda o: o.id))
        blue_seed = rng.choice(sorted(by_zone[zb], key=lambda o: o.id))
        red = _cluster_around(scene, red_seed, RED_CLUSTER_SIZE)
        blue = _cluster_around(scene, blue_seed, BLUE_CLUSTER_SIZE)
        if not (set(red) & set(blue)):
            result = (red_seed, blue_seed, red, blue)
            break
    if result is None:
        raise NoDisjointClusters(f"no disjoint clusters after {MAX_ATTEMPTS} tries")
    red_seed, blue_seed, red, blue = result

    mean_pair = rng.randrange(25)
    m_red, m_blue = mean_pair // 5 + 1, mean_pair % 5 + 1
    ratings: dict[int, int] = {}
    ratings.update(zip(red, _ratings_with_mean(rng, RED_CLUSTER_SIZE, m_red)))
    ratings.update(zip(blue, _ratings_with_mean(rng, BLUE_CLUSTER_SIZE, m_blue)))

    staged = _rerate(
        _recolor(scene, {o.id: "grey" for o in scene.objects}), ratings
    )
    if m_red > m_blue:
        answer = "red"
    elif m_blue > m_red:
        answer = "blue"
    else:
        answer = "equal"
    return TaskInstance(
        kind="summarize",
        scene=staged,
        target_ids=(red_seed.id, blue_seed.id),
        correct_answer=Answer("cluster", answer),
        clusters={"red": red, "blue": blue},
    )


def _cluster_around(scene: Scene, seed_obj: SceneObject, size: int) -> tuple[int, ...]:
    others = sorted(
        (o for o in scene.objects if o.id != seed_obj.id),
        key=lambda o: (_distance_3d(seed_obj, o), o.id),
    )
    return (seed_obj.id,) + tuple(o.id for o in others[: size - 1])


BUILDERS = {
    "identify": build_identify,
    "compare": build_compare,
    "summarize": build_summarize,
}


def build_task(kind: str, scene: Scene, seed: int) -> TaskInstance:
    try:
        builder = BUILDERS[kind]
    except KeyError:
        raise ValueError(f"unknown task kind: {kind!r}") from None
    return builder(scene, seed)


def oracle_answer(instance: TaskInstance) -> Answer:
    """Recompute the correct answer from scene state by brute force,
    independent of the value stored at build time."""
    if instance.kind == "identify":
        target = instance.scene.by_id(instance.target_ids[0])
        return Answer("color", target.color)
    if instance.kind == "compare":
        targets = [instance.scene.by_id(i) for i in instance.target_ids]
        best = targets[0]
        for t in targets[1:]:
            if t.rating > best.rating:
                best = t
        return Answer("color", best.color)
    if instance.kind == "summarize":
        sum_red = sum(instance.scene.by_id(i).rating for i in instance.clusters["red"])
        sum_blue = sum(instance.scene.by_id(i).rating for i in instance.clusters["blue"])
        # Compare sum_red/3 with sum_blue/4 exactly.
        lhs, rhs = sum_red * BLUE_CLUSTER_SIZE, sum_blue * RED_CLUSTER_SIZE
        if lhs > rhs:
            return Answer("cluster", "red")
        if rhs > lhs:
            return Answer("cluster", "blue")
        return Answer("cluster", "equal")
    raise ValueError(f"unknown task kind: {instance.kind!r}")


# ---------------------------------------------------------------------------
# Serialization


def instance_to_dict(
    instance: TaskInstance,
    reveal_state: frozenset[str] = frozenset(),
    include_answer: bool = True,
) -> dict:
    doc = {
        "scene": scene_to_dict(instance.scene),
        "kind": instance.kind,
        "target_ids": list(instance.target_ids),
        "clusters": (
            {k: list(v) for k, v in instance.clusters.items()}
            if instance.clusters
            else None
        ),
        "reveal_state": sorted(reveal_state),
    }
    if include_answer:
        doc["correct_answer"] = instance.correct_answer.to_dict()
    return doc


def instance_to_json(instance: TaskInstance, **kwargs) -> str:
    return json.dumps(instance_to_dict(instance, **kwargs))


def instance_from_dict(doc: dict) -> TaskInstance:
    clusters = doc.get("clusters")
    return TaskInstance(
        kind=doc["kind"],
        scene=scene_from_dict(doc["scene"]),
        target_ids=tuple(doc["target_ids"]),
        correct_answer=Answer(**doc["correct_answer"]),
        clusters=(
            {k: tuple(v) for k, v in clusters.items()} if clusters else None
        ),
    )
