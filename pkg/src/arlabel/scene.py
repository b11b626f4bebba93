"""Seeded generation and validation of object fields around the user.

The spatial protocol: 10 or 20 cubes in a 2.5-3.5 m annulus at heights
0.5-2.0 m, at least 0.40 m apart (3D center distance), balanced over five
72-degree azimuth zones with zone 1 centered on the initial facing
direction.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field, replace

from .geometry import WorldPosition, normalize_angle_positive

SCENE_JSON_VERSION = 1

COLORS = ("red", "yellow", "blue", "grey")

# Fruits and flowers; enough unique entries for a 20-object scene.
DEFAULT_NAME_POOL = (
    "Apple", "Banana", "Cherry", "Date", "Elderberry", "Fig", "Grape",
    "Honeydew", "Kiwi", "Lemon", "Mango", "Nectarine", "Orange", "Papaya",
    "Quince", "Raspberry", "Strawberry", "Tangerine", "Watermelon", "Plum",
    "Tulip", "Rose", "Daisy", "Orchid", "Lily", "Peony",
)

ZONE_WIDTH_DEG = 72.0
# Zone 1 is centered on azimuth 0; zones advance clockwise.
ZONE_1_START_DEG = -36.0

MAX_REJECTIONS = 10_000


class GenerationFailure(Exception):
    """Rejection-sampling budget exhausted; the config is infeasible."""


def zone_of(azimuth_deg: float) -> int:
    """Zone in {1..5}; zone 1 = [-36, 36), half-open clockwise sectors."""
    shifted = normalize_angle_positive(azimuth_deg - ZONE_1_START_DEG)
    return int(shifted // ZONE_WIDTH_DEG) + 1


def zone_interval(zone: int) -> tuple[float, float]:
    """Start/end azimuth of a zone on the clockwise circle (start < end,
    possibly exceeding 360 for the wrap-around zone 1)."""
    start = ZONE_1_START_DEG + (zone - 1) * ZONE_WIDTH_DEG
    return start, start + ZONE_WIDTH_DEG


@dataclass(frozen=True)
class SceneObject:
    id: int
    name: str
    rating: int
    color: str
    position: WorldPosition
    size_m: float = 0.20

    def cartesian(self) -> tuple[float, float, float]:
        a = math.radians(self.position.azimuth_deg)
        r = self.position.radius_m
        return (r * math.sin(a), r * math.cos(a), self.position.height_m)


def _distance_3d(a: SceneObject, b: SceneObject) -> float:
    ax, ay, az = a.cartesian()
    bx, by, bz = b.cartesian()
    return math.sqrt((ax - bx) ** 2 + (ay - by) ** 2 + (az - bz) ** 2)


@dataclass(frozen=True)
class SceneConfig:
    size: int = 10
    radius_range: tuple[float, float] = (2.5, 3.5)
    height_range: tuple[float, float] = (0.5, 2.0)
    min_separation: float = 0.40
    cube_edge: float = 0.20
    name_pool: tuple[str, ...] = DEFAULT_NAME_POOL

    def __post_init__(self) -> None:
        if self.size % 5 != 0:
            raise ValueError("size must be divisible by 5 for zone balance")
        if self.radius_range[0] >= self.radius_range[1]:
            raise ValueError("degenerate radius_range")
        if self.height_range[0] >= self.height_range[1]:
            raise ValueError("degenerate height_range")
        if len(set(self.name_pool)) != len(self.name_pool):
            raise ValueError("name_pool entries must be unique")
        if len(self.name_pool) < self.size:
            raise ValueError("name_pool smaller than scene size")


@dataclass(frozen=True)
class Scene:
    objects: tuple[SceneObject, ...]
    seed: int
    zone_assignment: dict[int, int] = field(default_factory=dict)

    def by_id(self, object_id: int) -> SceneObject:
        for obj in self.objects:
            if obj.id == object_id:
                return obj
        raise KeyError(object_id)

    def with_objects(self, objects: tuple[SceneObject, ...]) -> "Scene":
        return replace(self, objects=objects)

    @property
    def size(self) -> int:
        return len(self.objects)


def generate_scene(config: SceneConfig, seed: int) -> Scene:
    """Deterministic scene for (config, seed).

    All randomness comes from one seeded stream in a fixed draw order
    (per-object azimuth/radius/height, then names, then ratings) so
    determinism survives refactoring.
    """
    rng = random.Random(seed)
    per_zone = config.size // 5
    # Zone assignment is a fixed round-robin: ids 0..k-1 in zone 1, etc.
    zones = [z for z in range(1, 6) for _ in range(per_zone)]

    placed: list[tuple[float, float, float]] = []  # (azimuth, radius, height)
    rejections = 0
    for i in range(config.size):
        lo_az, hi_az = zone_interval(zones[i])
        while True:
            azimuth = normalize_angle_positive(rng.uniform(lo_az, hi_az))
            radius = rng.uniform(*config.radius_range)
            height = rng.uniform(*config.height_range)
            if _separated(azimuth, radius, height, placed, config.min_separation):
                placed.append((azimuth, radius, height))
                break
            rejections += 1
            if rejections > MAX_REJECTIONS:
                raise GenerationFailure(
                    f"exceeded {MAX_REJECTIONS} rejections for seed {seed}"
                )

    names = rng.sample(list(config.name_pool), config.size)
    ratings = [rng.randint(1, 5) for _ in range(config.size)]

    objects = tuple(
        SceneObject(
            id=i,
            name=names[i],
            rating=ratings[i],
            color="grey",
            position=WorldPosition(*placed[i]),
            size_m=config.cube_edge,
        )
        for i in range(config.size)
    )
    return Scene(
        objects=objects,
        seed=seed,
        zone_assignment={i: zones[i] for i in range(config.size)},
    )


def _separated(
    azimuth: float,
    radius: float,
    height: float,
    placed: list[tuple[float, float, float]],
    min_sep: float,
) -> bool:
    a = math.radians(azimuth)
    x, y = radius * math.sin(a), radius * math.cos(a)
    for paz, pr, ph in placed:
        pa = math.radians(paz)
        px, py = pr * math.sin(pa), pr * math.cos(pa)
        if (x - px) ** 2 + (y - py) ** 2 + (height - ph) ** 2 < min_sep**2:
            return False
    return True


@dataclass(frozen=True)
class Violation:
    kind: str
    object_ids: tuple[int, ...]
    detail: str


def validate_scene(
    scene: Scene, config: SceneConfig | None = None
) -> list[Violation]:
    """Every invariant violation, with the offending ids. Empty = valid."""
    cfg = config or SceneConfig(size=_nearest_size(scene.size))
    violations: list[Violation] = []

    seen_names: dict[str, int] = {}
    for obj in scene.objects:
        if obj.rating not in (1, 2, 3, 4, 5):
            violations.append(
                Violation("rating-range", (obj.id,), f"rating={obj.rating}")
            )
        if obj.color not in COLORS:
            violations.append(
                Violation("color", (obj.id,), f"color={obj.color!r}")
            )
        if obj.name in seen_names:
            violations.append(
                Violation(
                    "duplicate-name",
                    (seen_names[obj.name], obj.id),
                    f"name={obj.name!r}",
                )
            )
        seen_names[obj.name] = obj.id
        r = obj.position.radius_m
        if not cfg.radius_range[0] <= r <= cfg.radius_range[1]:
            violations.append(Violation("radius-range", (obj.id,), f"radius={r}"))
        h = obj.position.height_m
        if not cfg.height_range[0] <= h <= cfg.height_range[1]:
            violations.append(Violation("height-range", (obj.id,), f"height={h}"))
        assigned = scene.zone_assignment.get(obj.id)
        if assigned is not None and zone_of(obj.position.azimuth_deg) != assigned:
            violations.append(
                Violation(
                    "zone-mismatch",
                    (obj.id,),
                    f"azimuth {obj.position.azimuth_deg} not in zone {assigned}",
                )
            )

    objs = scene.objects
    for i in range(len(objs)):
        for j in range(i + 1, len(objs)):
            d = _distance_3d(objs[i], objs[j])
            if d < cfg.min_separation:
                violations.append(
                    Violation(
                        "separation",
                        (objs[i].id, objs[j].id),
                        f"distance={d:.4f}",
                    )
                )

    counts = [0] * 5
    for obj in objs:
        counts[zone_of(obj.position.azimuth_deg) - 1] += 1
    expected = len(objs) / 5
    if any(c != expected for c in counts):
        violations.append(
            Violation("zone-balance", tuple(o.id for o in objs), f"counts={counts}")
        )
    return violations


def _nearest_size(n: int) -> int:
    return n if n % 5 == 0 else (n // 5 + 1) * 5


def scene_to_dict(scene: Scene, config: SceneConfig | None = None) -> dict:
    cfg = config or SceneConfig(size=_nearest_size(scene.size))
    return {
        "version": SCENE_JSON_VERSION,
        "seed": scene.seed,
        "config": {
            "size": cfg.size,
            "radius_range": list(cfg.radius_range),
            "height_range": list(cfg.height_range),
            "min_separation": cfg.min_separation,
            "cube_edge": cfg.cube_edge,
        },
        "objects": [
            {
                "id": o.id,
                "name": o.name,
                "rating": o.rating,
                "color": o.color,
                "azimuth_deg": o.position.azimuth_deg,
                "radius_m": o.position.radius_m,
                "height_m": o.position.height_m,
                "zone": scene.zone_assignment.get(
                    o.id, zone_of(o.position.azimuth_deg)
                ),
            }
            for o in scene.objects
        ],
    }


def scene_to_json(scene: Scene, config: SceneConfig | None = None) -> str:
    return json.dumps(scene_to_dict(scene, config), indent=2)


def scene_from_dict(doc: dict) -> Scene:
    if doc.get("version") != SCENE_JSON_VERSION:
        raise ValueError(f"unsupported scene version: {doc.get('version')}")
    objects = tuple(
        SceneObject(
            id=o["id"],
            name=o["name"],
            rating=o["rating"],
            color=o["color"],
            position=WorldPosition(o["azimuth_deg"], o["radius_m"], o["height_m"]),
            size_m=doc["config"].get("cube_edge", 0.20),
        )
        for o in doc["objects"]
    )
    return Scene(
        objects=objects,
        seed=doc["seed"],
        zone_assignment={o["id"]: o["zone"] for o in doc["objects"]},
    )


def scene_from_json(text: str) -> Scene:
    return scene_from_dict(json.loads(text))
