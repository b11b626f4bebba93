"""Coordinate conventions, head-locked AR canvas model, and projection.

Conventions (normative for the whole package, the wire protocol, and CSV
output): angles in degrees, lengths in meters.  Azimuth is measured
clockwise from the user's initial facing direction.  Relative azimuth is
normalized to (-180, 180], clockwise positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# Tolerance for inclusive canvas-bound tests; avoids flicker of labels
# sitting exactly on the FoV edge.
EDGE_EPS = 1e-9


def normalize_angle(deg: float) -> float:
    """Wrap an angle into (-180, 180]."""
    a = math.fmod(deg, 360.0)
    if a > 180.0:
        a -= 360.0
    elif a <= -180.0:
        a += 360.0
    return a


def normalize_angle_positive(deg: float) -> float:
    """Wrap an angle into [0, 360)."""
    a = math.fmod(deg, 360.0)
    if a < 0.0:
        a += 360.0
    # adding 360 to a tiny negative can round to exactly 360
    return 0.0 if a >= 360.0 else a


@dataclass(frozen=True)
class WorldPosition:
    """Cylindrical position of a physical object around the user."""

    azimuth_deg: float
    radius_m: float
    height_m: float

    def __post_init__(self) -> None:
        if self.radius_m <= 0:
            raise ValueError(f"radius_m must be > 0, got {self.radius_m}")
        object.__setattr__(
            self, "azimuth_deg", normalize_angle_positive(self.azimuth_deg)
        )


@dataclass(frozen=True)
class ViewState:
    """User head orientation plus eye height."""

    yaw_deg: float = 0.0
    pitch_deg: float = 0.0
    eye_height_m: float = 1.6

    def __post_init__(self) -> None:
        object.__setattr__(self, "yaw_deg", normalize_angle_positive(self.yaw_deg))
        object.__setattr__(
            self, "pitch_deg", max(-90.0, min(90.0, self.pitch_deg))
        )


@dataclass(frozen=True)
class CanvasSpec:
    """Head-locked semi-transparent canvas at a fixed distance in front."""

    distance_m: float = 1.8
    fov_h_deg: float = 35.0
    fov_v_deg: float = 25.0
    half_width_m: float = field(init=False)
    half_height_m: float = field(init=False)

    def __post_init__(self) -> None:
        hw = self.distance_m * math.tan(math.radians(self.fov_h_deg / 2.0))
        hh = self.distance_m * math.tan(math.radians(self.fov_v_deg / 2.0))
        if hw <= 0 or hh <= 0:
            raise ValueError("canvas dimensions must be strictly positive")
        object.__setattr__(self, "half_width_m", hw)
        object.__setattr__(self, "half_height_m", hh)

    @property
    def width_m(self) -> float:
        return 2.0 * self.half_width_m

    @property
    def height_m(self) -> float:
        return 2.0 * self.half_height_m

    @property
    def perimeter_m(self) -> float:
        return 2.0 * (self.width_m + self.height_m)


@dataclass(frozen=True)
class ScreenPoint:
    """Offset from canvas center: x right-positive, y up-positive."""

    x_m: float
    y_m: float


def relative_direction(p: WorldPosition, v: ViewState) -> tuple[float, float]:
    """Relative azimuth in (-180, 180] and elevation in (-90, 90).

    Elevation is taken from eye level at neutral pitch; head pitch only
    affects the projection, not this value.
    """
    rel_azimuth = normalize_angle(p.azimuth_deg - v.yaw_deg)
    elevation = math.degrees(
        math.atan2(p.height_m - v.eye_height_m, p.radius_m)
    )
    return rel_azimuth, elevation


def project(
    p: WorldPosition, v: ViewState, c: CanvasSpec
) -> ScreenPoint | None:
    """Perspective-project a world point onto the canvas plane.

    Returns None when the point lies in the rear hemisphere of the head
    frame (depth <= 0).  The returned point may lie off-canvas.
    """
    rel_az = math.radians(p.azimuth_deg - v.yaw_deg)
    rho = p.radius_m
    # Head frame before pitch: f forward, r right, u up.
    f = rho * math.cos(rel_az)
    r = rho * math.sin(rel_az)
    u = p.height_m - v.eye_height_m
    # Pitch rotation (positive pitch looks up).
    pitch = math.radians(v.pitch_deg)
    f2 = f * math.cos(pitch) + u * math.sin(pitch)
    u2 = u * math.cos(pitch) - f * math.sin(pitch)
    if f2 <= 0.0:
        return None
    scale = c.distance_m / f2
    return ScreenPoint(r * scale, u2 * scale)


def on_canvas(pt: ScreenPoint, c: CanvasSpec) -> bool:
    """Bounds-inclusive canvas membership test."""
    return (
        abs(pt.x_m) <= c.half_width_m + EDGE_EPS
        and abs(pt.y_m) <= c.half_height_m + EDGE_EPS
    )


def is_in_view(p: WorldPosition, v: ViewState, c: CanvasSpec) -> bool:
    """True iff the point projects onto the canvas (bounds inclusive)."""
    pt = project(p, v, c)
    return pt is not None and on_canvas(pt, c)
