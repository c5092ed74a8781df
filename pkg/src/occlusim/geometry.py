"""Planar vectors, actor states, and relative-state construction.

The world is a 2D plan view: x runs along the road in the direction of
travel, y runs across it. Actors are discs (position, velocity, radius);
the collision-time math in :mod:`occlusim.ttc` works entirely on the
relative state built here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Vec2:
    """A 2D vector in meters (or m/s when used as a velocity)."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"vector components must be finite, got ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scaled(self, k: float) -> "Vec2":
        return Vec2(self.x * k, self.y * k)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


@dataclass(frozen=True, slots=True)
class ActorState:
    """Position, velocity, and bounding-disc radius of one road user."""

    pos: Vec2
    vel: Vec2
    radius: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.radius) and self.radius > 0.0):
            raise ValueError(f"radius must be positive and finite, got {self.radius}")


@dataclass(frozen=True, slots=True)
class RelativeState:
    """Pairwise state: position/velocity of one actor seen from another.

    r_sum is the sum of the two disc radii; the pair touches exactly when
    the relative position has norm r_sum.
    """

    x_rel: Vec2
    v_rel: Vec2
    r_sum: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r_sum) and self.r_sum > 0.0):
            raise ValueError(f"r_sum must be positive and finite, got {self.r_sum}")


def relative_state(ped: ActorState, av: ActorState) -> RelativeState:
    """Relative position/velocity of *ped* with respect to *av*.

    x_rel = ped.pos - av.pos, v_rel = ped.vel - av.vel,
    r_sum = ped.radius + av.radius.
    """
    return RelativeState(
        x_rel=ped.pos - av.pos,
        v_rel=ped.vel - av.vel,
        r_sum=ped.radius + av.radius,
    )
