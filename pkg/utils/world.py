"""
World Module
The bounded (z, x) plane, its stimuli and obstacles, and geometry queries
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import List, Optional, Tuple

logger = logging.getLogger(__name__)

DEPLETION_FLOOR = 0.01


@dataclass(frozen=True)
class Vec2:
    """Point or vector in the (z, x) plane"""
    z: float
    x: float

    def __add__(self, other: 'Vec2') -> 'Vec2':
        return Vec2(self.z + other.z, self.x + other.x)

    def __sub__(self, other: 'Vec2') -> 'Vec2':
        return Vec2(self.z - other.z, self.x - other.x)

    def scale(self, k: float) -> 'Vec2':
        return Vec2(self.z * k, self.x * k)

    def dot(self, other: 'Vec2') -> float:
        return self.z * other.z + self.x * other.x

    def is_finite(self) -> bool:
        return math.isfinite(self.z) and math.isfinite(self.x)


class StimulusKind(Enum):
    WATER = 'Water'
    FOOD = 'Food'
    GRASS = 'Grass'
    BLOB = 'Blob'
    RED_SPOT = 'RedSpot'
    YELLOW_SPOT = 'YellowSpot'


@dataclass(frozen=True)
class Stimulus:
    id: int
    kind: StimulusKind
    position: Vec2
    magnitude: float
    body_radius: float = 0.3


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by its min and max corners"""
    min_corner: Vec2
    max_corner: Vec2

    def is_valid(self) -> bool:
        return (self.min_corner.z < self.max_corner.z
                and self.min_corner.x < self.max_corner.x)

    def contains(self, point: Vec2) -> bool:
        """Strict interior test"""
        return (self.min_corner.z < point.z < self.max_corner.z
                and self.min_corner.x < point.x < self.max_corner.x)

    def contains_rect(self, other: 'Rect') -> bool:
        return (self.min_corner.z <= other.min_corner.z and other.max_corner.z <= self.max_corner.z
                and self.min_corner.x <= other.min_corner.x and other.max_corner.x <= self.max_corner.x)

    def contains_closed(self, point: Vec2) -> bool:
        return (self.min_corner.z <= point.z <= self.max_corner.z
                and self.min_corner.x <= point.x <= self.max_corner.x)

    def inflate(self, margin: float) -> 'Rect':
        return Rect(Vec2(self.min_corner.z - margin, self.min_corner.x - margin),
                    Vec2(self.max_corner.z + margin, self.max_corner.x + margin))

    def nearest_point(self, point: Vec2) -> Vec2:
        return Vec2(min(max(point.z, self.min_corner.z), self.max_corner.z),
                    min(max(point.x, self.min_corner.x), self.max_corner.x))


class Obstacle(Rect):
    """Fixed obstacle; the parallelepiped projected onto the plane"""


@dataclass(frozen=True)
class World:
    bounds: Rect
    stimuli: Tuple[Stimulus, ...] = field(default_factory=tuple)
    obstacles: Tuple[Obstacle, ...] = field(default_factory=tuple)

    def stimulus(self, stimulus_id: int) -> Optional[Stimulus]:
        for stimulus in self.stimuli:
            if stimulus.id == stimulus_id:
                return stimulus
        return None


def distance(a: Vec2, b: Vec2) -> float:
    return math.hypot(a.z - b.z, a.x - b.x)


def _open_interval_overlap(p0: float, d: float, lo: float, hi: float) -> Tuple[float, float]:
    """Parameter interval where p0 + t*d lies strictly inside (lo, hi)"""
    if d == 0.0:
        if lo < p0 < hi:
            return -math.inf, math.inf
        return math.inf, -math.inf
    t_a = (lo - p0) / d
    t_b = (hi - p0) / d
    return min(t_a, t_b), max(t_a, t_b)


def segment_hits_rect(rect: Rect, start: Vec2, end: Vec2) -> bool:
    """True iff the open segment (start, end) meets the open interior of rect"""
    delta = end - start
    z_lo, z_hi = _open_interval_overlap(start.z, delta.z, rect.min_corner.z, rect.max_corner.z)
    x_lo, x_hi = _open_interval_overlap(start.x, delta.x, rect.min_corner.x, rect.max_corner.x)
    t_lo = max(0.0, z_lo, x_lo)
    t_hi = min(1.0, z_hi, x_hi)
    return t_lo < t_hi


def segment_blocked(world: World, start: Vec2, end: Vec2) -> bool:
    """Line-of-sight test against obstacle interiors; the frame is ignored here"""
    return any(segment_hits_rect(obstacle, start, end) for obstacle in world.obstacles)


def segment_entry(rect: Rect, start: Vec2, end: Vec2) -> Optional[float]:
    """
    Parameter t in [0, 1] at which the segment first enters the closed rect

    Returns None when the segment never touches it or starts inside it.
    """
    delta = end - start
    t_enter, t_exit = 0.0, 1.0
    for p0, d, lo, hi in ((start.z, delta.z, rect.min_corner.z, rect.max_corner.z),
                          (start.x, delta.x, rect.min_corner.x, rect.max_corner.x)):
        if d == 0.0:
            if p0 < lo or p0 > hi:
                return None
            continue
        t_a = (lo - p0) / d
        t_b = (hi - p0) / d
        t_enter = max(t_enter, min(t_a, t_b))
        t_exit = min(t_exit, max(t_a, t_b))
    if t_enter > t_exit or rect.contains(start):
        return None
    return t_enter


def deplete_stimulus(world: World, stimulus_id: int, amount: float,
                     floor: float = DEPLETION_FLOOR) -> Tuple[World, bool]:
    """
    Reduce a stimulus magnitude, removing it once at or below the floor

    Returns:
        (world, found) where found is False when the id is unknown
    """
    target = world.stimulus(stimulus_id)
    if target is None:
        logger.warning(f"Depletion of unknown stimulus id {stimulus_id} ignored")
        return world, False

    magnitude = max(0.0, target.magnitude - max(0.0, amount))
    if magnitude <= floor:
        logger.info(f"Stimulus {stimulus_id} ({target.kind.value}) depleted and removed")
        remaining = tuple(s for s in world.stimuli if s.id != stimulus_id)
    else:
        remaining = tuple(replace(s, magnitude=magnitude) if s.id == stimulus_id else s
                          for s in world.stimuli)
    return replace(world, stimuli=remaining), True


def nearest_of_kind(world: World, kind: StimulusKind,
                    origin: Vec2) -> Optional[Tuple[Stimulus, float]]:
    best = None
    for stimulus in world.stimuli:
        if stimulus.kind != kind:
            continue
        d = distance(origin, stimulus.position)
        if best is None or d < best[1] or (d == best[1] and stimulus.id < best[0].id):
            best = (stimulus, d)
    return best


def move_stimulus(world: World, stimulus_id: int, position: Vec2) -> Tuple[World, bool]:
    if world.stimulus(stimulus_id) is None:
        return world, False
    moved = tuple(replace(s, position=position) if s.id == stimulus_id else s
                  for s in world.stimuli)
    return replace(world, stimuli=moved), True


def add_stimulus(world: World, stimulus: Stimulus) -> Tuple[World, bool]:
    if world.stimulus(stimulus.id) is not None:
        return world, False
    return replace(world, stimuli=world.stimuli + (stimulus,)), True


def remove_stimulus(world: World, stimulus_id: int) -> Tuple[World, bool]:
    if world.stimulus(stimulus_id) is None:
        return world, False
    return replace(world, stimuli=tuple(s for s in world.stimuli if s.id != stimulus_id)), True


def world_violations(world: World) -> List[str]:
    """List every broken world invariant; empty when the world is consistent"""
    violations = []
    if not (world.bounds.min_corner.is_finite() and world.bounds.max_corner.is_finite()):
        violations.append("bounds: corners must be finite")
    elif not world.bounds.is_valid():
        violations.append("bounds: min corner must be below max corner")
    seen = set()
    for i, stimulus in enumerate(world.stimuli):
        if stimulus.id in seen:
            violations.append(f"stimuli[{i}].id: duplicate id {stimulus.id}")
        seen.add(stimulus.id)
        if not stimulus.position.is_finite():
            violations.append(f"stimuli[{i}].position: must be finite")
        elif not world.bounds.contains_closed(stimulus.position):
            violations.append(f"stimuli[{i}].position: outside world bounds")
        if not (stimulus.magnitude > 0 and math.isfinite(stimulus.magnitude)):
            violations.append(f"stimuli[{i}].magnitude: must be finite and > 0")
        if not (stimulus.body_radius >= 0 and math.isfinite(stimulus.body_radius)):
            violations.append(f"stimuli[{i}].body_radius: must be finite and >= 0")
    for i, obstacle in enumerate(world.obstacles):
        if not obstacle.is_valid():
            violations.append(f"obstacles[{i}]: min corner must be below max corner")
        elif not world.bounds.contains_rect(obstacle):
            violations.append(f"obstacles[{i}]: outside world bounds")
    return violations
