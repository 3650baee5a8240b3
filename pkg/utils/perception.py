"""
Perception Module
Semicircular perceptual region, occlusion, pondered signal values,
compound food and water detection and the short reverberation memory
"""

import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .world import (Stimulus, StimulusKind, Vec2, World, distance,
                    segment_blocked)

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


def normalize_angle(theta: float) -> float:
    """Map an angle into [0, 2*pi)"""
    value = math.fmod(theta, TWO_PI)
    if value < 0.0:
        value += TWO_PI
    if value >= TWO_PI:
        value = 0.0
    return value


def wrap_to_pi(angle: float) -> float:
    """Map an angle into (-pi, pi]"""
    value = math.fmod(angle + math.pi, TWO_PI)
    if value <= 0.0:
        value += TWO_PI
    return value - math.pi


@dataclass(frozen=True)
class Pose:
    position: Vec2
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'theta', normalize_angle(self.theta))

    @property
    def heading(self) -> Vec2:
        return Vec2(math.cos(self.theta), math.sin(self.theta))

    def bearing_to(self, point: Vec2) -> float:
        """Angle of point relative to the heading, in (-pi, pi]"""
        delta = point - self.position
        return wrap_to_pi(math.atan2(delta.x, delta.z) - self.theta)


@dataclass(frozen=True)
class PerceptionParams:
    base_radius: float = 8.0
    d_min: float = 0.5
    memory_decay: float = 0.9
    forget_eps: float = 0.01
    pairing_distance: float = 2.0
    at_range_margin: float = 0.3
    collision_lookahead: float = 0.5

    @classmethod
    def from_dict(cls, values: Dict) -> 'PerceptionParams':
        return cls(**values)

    def violations(self, prefix: str = 'perception') -> List[str]:
        problems = []
        if not self.base_radius > 0:
            problems.append(f"{prefix}.base_radius: must be > 0")
        if not self.d_min > 0:
            problems.append(f"{prefix}.d_min: must be > 0")
        if not 0 < self.memory_decay < 1:
            problems.append(f"{prefix}.memory_decay: must be in (0, 1)")
        if not self.forget_eps > 0:
            problems.append(f"{prefix}.forget_eps: must be > 0")
        for name in ('pairing_distance', 'at_range_margin', 'collision_lookahead'):
            if getattr(self, name) < 0:
                problems.append(f"{prefix}.{name}: must be >= 0")
        return problems


class PerceptKind(Enum):
    WATER = 'Water'
    FOOD = 'Food'
    GRASS = 'Grass'
    BLOB = 'Blob'
    RED_SPOT = 'RedSpot'
    YELLOW_SPOT = 'YellowSpot'
    FOOD_AND_WATER = 'FoodAndWater'
    OBSTACLE = 'Obstacle'

    @classmethod
    def of(cls, kind: StimulusKind) -> 'PerceptKind':
        return cls(kind.value)

    @property
    def ordinal(self) -> int:
        return _PERCEPT_ORDER[self]


_PERCEPT_ORDER = {kind: i for i, kind in enumerate(PerceptKind)}


@dataclass(frozen=True)
class Percept:
    kind: PerceptKind
    value: float
    nearest_distance: float
    bearing: float
    at_range: bool = False
    target_id: Optional[int] = None
    remembered: bool = False
    partner_id: Optional[int] = None       # water member of a food and water pair
    nearest_magnitude: float = 0.0
    target_position: Optional[Vec2] = None


@dataclass(frozen=True)
class MemoryEntry:
    value: float
    last_bearing: float                    # absolute direction when last seen
    last_distance: float
    ticks_since_seen: int = 0
    target_id: Optional[int] = None
    partner_id: Optional[int] = None
    last_position: Optional[Vec2] = None
    nearest_magnitude: float = 0.0


@dataclass(frozen=True)
class PerceptMemory:
    entries: Dict[PerceptKind, MemoryEntry] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, kind: PerceptKind) -> Optional[MemoryEntry]:
        return self.entries.get(kind)


def effective_radius(params: PerceptionParams, lucidity: float) -> float:
    return params.base_radius * min(1.0, max(0.0, lucidity))


def in_perceptual_region(pose: Pose, r_p: float, point: Vec2) -> bool:
    """Forward semicircle of radius r_p centred on the animat"""
    delta = point - pose.position
    if delta.z * delta.z + delta.x * delta.x >= r_p * r_p:
        return False
    return delta.dot(pose.heading) > 0.0


def _ratio(magnitude: float, d: float, d_min: float) -> float:
    return magnitude / max(d, d_min)


def _squash(s: float) -> float:
    return s / (1.0 + s)


def ponder(magnitudes_and_distances: Iterable[Tuple[float, float]], d_min: float) -> float:
    """Bounded signal from the summed magnitude/distance ratios"""
    s = sum(_ratio(m, d, d_min) for m, d in magnitudes_and_distances)
    return _squash(s)


def reach(animat_radius: float, stimulus: Stimulus, params: PerceptionParams) -> float:
    return animat_radius + stimulus.body_radius + params.at_range_margin


def _memory_entry(percept: Percept, pose: Pose) -> MemoryEntry:
    return MemoryEntry(
        value=percept.value,
        last_bearing=normalize_angle(pose.theta + percept.bearing),
        last_distance=percept.nearest_distance,
        ticks_since_seen=0,
        target_id=percept.target_id,
        partner_id=percept.partner_id,
        last_position=percept.target_position,
        nearest_magnitude=percept.nearest_magnitude,
    )


def decay_memory(memory: PerceptMemory, params: PerceptionParams) -> PerceptMemory:
    """Geometric decay of every entry; entries below the forget threshold vanish"""
    entries = {}
    for kind, entry in memory.entries.items():
        value = entry.value * params.memory_decay
        if value < params.forget_eps:
            logger.debug(f"Forgot {kind.value}")
            continue
        entries[kind] = replace(entry, value=value, ticks_since_seen=entry.ticks_since_seen + 1)
    return PerceptMemory(entries)


def _remembered_percept(kind: PerceptKind, entry: MemoryEntry, pose: Pose) -> Percept:
    if entry.last_position is not None:
        bearing = pose.bearing_to(entry.last_position)
        dist = distance(pose.position, entry.last_position)
    else:
        bearing = wrap_to_pi(entry.last_bearing - pose.theta)
        dist = entry.last_distance
    return Percept(kind=kind, value=entry.value, nearest_distance=dist, bearing=bearing,
                   at_range=False, target_id=entry.target_id, remembered=True,
                   partner_id=entry.partner_id, nearest_magnitude=entry.nearest_magnitude,
                   target_position=entry.last_position)


def _best_pair(foods: Sequence[Tuple[Stimulus, float]], waters: Sequence[Tuple[Stimulus, float]],
               params: PerceptionParams) -> Optional[Tuple[Stimulus, float, Stimulus, float, float]]:
    """Strongest perceived food/water pair lying within the pairing distance"""
    best = None
    for food, d_food in foods:
        for water, d_water in waters:
            if distance(food.position, water.position) > params.pairing_distance:
                continue
            value = ponder([(food.magnitude, d_food), (water.magnitude, d_water)], params.d_min)
            key = (-value, food.id, water.id)
            if best is None or key < best[0]:
                best = (key, (food, d_food, water, d_water, value))
    return best[1] if best else None


def sense_obstacles(world: World, pose: Pose, animat_radius: float,
                    params: PerceptionParams) -> Optional[Percept]:
    """Nearest obstacle or frame point ahead of the animat within the lookahead"""
    p = pose.position
    bounds = world.bounds
    candidates = [
        Vec2(bounds.min_corner.z, p.x), Vec2(bounds.max_corner.z, p.x),
        Vec2(p.z, bounds.min_corner.x), Vec2(p.z, bounds.max_corner.x),
    ]
    candidates.extend(obstacle.nearest_point(p) for obstacle in world.obstacles)

    limit = animat_radius + params.collision_lookahead
    heading = pose.heading
    best = None
    for point in candidates:
        d = distance(p, point)
        if d >= limit or (point - p).dot(heading) <= 0.0:
            continue
        if best is None or d < best[1]:
            best = (point, d)
    if best is None:
        return None
    point, d = best
    return Percept(kind=PerceptKind.OBSTACLE, value=ponder([(1.0, d)], params.d_min),
                   nearest_distance=d, bearing=pose.bearing_to(point), at_range=True,
                   target_position=point)


def sense(world: World, pose: Pose, lucidity: float, memory: PerceptMemory,
          params: PerceptionParams, animat_radius: float = 0.5) -> Tuple[List[Percept], PerceptMemory]:
    """
    One perception step

    Args:
        world: Current environment
        pose: Animat pose
        lucidity: Internal lucidity scaling the perception radius
        memory: Reverberation memory from the previous tick
        params: Perception parameters
        animat_radius: Body radius used for the at-range test

    Returns:
        (percepts ordered by kind, updated memory)
    """
    r_p = effective_radius(params, lucidity)
    visible: Dict[StimulusKind, List[Tuple[Stimulus, float]]] = {}
    for stimulus in world.stimuli:
        if not in_perceptual_region(pose, r_p, stimulus.position):
            continue
        if segment_blocked(world, pose.position, stimulus.position):
            continue
        visible.setdefault(stimulus.kind, []).append((stimulus, distance(pose.position, stimulus.position)))

    live: Dict[PerceptKind, Percept] = {}
    for kind, seen in visible.items():
        nearest, d_near = min(seen, key=lambda item: (item[1], item[0].id))
        live[PerceptKind.of(kind)] = Percept(
            kind=PerceptKind.of(kind),
            value=ponder([(s.magnitude, d) for s, d in seen], params.d_min),
            nearest_distance=d_near,
            bearing=pose.bearing_to(nearest.position),
            at_range=d_near < reach(animat_radius, nearest, params),
            target_id=nearest.id,
            nearest_magnitude=nearest.magnitude,
            target_position=nearest.position,
        )

    pair = _best_pair(visible.get(StimulusKind.FOOD, []), visible.get(StimulusKind.WATER, []), params)
    if pair is not None:
        food, d_food, water, d_water, value = pair
        midpoint = Vec2((food.position.z + water.position.z) / 2.0,
                        (food.position.x + water.position.x) / 2.0)
        live[PerceptKind.FOOD_AND_WATER] = Percept(
            kind=PerceptKind.FOOD_AND_WATER,
            value=value,
            nearest_distance=min(d_food, d_water),
            bearing=pose.bearing_to(midpoint),
            at_range=(d_food < reach(animat_radius, food, params)
                      and d_water < reach(animat_radius, water, params)),
            target_id=food.id,
            partner_id=water.id,
            nearest_magnitude=food.magnitude + water.magnitude,
            target_position=midpoint,
        )

    decayed = decay_memory(PerceptMemory({k: v for k, v in memory.entries.items() if k not in live}), params)
    entries = dict(decayed.entries)
    for kind, percept in live.items():
        if percept.value >= params.forget_eps:
            entries[kind] = _memory_entry(percept, pose)

    percepts = list(live.values())
    for kind, entry in decayed.entries.items():
        percepts.append(_remembered_percept(kind, entry, pose))

    obstacle = sense_obstacles(world, pose, animat_radius, params)
    if obstacle is not None:
        percepts.append(obstacle)

    percepts.sort(key=lambda p: p.kind.ordinal)
    return percepts, PerceptMemory(entries)
