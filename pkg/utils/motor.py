"""
Motor Module
Angular steps for each external action and the differential-drive kinematics
that apply them, clamped against obstacles and the world frame
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .behaviours import APPROACH_ACTIONS, CONSUMMATORY_ACTIONS, ExternalAction
from .perception import Pose, wrap_to_pi
from .world import Rect, Vec2, World, distance, segment_entry

logger = logging.getLogger(__name__)

CONTACT_EPS = 1e-9


def _unit(value: float) -> float:
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class MotorStep:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0 and 0.0 <= self.beta <= 1.0):
            raise ValueError(f"angular steps must be in [0, 1], got ({self.alpha}, {self.beta})")


STATIONARY = MotorStep(0.0, 0.0)


@dataclass(frozen=True)
class MotorParams:
    body_radius: float = 0.5
    gain: float = 0.5
    explore_step: float = 0.5
    steering_gain: float = 1.0
    avoid_turn: float = 0.5

    @classmethod
    def from_dict(cls, values: Dict) -> 'MotorParams':
        return cls(**values)

    def violations(self, prefix: str = 'motor') -> List[str]:
        problems = [f"{prefix}.{name}: must be > 0"
                    for name in ('body_radius', 'gain', 'explore_step', 'steering_gain', 'avoid_turn')
                    if not getattr(self, name) > 0]
        if self.explore_step > 1.0:
            problems.append(f"{prefix}.explore_step: must be <= 1")
        if self.avoid_turn > 1.0:
            problems.append(f"{prefix}.avoid_turn: must be <= 1")
        return problems


def steer(bearing: float, params: MotorParams) -> MotorStep:
    """Proportional steering towards a relative bearing around a 0.5 base step"""
    turn = min(1.0, max(-1.0, params.steering_gain * bearing))
    return MotorStep(_unit(0.5 + turn / 2.0), _unit(0.5 - turn / 2.0))


def step_for_action(action: ExternalAction, bearing_to_target: Optional[float],
                    rng: np.random.Generator, params: Optional[MotorParams] = None) -> MotorStep:
    """
    Angular steps realizing an external action

    Args:
        action: Selected external action
        bearing_to_target: Relative bearing of the action's target; for
            AvoidObstacle the obstacle, for Runaway the blob
        rng: Simulation generator, consumed only by Wander
        params: Motor parameters

    Returns:
        MotorStep
    """
    params = params or MotorParams()

    if action == ExternalAction.WANDER:
        alpha, beta = rng.random(2)
        return MotorStep(float(alpha), float(beta))

    if action == ExternalAction.EXPLORE:
        return MotorStep(params.explore_step, params.explore_step)

    if action in CONSUMMATORY_ACTIONS:
        return STATIONARY

    if action in APPROACH_ACTIONS:
        if bearing_to_target is None:
            raise ValueError(f"{action.value} needs a bearing to its target")
        return steer(bearing_to_target, params)

    if action == ExternalAction.RUNAWAY:
        if bearing_to_target is None:
            return MotorStep(0.5, 0.5)
        return steer(wrap_to_pi(bearing_to_target + math.pi), params)

    if action == ExternalAction.AVOID_OBSTACLE:
        # pivot on the wheel nearest the obstacle; apply_step still creeps forward by avoid_turn/2
        if bearing_to_target is not None and bearing_to_target >= 0.0:
            return MotorStep(0.0, params.avoid_turn)
        return MotorStep(params.avoid_turn, 0.0)

    return STATIONARY


def _bounds_fraction(inner: Rect, start: Vec2, delta: Vec2) -> float:
    """Largest t in [0, 1] keeping start + t*delta inside the inner frame"""
    t = 1.0
    for p0, d, lo, hi in ((start.z, delta.z, inner.min_corner.z, inner.max_corner.z),
                          (start.x, delta.x, inner.min_corner.x, inner.max_corner.x)):
        if d > 0.0:
            t = min(t, (hi - p0) / d)
        elif d < 0.0:
            t = min(t, (lo - p0) / d)
    return max(0.0, t)


def apply_step(pose: Pose, step: MotorStep, strength: float, params: MotorParams,
               world: World) -> Tuple[Pose, float, bool]:
    """
    Apply one angular step

    The heading turns by alpha - beta, then the animat advances the mean step
    times gain times strength. Motion stops body_radius short of obstacles and
    the frame.

    Returns:
        (new pose, distance actually moved, collision flag)
    """
    theta = pose.theta + (step.alpha - step.beta)
    turned = Pose(pose.position, theta)
    forward = ((step.alpha + step.beta) / 2.0) * params.gain * _unit(strength)
    if forward <= 0.0:
        return turned, 0.0, False

    start = pose.position
    delta = turned.heading.scale(forward)
    end = start + delta
    t = 1.0
    collided = False

    inner = world.bounds.inflate(-params.body_radius)
    if not inner.is_valid():
        inner = world.bounds
    t_frame = _bounds_fraction(inner, start, delta)
    if t_frame < 1.0:
        t, collided = t_frame, True

    for obstacle in world.obstacles:
        inflated = obstacle.inflate(params.body_radius)
        rect = obstacle if inflated.contains(start) else inflated
        t_hit = segment_entry(rect, start, end)
        if t_hit is not None and t_hit < t:
            t = max(0.0, t_hit - CONTACT_EPS / forward)
            collided = True

    position = start + delta.scale(t) if t < 1.0 else end
    moved = distance(start, position)
    if collided:
        logger.debug(f"Collision at ({position.z:.3f}, {position.x:.3f})")
    return Pose(position, theta), moved, collided
