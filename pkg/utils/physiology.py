"""
Physiology Module
The internal medium: needs growth, consummatory reduction,
strength/lucidity coupling and death
"""

import logging
from dataclasses import dataclass, fields, replace
from typing import Dict, List

from .behaviours import DriveKind, ExternalAction

logger = logging.getLogger(__name__)

INTERNAL_FIELDS = ('strength', 'lucidity', 'security', 'fatigue', 'thirst', 'hunger')


def _clamp(value: float) -> float:
    return min(1.0, max(0.0, value))


@dataclass(frozen=True)
class InternalState:
    """Six internal variables in [0, 1]; larger needs are needier"""
    strength: float = 1.0
    lucidity: float = 1.0
    security: float = 1.0
    fatigue: float = 0.0
    thirst: float = 0.0
    hunger: float = 0.0

    def as_dict(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in INTERNAL_FIELDS}

    def violations(self, prefix: str = 'internal') -> List[str]:
        return [f"{prefix}.{name}: must be in [0, 1]"
                for name in INTERNAL_FIELDS if not 0.0 <= getattr(self, name) <= 1.0]

    def need(self, drive: DriveKind) -> float:
        if drive == DriveKind.THIRST:
            return self.thirst
        if drive == DriveKind.HUNGER:
            return self.hunger
        if drive == DriveKind.FATIGUE:
            return self.fatigue
        if drive == DriveKind.THIRST_AND_HUNGER:
            return min(self.thirst, self.hunger)
        return 1.0 - self.security


@dataclass(frozen=True)
class PhysiologyParams:
    thirst_rate: float = 0.001
    hunger_rate: float = 0.001
    fatigue_gain: float = 0.002
    drink_rate: float = 0.02
    eat_rate: float = 0.02
    rest_rate: float = 0.01
    critical_threshold: float = 0.9
    satiation_threshold: float = 0.1
    drain_rate: float = 0.005
    restore_rate: float = 0.001

    @classmethod
    def from_dict(cls, values: Dict) -> 'PhysiologyParams':
        return cls(**values)

    def violations(self, prefix: str = 'physiology') -> List[str]:
        problems = []
        for f in fields(self):
            if getattr(self, f.name) < 0:
                problems.append(f"{prefix}.{f.name}: must be >= 0")
        if not 0 < self.satiation_threshold < self.critical_threshold < 1:
            problems.append(f"{prefix}.satiation_threshold: need 0 < satiation_threshold "
                            f"< critical_threshold < 1")
        return problems

    def consummation_rate(self, action: ExternalAction) -> float:
        return {
            ExternalAction.DRINK: self.drink_rate,
            ExternalAction.EAT: self.eat_rate,
            ExternalAction.REST: self.rest_rate,
        }.get(action, 0.0)


def tick_needs(state: InternalState, moved_distance: float, params: PhysiologyParams) -> InternalState:
    """Grow the needs, then drain or restore strength and lucidity"""
    thirst = _clamp(state.thirst + params.thirst_rate)
    hunger = _clamp(state.hunger + params.hunger_rate)
    fatigue = _clamp(state.fatigue + params.fatigue_gain * max(0.0, moved_distance))

    strength, lucidity = state.strength, state.lucidity
    worst = max(thirst, hunger, fatigue)
    if worst > params.critical_threshold:
        strength = _clamp(strength - params.drain_rate)
        lucidity = _clamp(lucidity - params.drain_rate)
    elif worst <= params.satiation_threshold:
        strength = _clamp(strength + params.restore_rate)
        lucidity = _clamp(lucidity + params.restore_rate)

    return replace(state, thirst=thirst, hunger=hunger, fatigue=fatigue,
                   strength=strength, lucidity=lucidity)


def apply_consummation(state: InternalState, action: ExternalAction,
                       params: PhysiologyParams) -> InternalState:
    """Consummatory actions reduce their need; appetitive actions change nothing"""
    if action == ExternalAction.DRINK:
        return replace(state, thirst=_clamp(state.thirst - params.drink_rate))
    if action == ExternalAction.EAT:
        return replace(state, hunger=_clamp(state.hunger - params.eat_rate))
    if action == ExternalAction.REST:
        return replace(state, fatigue=_clamp(state.fatigue - params.rest_rate))
    return state


def is_dead(state: InternalState) -> bool:
    return state.strength <= 0.0


def is_satiated(state: InternalState, drive_kind: DriveKind, params: PhysiologyParams) -> bool:
    """True when the need behind drive_kind is at or below the satiation threshold"""
    if drive_kind == DriveKind.SAFETY:
        raise ValueError("Safety has no satiation level")
    if drive_kind == DriveKind.THIRST_AND_HUNGER:
        return (state.thirst <= params.satiation_threshold
                and state.hunger <= params.satiation_threshold)
    return state.need(drive_kind) <= params.satiation_threshold
