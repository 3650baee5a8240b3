"""
Simulator Module
The perception, selection and action loop over a scenario, with scripted
events, seeded randomness, termination and trace production
"""

import logging
import math
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Dict, List, NamedTuple, Optional, Tuple

import numpy as np

from .behaviours import DriveKind, ExternalAction
from .ibenet import (IBeNet, IBeNetParams, SelectionState, action_target,
                     consummation_target)
from .motor import MotorParams, apply_step, step_for_action
from .perception import (PerceptKind, PerceptionParams, PerceptMemory, Pose,
                         sense)
from .physiology import (INTERNAL_FIELDS, InternalState, PhysiologyParams,
                         apply_consummation, is_dead, tick_needs)
from .world import (DEPLETION_FLOOR, Stimulus, Vec2, World, add_stimulus,
                    deplete_stimulus, move_stimulus, remove_stimulus,
                    world_violations)

logger = logging.getLogger(__name__)


class ScenarioValidationError(ValueError):
    """Raised with every violated field path of a scenario"""

    def __init__(self, violations: List[str]):
        self.violations = list(violations)
        super().__init__("Invalid scenario:\n  " + "\n  ".join(self.violations))


class EventKind(Enum):
    MOVE_STIMULUS = 'move_stimulus'
    ADD_STIMULUS = 'add_stimulus'
    REMOVE_STIMULUS = 'remove_stimulus'
    SET_INTERNAL = 'set_internal'


@dataclass(frozen=True)
class ScriptedEvent:
    tick: int
    kind: EventKind
    stimulus_id: Optional[int] = None
    position: Optional[Vec2] = None
    stimulus: Optional[Stimulus] = None
    field: Optional[str] = None
    value: Optional[float] = None


class Termination(Enum):
    MAX_TICKS = 'MaxTicks'
    DEATH = 'Death'


@dataclass(frozen=True)
class Scenario:
    world: World
    pose: Pose
    internal: InternalState = field(default_factory=InternalState)
    perception: PerceptionParams = field(default_factory=PerceptionParams)
    physiology: PhysiologyParams = field(default_factory=PhysiologyParams)
    motor: MotorParams = field(default_factory=MotorParams)
    ibenet: IBeNetParams = field(default_factory=IBeNetParams)
    seed: int = 0
    max_ticks: int = 1000
    events: Tuple[ScriptedEvent, ...] = ()
    name: str = 'scenario'
    depletion_floor: float = DEPLETION_FLOOR

    def with_overrides(self, seed: Optional[int] = None, max_ticks: Optional[int] = None,
                       explore_enabled: Optional[bool] = None) -> 'Scenario':
        scenario = self
        if seed is not None:
            scenario = replace(scenario, seed=seed)
        if max_ticks is not None:
            scenario = replace(scenario, max_ticks=max_ticks)
        if explore_enabled is not None:
            scenario = replace(scenario, ibenet=replace(scenario.ibenet, explore_enabled=explore_enabled))
        return scenario


@dataclass(frozen=True)
class TraceEvent:
    tick: int
    pose: Pose
    action: ExternalAction
    drive: Optional[DriveKind]
    drive_activation: Optional[float]
    internal: InternalState
    percepts: Dict[PerceptKind, float]
    collision: bool = False


@dataclass
class RunResult:
    events: List[TraceEvent]
    termination: Termination
    final_state: InternalState
    final_pose: Pose
    final_world: World
    scenario_name: str = 'scenario'
    seed: int = 0


class PatternSegment(NamedTuple):
    action: ExternalAction
    start_tick: int
    end_tick: int


def _non_finite(prefix: str, params) -> List[str]:
    return [f"{prefix}.{f.name}: must be finite" for f in fields(params)
            if isinstance(getattr(params, f.name), float) and not math.isfinite(getattr(params, f.name))]


def _added_stimulus_violations(world: World, stimulus: Stimulus, live_ids, prefix: str) -> List[str]:
    """Check a scripted stimulus against the world it will be added to"""
    alone = replace(world, stimuli=(stimulus,), obstacles=())
    problems = [f"{prefix}.{v.split('.', 1)[1]}" for v in world_violations(alone)
                if v.startswith('stimuli[0].')]
    if stimulus.id in live_ids:
        problems.append(f"{prefix}.id: duplicate id {stimulus.id}")
    return problems


def validate_scenario(scenario: Scenario) -> List[str]:
    """Collect every violation in a scenario; empty when runnable"""
    violations = []
    if scenario.max_ticks <= 0:
        violations.append("max_ticks: must be > 0")
    if not 0 <= scenario.seed < 2 ** 64:
        violations.append("seed: must be a 64-bit unsigned integer")
    if scenario.depletion_floor < 0:
        violations.append("depletion_floor: must be >= 0")
    violations.extend(f"world.{v}" for v in world_violations(scenario.world))

    position = scenario.pose.position
    if not position.is_finite() or not scenario.world.bounds.contains_closed(position):
        violations.append("animat.position: outside world bounds")
    elif any(obstacle.contains(position) for obstacle in scenario.world.obstacles):
        violations.append("animat.position: inside an obstacle")
    if not math.isfinite(scenario.pose.theta):
        violations.append("animat.theta: must be finite")

    violations.extend(scenario.internal.violations('internal'))
    violations.extend(scenario.perception.violations('perception'))
    violations.extend(scenario.physiology.violations('physiology'))
    violations.extend(scenario.motor.violations('motor'))
    violations.extend(scenario.ibenet.violations('ibenet'))
    for prefix, params in (('perception', scenario.perception), ('physiology', scenario.physiology),
                           ('motor', scenario.motor), ('ibenet', scenario.ibenet)):
        violations.extend(_non_finite(prefix, params))

    live_ids = {s.id for s in scenario.world.stimuli}
    previous = -1
    for i, event in enumerate(scenario.events):
        prefix = f"events[{i}]"
        if event.tick < 0:
            violations.append(f"{prefix}.tick: must be >= 0")
        if event.tick < previous:
            violations.append(f"{prefix}.tick: events must be sorted by tick")
        previous = event.tick
        if event.kind == EventKind.SET_INTERNAL:
            if event.field not in INTERNAL_FIELDS:
                violations.append(f"{prefix}.field: unknown internal variable {event.field!r}")
            if event.value is None or not 0.0 <= event.value <= 1.0:
                violations.append(f"{prefix}.value: must be in [0, 1]")
        elif event.kind == EventKind.ADD_STIMULUS:
            if event.stimulus is None:
                violations.append(f"{prefix}.stimulus: required")
            else:
                violations.extend(_added_stimulus_violations(scenario.world, event.stimulus, live_ids,
                                                             f"{prefix}.stimulus"))
                live_ids.add(event.stimulus.id)
        elif event.kind == EventKind.REMOVE_STIMULUS:
            live_ids.discard(event.stimulus_id)
        elif event.kind == EventKind.MOVE_STIMULUS:
            if event.position is None or not scenario.world.bounds.contains_closed(event.position):
                violations.append(f"{prefix}.position: outside world bounds")
    return violations


def check_scenario(scenario: Scenario) -> Scenario:
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioValidationError(violations)
    return scenario


class Simulation:
    """One animat in one world, advanced a tick at a time"""

    def __init__(self, scenario: Scenario):
        self.scenario = check_scenario(scenario)
        self.world = scenario.world
        self.pose = scenario.pose
        self.internal = scenario.internal
        self.memory = PerceptMemory()
        self.selection = SelectionState(persistence_bonus=scenario.ibenet.persistence_bonus)
        self.rng = np.random.default_rng(scenario.seed)
        self.net = IBeNet(scenario.ibenet)
        self.tick_count = 0
        self.events: List[TraceEvent] = []
        self.termination: Optional[Termination] = None
        self._pending = list(scenario.events)

    @property
    def terminated(self) -> bool:
        return self.termination is not None

    def _apply_scripted_events(self):
        while self._pending and self._pending[0].tick <= self.tick_count:
            event = self._pending.pop(0)
            ok = True
            if event.kind == EventKind.MOVE_STIMULUS:
                self.world, ok = move_stimulus(self.world, event.stimulus_id, event.position)
            elif event.kind == EventKind.ADD_STIMULUS:
                self.world, ok = add_stimulus(self.world, event.stimulus)
            elif event.kind == EventKind.REMOVE_STIMULUS:
                self.world, ok = remove_stimulus(self.world, event.stimulus_id)
            elif event.kind == EventKind.SET_INTERNAL:
                self.internal = replace(self.internal, **{event.field: event.value})
            if ok:
                logger.debug(f"tick {self.tick_count}: applied {event.kind.value}")
            else:
                logger.warning(f"tick {self.tick_count}: skipped {event.kind.value} "
                               f"(stimulus {event.stimulus_id})")

    def tick(self) -> TraceEvent:
        """Advance one perception-action cycle and record it"""
        if self.terminated:
            raise RuntimeError("Simulation already terminated")
        scenario = self.scenario
        self._apply_scripted_events()

        percepts, self.memory = sense(self.world, self.pose, self.internal.lucidity, self.memory,
                                      scenario.perception, scenario.motor.body_radius)

        report = self.net.step(percepts, self.internal, self.selection, self.tick_count)
        action, drive = report.action, report.drive
        self.selection = report.state

        target = action_target(action, drive, percepts)
        step = step_for_action(action, target.bearing if target else None, self.rng, scenario.motor)
        self.pose, moved, collided = apply_step(self.pose, step, self.internal.strength,
                                                scenario.motor, self.world)

        consumed = consummation_target(action, drive)
        if consumed is not None:
            self.internal = apply_consummation(self.internal, action, scenario.physiology)
            self.world, _ = deplete_stimulus(self.world, consumed,
                                             scenario.physiology.consummation_rate(action),
                                             scenario.depletion_floor)

        broken = world_violations(self.world)
        if broken:
            raise RuntimeError(f"World invariants broken at tick {self.tick_count}: {'; '.join(broken)}")

        self.internal = tick_needs(self.internal, moved, scenario.physiology)

        values = {kind: 0.0 for kind in PerceptKind}
        for percept in percepts:
            values[percept.kind] = percept.value
        event = TraceEvent(
            tick=self.tick_count,
            pose=self.pose,
            action=action,
            drive=drive.kind if drive else None,
            drive_activation=drive.activation if drive else None,
            internal=self.internal,
            percepts=values,
            collision=collided,
        )
        self.events.append(event)

        if is_dead(self.internal):
            self.termination = Termination.DEATH
            logger.info(f"Animat died at tick {self.tick_count}")
        self.tick_count += 1
        if not self.terminated and self.tick_count >= scenario.max_ticks:
            self.termination = Termination.MAX_TICKS
        return event

    def result(self) -> RunResult:
        return RunResult(
            events=list(self.events),
            termination=self.termination or Termination.MAX_TICKS,
            final_state=self.internal,
            final_pose=self.pose,
            final_world=self.world,
            scenario_name=self.scenario.name,
            seed=self.scenario.seed,
        )


def run(scenario: Scenario) -> RunResult:
    """Run a scenario until death or max_ticks"""
    simulation = Simulation(scenario)
    logger.info(f"Running {scenario.name} (seed {scenario.seed}, max {scenario.max_ticks} ticks)")
    while not simulation.terminated:
        simulation.tick()
    result = simulation.result()
    logger.info(f"{scenario.name} ended by {result.termination.value} after {len(result.events)} ticks")
    return result


def action_pattern(result: RunResult) -> List[PatternSegment]:
    """Run-length encoding of the selected actions"""
    segments: List[PatternSegment] = []
    for event in result.events:
        if segments and segments[-1].action == event.action:
            segments[-1] = segments[-1]._replace(end_tick=event.tick)
        else:
            segments.append(PatternSegment(event.action, event.tick, event.tick))
    return segments


def first_tick_of(result: RunResult, action: ExternalAction) -> Optional[int]:
    for event in result.events:
        if event.action == action:
            return event.tick
    return None


def first_drive_winner(result: RunResult) -> Optional[DriveKind]:
    for event in result.events:
        if event.drive is not None:
            return event.drive
    return None


def count_switches(pattern: List[PatternSegment], start: Optional[int] = None,
                   end: Optional[int] = None) -> int:
    """Action switches whose new segment starts inside (start, end]"""
    lo = pattern[0].start_tick if start is None and pattern else start
    hi = pattern[-1].end_tick if end is None and pattern else end
    return sum(1 for segment in pattern[1:] if lo < segment.start_tick <= hi)
