"""
IBeNet Module
The action selection mechanism: a cognitive and a motivational blackboard node
cooperating to emit exactly one external action per tick
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .behaviours import (CONSUMMATORY_ACTIONS, DRIVE_ACTIONS, DriveKind,
                         ExternalAction)
from .blackboard import (COGNITIVE_LEVELS, MOTIVATIONAL_LEVELS, ActionDescriptor,
                         Blackboard, CompetitionMode, ElementalBehaviour, LReac,
                         LevelId, REAC, SolutionElement, WinnerTakesAll, compete,
                         run_node)
from .perception import Percept, PerceptKind
from .physiology import InternalState

logger = logging.getLogger(__name__)

SAFETY_PREEMPT_ACTIVATION = 3.0
# power of two so normalizing REAC activations is exact and order preserving
ACTIVATION_CEILING = 4.0

DRIVE_PERCEPT = {
    DriveKind.THIRST: PerceptKind.WATER,
    DriveKind.HUNGER: PerceptKind.FOOD,
    DriveKind.THIRST_AND_HUNGER: PerceptKind.FOOD_AND_WATER,
    DriveKind.FATIGUE: PerceptKind.GRASS,
    DriveKind.SAFETY: PerceptKind.BLOB,
}

SEARCH_DRIVES = (DriveKind.THIRST, DriveKind.HUNGER)

# Priorities in the external behaviour selector
REFLEX_PRIORITY = 1.0
RUNAWAY_PRIORITY = 0.75
DRIVE_PRIORITY = 0.5
DEFAULT_PRIORITY = 0.25

REFLEX_ACTIONS = frozenset({ExternalAction.AVOID_OBSTACLE, ExternalAction.RUNAWAY})


@dataclass(frozen=True)
class IBeNetParams:
    persistence_bonus: float = 0.1
    consummatory_bonus: float = 1.0
    risk_tolerance: float = 1.0
    calm_ticks: int = 10
    explore_threshold: float = 0.5
    search_gain: float = 0.25
    explore_enabled: bool = True
    satiation_threshold: float = 0.1
    d_min: float = 0.5

    @classmethod
    def from_dict(cls, values: Dict) -> 'IBeNetParams':
        return cls(**values)

    def violations(self, prefix: str = 'ibenet') -> List[str]:
        problems = []
        if not 0.0 <= self.persistence_bonus < 1.0:
            problems.append(f"{prefix}.persistence_bonus: must be in [0, 1)")
        if not 0.0 <= self.consummatory_bonus <= 1.0:
            problems.append(f"{prefix}.consummatory_bonus: must be in [0, 1]")
        if not self.risk_tolerance > 0:
            problems.append(f"{prefix}.risk_tolerance: must be > 0")
        if self.calm_ticks < 1:
            problems.append(f"{prefix}.calm_ticks: must be >= 1")
        if not 0.0 <= self.explore_threshold <= 1.0:
            problems.append(f"{prefix}.explore_threshold: must be in [0, 1]")
        if not 0.0 <= self.search_gain <= 1.0:
            problems.append(f"{prefix}.search_gain: must be in [0, 1]")
        return problems


@dataclass(frozen=True)
class Congruent:
    drive: DriveKind
    percept: Optional[PerceptKind]
    strength: float
    at_range: bool = False
    target_id: Optional[int] = None
    partner_id: Optional[int] = None
    risk: float = 0.0
    remembered: bool = False

    @property
    def is_search(self) -> bool:
        return self.percept is None


@dataclass(frozen=True)
class DriveSignal:
    kind: DriveKind
    intensity: float
    activation: float = 0.0
    percept: Optional[PerceptKind] = None
    target_id: Optional[int] = None
    partner_id: Optional[int] = None
    at_range: bool = False


@dataclass(frozen=True)
class SelectionState:
    current_drive: Optional[DriveSignal] = None
    current_action: ExternalAction = ExternalAction.WANDER
    persistence_bonus: float = 0.1
    interrupted_drive: Optional[DriveKind] = None
    safety_latched: bool = False
    calm_ticks: int = 0

    @property
    def incumbent(self) -> Optional[DriveKind]:
        """Drive that receives the persistence bonus"""
        if self.current_drive is None or self.current_drive.kind == DriveKind.SAFETY:
            return self.interrupted_drive
        return self.current_drive.kind


@dataclass(frozen=True)
class AttentionBinding:
    drive: DriveSignal
    percept: Optional[Percept]


@dataclass
class TickReport:
    """Read-only view of every intermediate of one selection tick"""
    action: ExternalAction
    drive: Optional[DriveSignal]
    state: SelectionState
    congruents: List[Congruent] = field(default_factory=list)
    activations: List[Tuple[DriveKind, float]] = field(default_factory=list)
    potential_actions: List[Tuple[ExternalAction, float]] = field(default_factory=list)
    inhibited: List[ExternalAction] = field(default_factory=list)
    cognitive: Optional[Blackboard] = None
    motivational: Optional[Blackboard] = None


def proprioceive(state: InternalState, tick: int = 0) -> List[SolutionElement]:
    """Needs as internal perceptions; safety exposure is 1 - security"""
    values = {
        DriveKind.THIRST: state.thirst,
        DriveKind.HUNGER: state.hunger,
        DriveKind.FATIGUE: state.fatigue,
        DriveKind.SAFETY: 1.0 - state.security,
    }
    return [SolutionElement(LevelId.MOT_INTERNAL_PERCEPTIONS, kind, values[kind], tick)
            for kind in sorted(values, key=lambda k: k.ordinal)]


def _first_by_kind(percepts: Iterable[Percept]) -> Dict[PerceptKind, Percept]:
    found: Dict[PerceptKind, Percept] = {}
    for percept in percepts:
        found.setdefault(percept.kind, percept)
    return found


def congruence(internal_elements: Sequence[SolutionElement], percepts: Sequence[Percept],
               satiation_threshold: float = 0.0, explore_threshold: Optional[float] = None,
               search_gain: float = 0.0, d_min: float = 0.5) -> List[Congruent]:
    """
    Combine internal and external signals into drive/percept congruents

    Strength is need times pondered value; a missing or zero factor yields no
    congruent. Needs at or below the satiation threshold do not pursue their
    stimulus. With explore_threshold set, a thirst or hunger at or above it
    with no matching percept yields a search congruent backing Explore.
    """
    needs = {e.tag: e.certainty for e in internal_elements}
    thirst = needs.get(DriveKind.THIRST, 0.0)
    hunger = needs.get(DriveKind.HUNGER, 0.0)
    exposure = needs.get(DriveKind.SAFETY, 0.0)
    by_kind = _first_by_kind(percepts)

    def hungry(need: float) -> bool:
        return need > 0.0 and need > satiation_threshold

    pairs = [
        (DriveKind.THIRST, thirst, hungry(thirst)),
        (DriveKind.HUNGER, hunger, hungry(hunger)),
        (DriveKind.THIRST_AND_HUNGER, min(thirst, hunger), hungry(thirst) and hungry(hunger)),
        (DriveKind.FATIGUE, needs.get(DriveKind.FATIGUE, 0.0), hungry(needs.get(DriveKind.FATIGUE, 0.0))),
        (DriveKind.SAFETY, exposure, exposure > 0.0),
    ]

    congruents = []
    for drive, need, active in pairs:
        if not active:
            continue
        percept = by_kind.get(DRIVE_PERCEPT[drive])
        if percept is not None and percept.value > 0.0:
            risk = 0.0
            if drive == DriveKind.SAFETY and not percept.remembered:
                risk = percept.nearest_magnitude / max(percept.nearest_distance, d_min)
            congruents.append(Congruent(drive, percept.kind, need * percept.value, percept.at_range,
                                        percept.target_id, percept.partner_id, risk, percept.remembered))
        elif (drive in SEARCH_DRIVES and explore_threshold is not None
              and need >= explore_threshold and search_gain > 0.0):
            congruents.append(Congruent(drive, None, need * search_gain))
    return congruents


def effective_activations(congruents: Sequence[Congruent], selection_state: SelectionState,
                          params: IBeNetParams, security: float) -> List[Tuple[Congruent, float]]:
    """
    Activation each congruent enters the competition with

    The incumbent drive gets the persistence bonus, or the consummatory bonus
    while it is consuming its target. Safety only competes when blob risk
    exceeds risk_tolerance * security (or while a flight is latched) and then
    preempts everything.
    """
    incumbent = selection_state.incumbent
    consuming = selection_state.current_action in CONSUMMATORY_ACTIONS
    threshold = params.risk_tolerance * security
    scored = []
    has_safety = False
    for congruent in congruents:
        if congruent.drive == DriveKind.SAFETY:
            fires = not congruent.remembered and congruent.risk > threshold
            if fires or selection_state.safety_latched:
                scored.append((congruent, SAFETY_PREEMPT_ACTIVATION))
                has_safety = True
            continue
        activation = congruent.strength
        if congruent.drive == incumbent:
            if consuming and congruent.at_range:
                activation += params.consummatory_bonus
            else:
                activation += selection_state.persistence_bonus
        scored.append((congruent, activation))
    if selection_state.safety_latched and not has_safety:
        scored.append((Congruent(DriveKind.SAFETY, None, 0.0), SAFETY_PREEMPT_ACTIVATION))
    return scored


def _preference_reac(congruent: Congruent, activation: float) -> REAC:
    descriptor = ActionDescriptor(LevelId.DRIVE, congruent.drive, min(1.0, congruent.strength),
                                  (congruent, activation))
    return REAC(congruent.drive.ordinal, descriptor, activation / ACTIVATION_CEILING,
                'consummatory_preference')


def _drive_signal(congruent: Congruent, activation: float) -> DriveSignal:
    return DriveSignal(kind=congruent.drive, intensity=min(1.0, congruent.strength),
                       activation=activation, percept=congruent.percept,
                       target_id=congruent.target_id, partner_id=congruent.partner_id,
                       at_range=congruent.at_range)


def select_consummatory_preference(congruents: Sequence[Congruent], selection_state: SelectionState,
                                   params: Optional[IBeNetParams] = None,
                                   security: float = 1.0) -> Optional[DriveSignal]:
    """Winner-take-all among the motivational candidates"""
    params = params or IBeNetParams()
    scored = effective_activations(congruents, selection_state, params, security)
    lreac = LReac('consummatory_preference', [_preference_reac(c, a) for c, a in scored])
    winners = compete(lreac, WinnerTakesAll)
    if not winners:
        return None
    congruent, activation = winners[0].action.payload
    return _drive_signal(congruent, activation)


def attention_to_preferences(drive: DriveSignal, persistents: Sequence[Percept],
                             tick: int = 0) -> List[SolutionElement]:
    """Bind the drive to its matching percept, remembered ones included"""
    wanted = DRIVE_PERCEPT[drive.kind]
    candidates = [p for p in persistents if p.kind == wanted]
    if drive.target_id is not None:
        candidates.sort(key=lambda p: p.target_id != drive.target_id)
    if candidates:
        percept = candidates[0]
        return [SolutionElement(LevelId.DRIVE_PERCEPTION_CONGRUENTS, (drive.kind, percept.kind),
                                min(1.0, max(0.0, percept.value)), tick,
                                AttentionBinding(drive, percept))]
    return [SolutionElement(LevelId.DRIVE_PERCEPTION_CONGRUENTS, (drive.kind, None),
                            drive.intensity, tick, AttentionBinding(drive, None))]


def reflex_response_inhibition(proposed: ExternalAction, inhibition_signals: Iterable = ()) -> bool:
    """
    Hook where learned inhibition of reflexes would act

    Returns True to allow the reflex. Without conditioning no signals exist in
    a simulation, so every reflex is allowed; a signal naming the action (or
    '*') suppresses it.
    """
    for signal in inhibition_signals:
        if signal == proposed or signal == '*':
            return False
    return True


def _consummation_for(drive: DriveKind, selection_state: SelectionState,
                      internal_state: Optional[InternalState]) -> ExternalAction:
    if drive != DriveKind.THIRST_AND_HUNGER:
        return DRIVE_ACTIONS[drive][1]
    if selection_state.current_action in (ExternalAction.DRINK, ExternalAction.EAT):
        return selection_state.current_action
    if internal_state is None or internal_state.thirst >= internal_state.hunger:
        return ExternalAction.DRINK
    return ExternalAction.EAT


def potential_actions(bindings: Sequence[SolutionElement], obstacle: Optional[Percept],
                      selection_state: SelectionState, internal_state: Optional[InternalState] = None,
                      explore_enabled: bool = True) -> List[Tuple[ExternalAction, float]]:
    """Candidate actions with their selector priorities; Wander is always present"""
    candidates = [(ExternalAction.WANDER, DEFAULT_PRIORITY)]
    if obstacle is not None and obstacle.at_range:
        candidates.append((ExternalAction.AVOID_OBSTACLE, REFLEX_PRIORITY))
    for element in bindings:
        binding: AttentionBinding = element.payload
        kind = binding.drive.kind
        if kind == DriveKind.SAFETY:
            candidates.append((ExternalAction.RUNAWAY, RUNAWAY_PRIORITY))
        elif binding.percept is None:
            if kind in SEARCH_DRIVES and explore_enabled:
                candidates.append((ExternalAction.EXPLORE, DRIVE_PRIORITY))
        elif binding.percept.at_range and not binding.percept.remembered:
            candidates.append((_consummation_for(kind, selection_state, internal_state), DRIVE_PRIORITY))
        else:
            candidates.append((DRIVE_ACTIONS[kind][0], DRIVE_PRIORITY))
    return candidates


def external_behaviour_selector(bindings: Sequence[SolutionElement], obstacle: Optional[Percept],
                                selection_state: SelectionState,
                                internal_state: Optional[InternalState] = None,
                                explore_enabled: bool = True,
                                inhibition_signals: Iterable = ()) -> ExternalAction:
    """Priority resolution: reflex, runaway, drive-backed action, wander"""
    signals = list(inhibition_signals)
    candidates = [(a, p) for a, p in potential_actions(bindings, obstacle, selection_state,
                                                       internal_state, explore_enabled)
                  if a not in REFLEX_ACTIONS or reflex_response_inhibition(a, signals)]
    return max(candidates, key=lambda item: item[1])[0]


def action_target(action: ExternalAction, drive: Optional[DriveSignal],
                  percepts: Sequence[Percept]) -> Optional[Percept]:
    """Percept an action steers by, if any"""
    by_kind = _first_by_kind(percepts)
    if action == ExternalAction.AVOID_OBSTACLE:
        return by_kind.get(PerceptKind.OBSTACLE)
    if action == ExternalAction.RUNAWAY:
        return by_kind.get(PerceptKind.BLOB)
    if drive is None or action not in (ExternalAction.APPROACH_FOOD, ExternalAction.APPROACH_WATER,
                                       ExternalAction.APPROACH_FOOD_AND_WATER,
                                       ExternalAction.APPROACH_GRASS):
        return None
    return by_kind.get(DRIVE_PERCEPT[drive.kind])


def consummation_target(action: ExternalAction, drive: Optional[DriveSignal]) -> Optional[int]:
    """Stimulus id a consummatory action consumes"""
    if drive is None or action not in CONSUMMATORY_ACTIONS:
        return None
    if drive.kind == DriveKind.THIRST_AND_HUNGER and action == ExternalAction.DRINK:
        return drive.partner_id
    return drive.target_id


@dataclass
class _TickContext:
    percepts: List[Percept]
    internal: InternalState
    state: SelectionState
    params: IBeNetParams
    tick: int
    inhibitions: List
    drive: Optional[DriveSignal] = None
    transmitted: List[SolutionElement] = field(default_factory=list)
    scored: Optional[List[Tuple[Congruent, float]]] = None
    candidates: List[Tuple[ExternalAction, float]] = field(default_factory=list)
    inhibited: List[ExternalAction] = field(default_factory=list)


def _percept_elements(level: LevelId, percepts: Iterable[Percept], tick: int):
    for p in percepts:
        yield ActionDescriptor(level, p.kind, min(1.0, max(0.0, p.value)), p), 1.0


class IBeNet:
    """
    The two-node internal behaviour network

    Each tick the cognitive node registers percepts, transmits them to the
    motivational node, which combines them with the proprioceptive signals and
    lets the consummatory preference selectors compete; the winning drive is
    sent back to the cognitive node, which attends to the matching percept and
    selects the external behaviour.
    """

    MULTI = CompetitionMode.multi_winner(0.0)

    def __init__(self, params: Optional[IBeNetParams] = None):
        self.params = params or IBeNetParams()
        self.cognitive_perception = [
            ElementalBehaviour(0, 'exteroceptors', 'exteroception',
                               lambda b, c: _percept_elements(LevelId.EXTERNAL_PERCEPTIONS,
                                                              (p for p in c.percepts if not p.remembered), c.tick)),
            ElementalBehaviour(1, 'perceptual persistence', 'perceptual_persistence',
                               lambda b, c: _percept_elements(LevelId.PERCEPTUAL_PERSISTENTS, c.percepts, c.tick)),
        ]
        self.motivational = [
            ElementalBehaviour(0, 'proprioceptors', 'proprioception', self._fire_proprioception),
            ElementalBehaviour(1, 'external perception receptors', 'exteroception', self._fire_reception),
            ElementalBehaviour(2, 'propio/extero/drive congruence', 'congruence', self._fire_congruence),
        ] + [
            ElementalBehaviour(kind.ordinal, f'consummatory preference selector ({kind.value})',
                               'consummatory_preference', self._preference_selector(kind))
            for kind in DriveKind
        ]
        self.cognitive_action = [
            ElementalBehaviour(2, 'drive receptors', 'drive_reception', self._fire_drive_reception),
            ElementalBehaviour(3, 'attention to preferences', 'attention', self._fire_attention),
            ElementalBehaviour(4, 'reflex response inhibition', 'potential_actions', self._fire_potential_actions),
            ElementalBehaviour(5, 'external behaviour selector', 'external_behaviour', self._fire_selector),
        ]
        self.modes = {
            'exteroception': self.MULTI,
            'perceptual_persistence': self.MULTI,
            'proprioception': self.MULTI,
            'congruence': self.MULTI,
            'consummatory_preference': WinnerTakesAll,
            'drive_reception': WinnerTakesAll,
            'attention': self.MULTI,
            'potential_actions': self.MULTI,
            'external_behaviour': WinnerTakesAll,
        }

    # motivational node behaviours

    @staticmethod
    def _fire_proprioception(board: Blackboard, ctx: _TickContext):
        for element in proprioceive(ctx.internal, ctx.tick):
            yield ActionDescriptor(element.level, element.tag, element.certainty), 1.0

    @staticmethod
    def _fire_reception(board: Blackboard, ctx: _TickContext):
        for element in ctx.transmitted:
            yield ActionDescriptor(LevelId.MOT_EXTERNAL_PERCEPTIONS, element.tag,
                                   element.certainty, element.payload), 1.0

    def _fire_congruence(self, board: Blackboard, ctx: _TickContext):
        internal = board.read_level(LevelId.MOT_INTERNAL_PERCEPTIONS)
        external = [e.payload for e in board.read_level(LevelId.MOT_EXTERNAL_PERCEPTIONS)]
        for c in congruence(internal, external, self.params.satiation_threshold,
                            self.params.explore_threshold, self.params.search_gain, self.params.d_min):
            yield ActionDescriptor(LevelId.PROPIO_EXTERO_DRIVE_CONGRUENTS, (c.drive, c.percept),
                                   min(1.0, c.strength), c), c.strength

    def _scored(self, board: Blackboard, ctx: _TickContext) -> List[Tuple[Congruent, float]]:
        if ctx.scored is None:
            congruents = [e.payload for e in board.read_level(LevelId.PROPIO_EXTERO_DRIVE_CONGRUENTS)]
            ctx.scored = effective_activations(congruents, ctx.state, self.params, ctx.internal.security)
        return ctx.scored

    def _preference_selector(self, kind: DriveKind):
        def fire(board: Blackboard, ctx: _TickContext):
            for congruent, activation in self._scored(board, ctx):
                if congruent.drive == kind:
                    reac = _preference_reac(congruent, activation)
                    yield reac.action, reac.activation
        return fire

    # cognitive node behaviours

    @staticmethod
    def _fire_drive_reception(board: Blackboard, ctx: _TickContext):
        if ctx.drive is not None:
            yield ActionDescriptor(LevelId.CONSUMMATORY_PREFERENTS, ctx.drive.kind,
                                   ctx.drive.intensity, ctx.drive), 1.0

    @staticmethod
    def _fire_attention(board: Blackboard, ctx: _TickContext):
        preferents = board.read_level(LevelId.CONSUMMATORY_PREFERENTS)
        if not preferents:
            return
        persistents = [e.payload for e in board.read_level(LevelId.PERCEPTUAL_PERSISTENTS)
                       if e.tag != PerceptKind.OBSTACLE]
        for element in attention_to_preferences(preferents[0].payload, persistents, ctx.tick):
            yield ActionDescriptor(element.level, element.tag, element.certainty, element.payload), 1.0

    def _fire_potential_actions(self, board: Blackboard, ctx: _TickContext):
        bindings = board.read_level(LevelId.DRIVE_PERCEPTION_CONGRUENTS)
        obstacle = board.get(LevelId.EXTERNAL_PERCEPTIONS, PerceptKind.OBSTACLE)
        for action, priority in potential_actions(bindings, obstacle.payload if obstacle else None,
                                                  ctx.state, ctx.internal, self.params.explore_enabled):
            if action in REFLEX_ACTIONS and not reflex_response_inhibition(action, ctx.inhibitions):
                ctx.inhibited.append(action)
                continue
            ctx.candidates.append((action, priority))
            yield ActionDescriptor(LevelId.POTENTIAL_ACTIONS, action, priority), priority

    @staticmethod
    def _fire_selector(board: Blackboard, ctx: _TickContext):
        for element in board.read_level(LevelId.POTENTIAL_ACTIONS):
            yield ActionDescriptor(LevelId.ACTIONS, element.tag, element.certainty), element.certainty

    # pipeline

    def _update_latch(self, state: SelectionState, percepts: Sequence[Percept]) -> SelectionState:
        if not state.safety_latched:
            return state
        live_blob = any(p.kind == PerceptKind.BLOB and not p.remembered for p in percepts)
        calm = 0 if live_blob else state.calm_ticks + 1
        if calm >= self.params.calm_ticks:
            logger.debug("Flight over, interrupted drive re-enters competition")
            return replace(state, safety_latched=False, calm_ticks=0)
        return replace(state, calm_ticks=calm)

    def step(self, percepts: Sequence[Percept], internal_state: InternalState,
             selection_state: SelectionState, tick: int = 0,
             inhibition_signals: Iterable = ()) -> TickReport:
        """Run both nodes for one perception-action cycle"""
        state = self._update_latch(selection_state, percepts)
        ctx = _TickContext(list(percepts), internal_state, state, self.params, tick, list(inhibition_signals))

        cognitive = Blackboard('cognitive', COGNITIVE_LEVELS)
        motivational = Blackboard('motivational', MOTIVATIONAL_LEVELS)
        if state.current_drive is not None:
            previous = state.current_drive
            motivational.post(SolutionElement(LevelId.DRIVE, previous.kind, previous.intensity,
                                              tick - 1, previous))

        run_node(cognitive, self.cognitive_perception, ctx, self.modes, tick)
        ctx.transmitted = cognitive.read_level(LevelId.PERCEPTUAL_PERSISTENTS)

        run_node(motivational, self.motivational, ctx, self.modes, tick)
        # the incumbent drive survives only if the competition re-posted it this tick
        fresh = motivational.expire(tick).read_level(LevelId.DRIVE)
        if fresh:
            congruent, activation = fresh[0].payload
            ctx.drive = _drive_signal(congruent, activation)

        run_node(cognitive, self.cognitive_action, ctx, self.modes, tick)
        actions = cognitive.read_level(LevelId.ACTIONS)
        action = actions[0].tag if actions else ExternalAction.WANDER

        new_state = self._next_state(state, ctx.drive, action)
        if new_state.current_action != selection_state.current_action:
            logger.debug(f"tick {tick}: {selection_state.current_action.value} -> {action.value}")

        return TickReport(
            action=action,
            drive=ctx.drive,
            state=new_state,
            congruents=[e.payload for e in motivational.read_level(LevelId.PROPIO_EXTERO_DRIVE_CONGRUENTS)],
            activations=[(c.drive, a) for c, a in (ctx.scored or [])],
            potential_actions=list(ctx.candidates),
            inhibited=list(ctx.inhibited),
            cognitive=cognitive,
            motivational=motivational,
        )

    def _next_state(self, state: SelectionState, drive: Optional[DriveSignal],
                    action: ExternalAction) -> SelectionState:
        interrupted = state.interrupted_drive
        latched, calm = state.safety_latched, state.calm_ticks
        if drive is not None and drive.kind == DriveKind.SAFETY:
            previous = state.current_drive
            if previous is not None and previous.kind != DriveKind.SAFETY:
                interrupted = previous.kind
                logger.info(f"{previous.kind.value} interrupted by an aversive stimulus")
            if not latched:
                calm = 0
            latched = True
        elif drive is not None:
            interrupted = None
        return replace(state, current_drive=drive, current_action=action,
                       interrupted_drive=interrupted, safety_latched=latched, calm_ticks=calm)


def asm_tick(percepts: Sequence[Percept], internal_state: InternalState,
             selection_state: SelectionState, params: Optional[IBeNetParams] = None,
             tick: int = 0) -> Tuple[ExternalAction, Optional[DriveSignal], SelectionState]:
    """One full selection cycle as a pure state transition"""
    report = IBeNet(params).step(percepts, internal_state, selection_state, tick)
    return report.action, report.drive, report.state
