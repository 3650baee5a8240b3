"""
Blackboard Module
Leveled shared data structure, solution elements, elemental behaviours,
activity state registers (REACs) and their competition
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)


class BlackboardLevelError(ValueError):
    """Raised when a node is handed a level that belongs to the other node"""


class LevelId(Enum):
    # cognitive node
    EXTERNAL_PERCEPTIONS = 'ExternalPerceptions'
    PERCEPTUAL_PERSISTENTS = 'PerceptualPersistents'
    CONSUMMATORY_PREFERENTS = 'ConsummatoryPreferents'
    DRIVE_PERCEPTION_CONGRUENTS = 'DrivePerceptionCongruents'
    POTENTIAL_ACTIONS = 'PotentialActions'
    ACTIONS = 'Actions'
    # motivational node
    MOT_INTERNAL_PERCEPTIONS = 'MotInternalPerceptions'
    MOT_EXTERNAL_PERCEPTIONS = 'MotExternalPerceptions'
    PROPIO_EXTERO_DRIVE_CONGRUENTS = 'PropioExteroDriveCongruents'
    DRIVE = 'Drive'


COGNITIVE_LEVELS = (
    LevelId.EXTERNAL_PERCEPTIONS,
    LevelId.PERCEPTUAL_PERSISTENTS,
    LevelId.CONSUMMATORY_PREFERENTS,
    LevelId.DRIVE_PERCEPTION_CONGRUENTS,
    LevelId.POTENTIAL_ACTIONS,
    LevelId.ACTIONS,
)

MOTIVATIONAL_LEVELS = (
    LevelId.MOT_INTERNAL_PERCEPTIONS,
    LevelId.MOT_EXTERNAL_PERCEPTIONS,
    LevelId.PROPIO_EXTERO_DRIVE_CONGRUENTS,
    LevelId.DRIVE,
)


def tag_ordinal(tag: Any) -> Tuple:
    """Sort key for element tags: enum members by declaration order, tuples element-wise"""
    if tag is None:
        return (-1,)
    if isinstance(tag, Enum):
        return (list(type(tag)).index(tag),)
    if isinstance(tag, tuple):
        return tuple(tag_ordinal(part) for part in tag)
    return (tag,)


@dataclass(frozen=True)
class SolutionElement:
    level: LevelId
    tag: Any
    certainty: float
    tick_created: int = 0
    payload: Any = None


@dataclass(frozen=True)
class ActionDescriptor:
    """What a REAC writes when it wins: target level, tag and certainty"""
    level: LevelId
    tag: Any
    certainty: float
    payload: Any = None


@dataclass(frozen=True)
class REAC:
    behaviour_id: int
    action: ActionDescriptor
    activation: float
    kind: str = ''


@dataclass
class LReac:
    kind: str
    registers: List[REAC] = field(default_factory=list)


@dataclass(frozen=True)
class CompetitionMode:
    winner_takes_all: bool = True
    threshold: float = 0.0

    @classmethod
    def wta(cls) -> 'CompetitionMode':
        return cls(True, 0.0)

    @classmethod
    def multi_winner(cls, threshold: float) -> 'CompetitionMode':
        if not 0.0 <= threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {threshold}")
        return cls(False, threshold)


WinnerTakesAll = CompetitionMode.wta()


@dataclass(frozen=True)
class ElementalBehaviour:
    """
    A condition-action rule

    fire(board, context) returns the (descriptor, activation) pairs the rule
    proposes; an empty result means the condition was not satisfied.
    """
    behaviour_id: int
    name: str
    kind: str
    fire: Callable[['Blackboard', Any], Iterable[Tuple[ActionDescriptor, float]]]


class Blackboard:
    """One blackboard node: a fixed set of levels holding solution elements"""

    def __init__(self, name: str, levels: Sequence[LevelId],
                 ttl: Optional[Dict[LevelId, Optional[int]]] = None):
        """
        Initialize a blackboard node

        Args:
            name: Node name used in logs
            levels: Levels this node accepts
            ttl: Ticks an element survives without being re-posted; None keeps it
        """
        self.name = name
        self.levels = tuple(levels)
        self.ttl = {level: 1 for level in self.levels}
        self.ttl.update(ttl or {})
        self._elements: Dict[Tuple[LevelId, Any], SolutionElement] = {}

    def _check_level(self, level: LevelId):
        if level not in self.levels:
            raise BlackboardLevelError(f"Level {level.value} does not belong to node {self.name}")

    def post(self, element: SolutionElement) -> 'Blackboard':
        """Insert an element or overwrite the certainty of the existing one"""
        self._check_level(element.level)
        if not 0.0 <= element.certainty <= 1.0:
            raise ValueError(f"certainty must be in [0, 1], got {element.certainty}")
        self._elements[(element.level, element.tag)] = element
        return self

    def read_level(self, level: LevelId) -> List[SolutionElement]:
        self._check_level(level)
        found = [e for (lvl, _), e in self._elements.items() if lvl == level]
        return sorted(found, key=lambda e: tag_ordinal(e.tag))

    def get(self, level: LevelId, tag: Any) -> Optional[SolutionElement]:
        self._check_level(level)
        return self._elements.get((level, tag))

    def expire(self, tick: int) -> 'Blackboard':
        """Remove elements not re-posted within their level's TTL"""
        stale = [key for key, e in self._elements.items()
                 if self.ttl.get(key[0]) is not None and tick - e.tick_created >= self.ttl[key[0]]]
        for key in stale:
            del self._elements[key]
        return self

    def __len__(self) -> int:
        return len(self._elements)

    def __repr__(self) -> str:
        return f"<Blackboard {self.name} elements={len(self._elements)}>"


def compete(lreac: LReac, mode: CompetitionMode) -> List[REAC]:
    """Winner-take-all (ties to the lowest behaviour id) or threshold multi-winner"""
    if not lreac.registers:
        return []
    if mode.winner_takes_all:
        winner = min(lreac.registers, key=lambda r: (-r.activation, r.behaviour_id))
        return [winner]
    return [r for r in lreac.registers if r.activation >= mode.threshold]


def run_node(board: Blackboard, behaviours: Sequence[ElementalBehaviour], context: Any,
             modes: Dict[str, CompetitionMode], tick: int = 0) -> Blackboard:
    """
    One pass of a node's elemental behaviours

    Behaviours are taken in declaration order, grouped by kind in order of the
    kind's first appearance. Every behaviour of a kind is evaluated, the
    resulting L-REAC competes, and the winners are posted before the next kind
    is evaluated, so later kinds read what earlier kinds wrote this tick.
    """
    kinds: List[str] = []
    for behaviour in behaviours:
        if behaviour.kind not in kinds:
            kinds.append(behaviour.kind)

    for kind in kinds:
        lreac = LReac(kind)
        for behaviour in behaviours:
            if behaviour.kind != kind:
                continue
            for descriptor, activation in behaviour.fire(board, context):
                lreac.registers.append(REAC(behaviour.behaviour_id, descriptor,
                                            min(1.0, max(0.0, activation)), kind))
        for winner in compete(lreac, modes.get(kind, WinnerTakesAll)):
            action = winner.action
            board.post(SolutionElement(action.level, action.tag, action.certainty, tick, action.payload))
    return board
