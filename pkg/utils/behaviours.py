"""
Behaviour Repertory Module
External actions, drive kinds and the table linking them to their inputs
"""

from enum import Enum
from typing import Dict, Tuple


class DriveKind(Enum):
    """Motivations that compete in the motivational node, in tie-break order"""
    THIRST = 'Thirst'
    HUNGER = 'Hunger'
    THIRST_AND_HUNGER = 'ThirstAndHunger'
    FATIGUE = 'Fatigue'
    SAFETY = 'Safety'

    @property
    def ordinal(self) -> int:
        return _DRIVE_ORDER[self]


class ExternalAction(Enum):
    """The eleven external behaviours the animat can execute"""
    AVOID_OBSTACLE = 'AvoidObstacle'
    WANDER = 'Wander'
    EXPLORE = 'Explore'
    APPROACH_FOOD = 'ApproachFood'
    EAT = 'Eat'
    APPROACH_WATER = 'ApproachWater'
    DRINK = 'Drink'
    APPROACH_FOOD_AND_WATER = 'ApproachFoodAndWater'
    APPROACH_GRASS = 'ApproachGrass'
    REST = 'Rest'
    RUNAWAY = 'Runaway'


_DRIVE_ORDER = {kind: i for i, kind in enumerate(DriveKind)}

CONSUMMATORY_ACTIONS = frozenset({ExternalAction.EAT, ExternalAction.DRINK, ExternalAction.REST})

APPROACH_ACTIONS = frozenset({
    ExternalAction.APPROACH_FOOD,
    ExternalAction.APPROACH_WATER,
    ExternalAction.APPROACH_FOOD_AND_WATER,
    ExternalAction.APPROACH_GRASS,
})

# Drive -> (appetitive action, consummatory action); the compound drive picks
# its consummatory action from the live needs
DRIVE_ACTIONS: Dict[DriveKind, Tuple[ExternalAction, ExternalAction]] = {
    DriveKind.THIRST: (ExternalAction.APPROACH_WATER, ExternalAction.DRINK),
    DriveKind.HUNGER: (ExternalAction.APPROACH_FOOD, ExternalAction.EAT),
    DriveKind.THIRST_AND_HUNGER: (ExternalAction.APPROACH_FOOD_AND_WATER, ExternalAction.DRINK),
    DriveKind.FATIGUE: (ExternalAction.APPROACH_GRASS, ExternalAction.REST),
}
