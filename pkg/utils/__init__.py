"""
IBeNet Animat Simulator Utilities Package
Contains the world, perception, physiology, blackboard, action selection,
motor and simulation modules
"""

from .ibenet import IBeNet, asm_tick
from .simulator import Scenario, Simulation, run

__version__ = "1.0.0"

__all__ = [
    'IBeNet',
    'asm_tick',
    'Scenario',
    'Simulation',
    'run',
]
