"""
Configuration file for the IBeNet animat simulator
Contains perception, physiology, motor, action-selection and output defaults
"""

from typing import Dict, Any

# Perceptual system defaults (radius scales with lucidity)
PERCEPTION_CONFIG = {
    'base_radius': 8.0,            # r_p at lucidity 1, meters
    'd_min': 0.5,                  # distance clamp for magnitude/distance ratios
    'memory_decay': 0.9,           # per-tick reverberation factor
    'forget_eps': 0.01,            # remembered values below this are forgotten
    'pairing_distance': 2.0,       # food and water closer than this form one source
    'at_range_margin': 0.3,
    'collision_lookahead': 0.5,    # obstacle "at range" distance beyond the body
}

# Internal medium defaults, all rates per tick
PHYSIOLOGY_CONFIG = {
    'thirst_rate': 0.001,
    'hunger_rate': 0.001,
    'fatigue_gain': 0.002,         # per meter moved
    'drink_rate': 0.02,
    'eat_rate': 0.02,
    'rest_rate': 0.01,
    'critical_threshold': 0.9,
    'satiation_threshold': 0.1,
    'drain_rate': 0.005,
    'restore_rate': 0.001,
}

# Motor system defaults
MOTOR_CONFIG = {
    'body_radius': 0.5,
    'gain': 0.5,                   # meters per radian of mean step
    'explore_step': 0.5,
    'steering_gain': 1.0,
    'avoid_turn': 0.5,
}

# Action selection defaults
IBENET_CONFIG = {
    'persistence_bonus': 0.1,
    'consummatory_bonus': 1.0,
    'risk_tolerance': 1.0,
    'calm_ticks': 10,
    'explore_threshold': 0.5,
    'search_gain': 0.25,
    'explore_enabled': True,
}

# Simulation loop defaults
SIMULATION_CONFIG = {
    'seed': 0,
    'max_ticks': 1000,
    'depletion_floor': 0.01,
    'stimulus_body_radius': 0.3,
}

# Output file defaults
OUTPUT_CONFIG = {
    'trace_format': 'ibenet-trace',
    'trace_version': 1,
    'scenario_dir': 'data/scenarios',
    'timeline_width': 12.0,
    'timeline_height': 6.0,
}

LOGGING_CONFIG = {
    'level': 'INFO',
    'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
}

# Bundled scenario fixtures by short name
BUNDLED_SCENARIOS = ['exp_4_1', 'exp_4_2', 'exp_4_3', 'deprivation', 'search']


def get_perception_config() -> Dict[str, Any]:
    """Get a copy of the perception defaults"""
    return PERCEPTION_CONFIG.copy()


def get_physiology_config() -> Dict[str, Any]:
    """Get a copy of the physiology defaults"""
    return PHYSIOLOGY_CONFIG.copy()


def get_motor_config() -> Dict[str, Any]:
    """Get a copy of the motor defaults"""
    return MOTOR_CONFIG.copy()


def get_ibenet_config() -> Dict[str, Any]:
    """Get a copy of the action selection defaults"""
    return IBENET_CONFIG.copy()


def get_simulation_config() -> Dict[str, Any]:
    """Get a copy of the simulation loop defaults"""
    return SIMULATION_CONFIG.copy()


def get_output_config() -> Dict[str, Any]:
    """Get a copy of the output defaults"""
    return OUTPUT_CONFIG.copy()


def get_scenario_path(name: str) -> str:
    """Get the path of a bundled scenario fixture by short name"""
    import os
    base = os.path.join(os.path.dirname(os.path.abspath(__file__)), OUTPUT_CONFIG['scenario_dir'])
    return os.path.join(base, f"{name}.yaml")
