"""
Scenario Loader Module
Reads YAML scenario files into Scenario values, filling documented defaults,
and writes the effective configuration back out
"""

import logging
import math
import os
import sys
from typing import Any, Dict, List, Optional

import yaml

# Add parent directory to path for config import
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config import (get_ibenet_config, get_motor_config, get_perception_config,
                    get_physiology_config, get_simulation_config)

from .ibenet import IBeNetParams
from .motor import MotorParams
from .perception import PerceptionParams, Pose
from .physiology import INTERNAL_FIELDS, InternalState, PhysiologyParams
from .simulator import (EventKind, Scenario, ScenarioValidationError,
                        ScriptedEvent, validate_scenario)
from .world import Obstacle, Rect, Stimulus, StimulusKind, Vec2, World

logger = logging.getLogger(__name__)

TOP_LEVEL_KEYS = ('name', 'seed', 'max_ticks', 'depletion_floor', 'world', 'animat', 'internal',
                  'perception', 'physiology', 'motor', 'ibenet', 'events')
STIMULUS_KEYS = ('id', 'kind', 'position', 'magnitude', 'body_radius')
EVENT_KEYS = {
    EventKind.MOVE_STIMULUS: ('tick', 'kind', 'id', 'position'),
    EventKind.ADD_STIMULUS: ('tick', 'kind', 'stimulus'),
    EventKind.REMOVE_STIMULUS: ('tick', 'kind', 'id'),
    EventKind.SET_INTERNAL: ('tick', 'kind', 'field', 'value'),
}


class ScenarioFormatError(ValueError):
    """The file is not UTF-8 YAML holding a mapping"""


class _Collector:
    """Accumulates violations while a document is being converted"""

    def __init__(self):
        self.violations: List[str] = []

    def add(self, message: str):
        self.violations.append(message)

    def mapping(self, value: Any, path: str, allowed) -> Dict:
        if value is None:
            return {}
        if not isinstance(value, dict):
            self.add(f"{path}: must be a mapping")
            return {}
        for key in value:
            if key not in allowed:
                self.add(f"{path}.{key}: unknown key" if path else f"{key}: unknown key")
        return {k: v for k, v in value.items() if k in allowed}

    def number(self, value: Any, path: str, integer: bool = False) -> Optional[float]:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            self.add(f"{path}: must be {'an integer' if integer else 'a number'}")
            return None
        if integer and not isinstance(value, int):
            self.add(f"{path}: must be an integer")
            return None
        if isinstance(value, float) and not math.isfinite(value):
            self.add(f"{path}: must be finite")
            return None
        return value if integer else float(value)

    def vec(self, value: Any, path: str) -> Optional[Vec2]:
        if not isinstance(value, (list, tuple)) or len(value) != 2:
            self.add(f"{path}: must be a [z, x] pair")
            return None
        z = self.number(value[0], f"{path}[0]")
        x = self.number(value[1], f"{path}[1]")
        return Vec2(z, x) if z is not None and x is not None else None

    def section(self, value: Any, path: str, defaults: Dict) -> Optional[Dict]:
        given = self.mapping(value, path, defaults)
        merged = dict(defaults)
        ok = True
        for key, raw in given.items():
            if isinstance(defaults[key], bool):
                if not isinstance(raw, bool):
                    self.add(f"{path}.{key}: must be true or false")
                    ok = False
                    continue
                merged[key] = raw
                continue
            parsed = self.number(raw, f"{path}.{key}", integer=isinstance(defaults[key], int))
            if parsed is None:
                ok = False
            else:
                merged[key] = parsed
        return merged if ok else None


def _ibenet_defaults() -> Dict:
    defaults = get_ibenet_config()
    defaults['satiation_threshold'] = get_physiology_config()['satiation_threshold']
    defaults['d_min'] = get_perception_config()['d_min']
    return defaults


def _stimulus(doc: Any, path: str, c: _Collector, body_radius: float) -> Optional[Stimulus]:
    doc = c.mapping(doc, path, STIMULUS_KEYS)
    for key in ('id', 'kind', 'position', 'magnitude'):
        if key not in doc:
            c.add(f"{path}.{key}: required")
    try:
        kind = StimulusKind(doc.get('kind'))
    except ValueError:
        if 'kind' in doc:
            c.add(f"{path}.kind: unknown stimulus kind {doc.get('kind')!r}")
        kind = None
    stimulus_id = c.number(doc['id'], f"{path}.id", integer=True) if 'id' in doc else None
    position = c.vec(doc['position'], f"{path}.position") if 'position' in doc else None
    magnitude = c.number(doc['magnitude'], f"{path}.magnitude") if 'magnitude' in doc else None
    radius = c.number(doc.get('body_radius', body_radius), f"{path}.body_radius")
    if None in (kind, stimulus_id, position, magnitude, radius):
        return None
    return Stimulus(stimulus_id, kind, position, magnitude, radius)


def _rect(doc: Any, path: str, c: _Collector, cls=Rect) -> Optional[Rect]:
    doc = c.mapping(doc, path, ('min', 'max'))
    if 'min' not in doc or 'max' not in doc:
        c.add(f"{path}: needs min and max corners")
        return None
    lo, hi = c.vec(doc['min'], f"{path}.min"), c.vec(doc['max'], f"{path}.max")
    return cls(lo, hi) if lo is not None and hi is not None else None


def _event(doc: Any, path: str, c: _Collector, body_radius: float) -> Optional[ScriptedEvent]:
    if not isinstance(doc, dict):
        c.add(f"{path}: must be a mapping")
        return None
    try:
        kind = EventKind(doc.get('kind'))
    except ValueError:
        c.add(f"{path}.kind: must be one of {', '.join(k.value for k in EventKind)}")
        return None
    doc = c.mapping(doc, path, EVENT_KEYS[kind])
    missing = [key for key in EVENT_KEYS[kind] if key not in doc]
    for key in missing:
        c.add(f"{path}.{key}: required")
    if missing:
        return None
    tick = c.number(doc['tick'], f"{path}.tick", integer=True)
    if tick is None:
        return None
    if kind == EventKind.MOVE_STIMULUS:
        stimulus_id = c.number(doc['id'], f"{path}.id", integer=True)
        position = c.vec(doc['position'], f"{path}.position")
        if stimulus_id is None or position is None:
            return None
        return ScriptedEvent(tick, kind, stimulus_id=stimulus_id, position=position)
    if kind == EventKind.REMOVE_STIMULUS:
        stimulus_id = c.number(doc['id'], f"{path}.id", integer=True)
        return ScriptedEvent(tick, kind, stimulus_id=stimulus_id) if stimulus_id is not None else None
    if kind == EventKind.ADD_STIMULUS:
        stimulus = _stimulus(doc['stimulus'], f"{path}.stimulus", c, body_radius)
        if stimulus is None:
            return None
        return ScriptedEvent(tick, kind, stimulus_id=stimulus.id, stimulus=stimulus)
    value = c.number(doc['value'], f"{path}.value")
    return ScriptedEvent(tick, kind, field=doc['field'], value=value) if value is not None else None


def scenario_from_dict(doc: Any) -> Scenario:
    """
    Build a Scenario from a parsed document

    Missing sections and keys fall back to the config defaults.

    Raises:
        ScenarioValidationError: listing every unknown key, type error and
            out-of-range value
    """
    c = _Collector()
    if not isinstance(doc, dict):
        raise ScenarioFormatError("Scenario document must be a mapping")
    doc = c.mapping(doc, '', TOP_LEVEL_KEYS)
    sim_defaults = get_simulation_config()

    name = str(doc.get('name', 'scenario'))
    seed = c.number(doc.get('seed', sim_defaults['seed']), 'seed', integer=True)
    max_ticks = c.number(doc.get('max_ticks', sim_defaults['max_ticks']), 'max_ticks', integer=True)
    floor = c.number(doc.get('depletion_floor', sim_defaults['depletion_floor']), 'depletion_floor')
    body_radius = sim_defaults['stimulus_body_radius']

    world_doc = c.mapping(doc.get('world'), 'world', ('bounds', 'stimuli', 'obstacles'))
    bounds = _rect(world_doc.get('bounds'), 'world.bounds', c) if 'bounds' in world_doc else None
    if 'bounds' not in world_doc:
        c.add("world.bounds: required")
    stimuli = [_stimulus(s, f"world.stimuli[{i}]", c, body_radius)
               for i, s in enumerate(world_doc.get('stimuli') or [])]
    obstacles = [_rect(o, f"world.obstacles[{i}]", c, Obstacle)
                 for i, o in enumerate(world_doc.get('obstacles') or [])]

    animat = c.mapping(doc.get('animat'), 'animat', ('position', 'theta'))
    position = c.vec(animat['position'], 'animat.position') if 'position' in animat else None
    if 'position' not in animat:
        c.add("animat.position: required")
    theta = c.number(animat.get('theta', 0.0), 'animat.theta')

    internal = c.section(doc.get('internal'), 'internal', InternalState().as_dict())
    perception = c.section(doc.get('perception'), 'perception', get_perception_config())
    physiology = c.section(doc.get('physiology'), 'physiology', get_physiology_config())
    motor = c.section(doc.get('motor'), 'motor', get_motor_config())
    ibenet = c.section(doc.get('ibenet'), 'ibenet', _ibenet_defaults())
    ibenet_given = doc.get('ibenet') if isinstance(doc.get('ibenet'), dict) else {}
    if ibenet is not None and physiology is not None and 'satiation_threshold' not in ibenet_given:
        ibenet['satiation_threshold'] = physiology['satiation_threshold']
    if ibenet is not None and perception is not None and 'd_min' not in ibenet_given:
        ibenet['d_min'] = perception['d_min']

    events_doc = doc.get('events') or []
    if not isinstance(events_doc, list):
        c.add("events: must be a list")
        events_doc = []
    events = [_event(e, f"events[{i}]", c, body_radius) for i, e in enumerate(events_doc)]

    if c.violations:
        raise ScenarioValidationError(c.violations)

    scenario = Scenario(
        world=World(bounds, tuple(stimuli), tuple(obstacles)),
        pose=Pose(position, theta),
        internal=InternalState(**internal),
        perception=PerceptionParams.from_dict(perception),
        physiology=PhysiologyParams.from_dict(physiology),
        motor=MotorParams.from_dict(motor),
        ibenet=IBeNetParams.from_dict(ibenet),
        seed=seed,
        max_ticks=max_ticks,
        events=tuple(events),
        name=name,
        depletion_floor=floor,
    )
    violations = validate_scenario(scenario)
    if violations:
        raise ScenarioValidationError(violations)
    return scenario


def load_scenario(path: str) -> Scenario:
    """
    Load and validate a scenario file

    Raises:
        FileNotFoundError: the path does not exist
        ScenarioFormatError: the file is not UTF-8, not valid YAML or not a mapping
        ScenarioValidationError: the content violates the schema
    """
    try:
        with open(path, 'r', encoding='utf-8') as handle:
            text = handle.read()
    except UnicodeDecodeError as e:
        raise ScenarioFormatError(f"{path} is not UTF-8 text: {e.reason} at byte {e.start}") from e
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ScenarioFormatError(f"Malformed YAML in {path}: {e}") from e
    scenario = scenario_from_dict(doc)
    logger.info(f"Loaded scenario {scenario.name} from {path}")
    return scenario


def _pair(v: Vec2) -> List[float]:
    return [v.z, v.x]


def _stimulus_dict(s: Stimulus) -> Dict:
    return {'id': s.id, 'kind': s.kind.value, 'position': _pair(s.position),
            'magnitude': s.magnitude, 'body_radius': s.body_radius}


def _event_dict(e: ScriptedEvent) -> Dict:
    if e.kind == EventKind.MOVE_STIMULUS:
        return {'tick': e.tick, 'kind': e.kind.value, 'id': e.stimulus_id, 'position': _pair(e.position)}
    if e.kind == EventKind.REMOVE_STIMULUS:
        return {'tick': e.tick, 'kind': e.kind.value, 'id': e.stimulus_id}
    if e.kind == EventKind.ADD_STIMULUS:
        return {'tick': e.tick, 'kind': e.kind.value, 'stimulus': _stimulus_dict(e.stimulus)}
    return {'tick': e.tick, 'kind': e.kind.value, 'field': e.field, 'value': e.value}


def _params_dict(params) -> Dict:
    return {name: getattr(params, name) for name in params.__dataclass_fields__}


def scenario_to_dict(scenario: Scenario) -> Dict:
    """Effective configuration with every default filled in"""
    world = scenario.world
    return {
        'name': scenario.name,
        'seed': scenario.seed,
        'max_ticks': scenario.max_ticks,
        'depletion_floor': scenario.depletion_floor,
        'world': {
            'bounds': {'min': _pair(world.bounds.min_corner), 'max': _pair(world.bounds.max_corner)},
            'stimuli': [_stimulus_dict(s) for s in world.stimuli],
            'obstacles': [{'min': _pair(o.min_corner), 'max': _pair(o.max_corner)} for o in world.obstacles],
        },
        'animat': {'position': _pair(scenario.pose.position), 'theta': scenario.pose.theta},
        'internal': {name: getattr(scenario.internal, name) for name in INTERNAL_FIELDS},
        'perception': _params_dict(scenario.perception),
        'physiology': _params_dict(scenario.physiology),
        'motor': _params_dict(scenario.motor),
        'ibenet': _params_dict(scenario.ibenet),
        'events': [_event_dict(e) for e in scenario.events],
    }


def dump_scenario(scenario: Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(scenario), sort_keys=False, default_flow_style=None)
