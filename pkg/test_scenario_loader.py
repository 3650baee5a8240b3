"""
Tests for reading and writing scenario files
"""

import os

import pytest
import yaml

from utils.scenario_loader import (ScenarioFormatError, dump_scenario,
                                   load_scenario, scenario_from_dict)
from utils.simulator import EventKind, ScenarioValidationError
from utils.world import StimulusKind, Vec2

SCENARIO_DIR = os.path.join(os.path.dirname(__file__), 'data', 'scenarios')


def minimal(**extra):
    doc = {
        'world': {'bounds': {'min': [0, 0], 'max': [10, 10]}},
        'animat': {'position': [5, 5]},
    }
    doc.update(extra)
    return doc


def violations_of(doc):
    with pytest.raises(ScenarioValidationError) as excinfo:
        scenario_from_dict(doc)
    return excinfo.value.violations


def test_minimal_document_gets_defaults():
    scenario = scenario_from_dict(minimal())
    assert scenario.name == 'scenario'
    assert scenario.max_ticks == 1000
    assert scenario.pose.theta == 0.0
    assert scenario.perception.base_radius == 8.0
    assert scenario.internal.strength == 1.0
    assert scenario.ibenet.calm_ticks == 10
    assert scenario.world.stimuli == ()


def test_bundled_scenario_loads():
    scenario = load_scenario(os.path.join(SCENARIO_DIR, 'exp_4_3.yaml'))
    assert scenario.name == 'exp_4_3'
    assert [s.kind for s in scenario.world.stimuli] == [StimulusKind.WATER, StimulusKind.WATER,
                                                        StimulusKind.BLOB]
    [event] = scenario.events
    assert event.kind == EventKind.MOVE_STIMULUS
    assert event.tick == 40
    assert event.position == Vec2(17.9, 15.0)


def test_unknown_keys_are_reported_with_paths():
    doc = minimal(colour='red')
    doc['world']['stimuli'] = [{'id': 1, 'kind': 'Water', 'position': [2, 2], 'magnitude': 1, 'taste': 1}]
    problems = violations_of(doc)
    assert "colour: unknown key" in problems
    assert "world.stimuli[0].taste: unknown key" in problems


def test_out_of_range_values_are_reported():
    problems = violations_of(minimal(internal={'thirst': -0.1}, max_ticks=0))
    assert "internal.thirst: must be in [0, 1]" in problems
    assert "max_ticks: must be > 0" in problems


def test_type_errors_are_reported():
    problems = violations_of(minimal(seed='abc', motor={'gain': 'fast'}))
    assert "seed: must be an integer" in problems
    assert "motor.gain: must be a number" in problems


def test_missing_required_fields():
    problems = violations_of({'world': {}})
    assert "world.bounds: required" in problems
    assert "animat.position: required" in problems


def test_unknown_stimulus_kind():
    doc = minimal()
    doc['world']['stimuli'] = [{'id': 1, 'kind': 'Lava', 'position': [2, 2], 'magnitude': 1}]
    assert "world.stimuli[0].kind: unknown stimulus kind 'Lava'" in violations_of(doc)


def test_selection_thresholds_follow_other_sections():
    scenario = scenario_from_dict(minimal(physiology={'satiation_threshold': 0.2},
                                          perception={'d_min': 0.25}))
    assert scenario.ibenet.satiation_threshold == 0.2
    assert scenario.ibenet.d_min == 0.25
    pinned = scenario_from_dict(minimal(physiology={'satiation_threshold': 0.2},
                                        ibenet={'satiation_threshold': 0.05}))
    assert pinned.ibenet.satiation_threshold == 0.05


def test_effective_configuration_reloads_unchanged():
    scenario = load_scenario(os.path.join(SCENARIO_DIR, 'exp_4_3.yaml'))
    assert scenario_from_dict(yaml.safe_load(dump_scenario(scenario))) == scenario


def test_malformed_yaml(tmp_path):
    path = tmp_path / 'broken.yaml'
    path.write_text("world: [unclosed\n")
    with pytest.raises(ScenarioFormatError):
        load_scenario(str(path))


def test_non_mapping_document(tmp_path):
    path = tmp_path / 'list.yaml'
    path.write_text("- 1\n- 2\n")
    with pytest.raises(ScenarioFormatError):
        load_scenario(str(path))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_scenario(str(tmp_path / 'nope.yaml'))


def test_non_finite_numbers_are_rejected():
    doc = minimal(animat={'position': [5, 5], 'theta': float('nan')}, motor={'gain': float('inf')})
    doc['world']['stimuli'] = [{'id': 1, 'kind': 'Water', 'position': [2, 2], 'magnitude': float('inf')}]
    problems = violations_of(doc)
    assert "animat.theta: must be finite" in problems
    assert "motor.gain: must be finite" in problems
    assert "world.stimuli[0].magnitude: must be finite" in problems


def test_yaml_nan_and_infinity_are_rejected(tmp_path):
    path = tmp_path / 'nan.yaml'
    path.write_text("world: {bounds: {min: [0, 0], max: [10, 10]}}\n"
                    "animat: {position: [.nan, 5], theta: .inf}\n")
    with pytest.raises(ScenarioValidationError) as excinfo:
        load_scenario(str(path))
    assert "animat.position[0]: must be finite" in excinfo.value.violations
    assert "animat.theta: must be finite" in excinfo.value.violations


def test_added_stimuli_are_checked_against_the_world():
    doc = minimal(events=[
        {'tick': 1, 'kind': 'add_stimulus',
         'stimulus': {'id': 2, 'kind': 'Food', 'position': [100, 100], 'magnitude': 1, 'body_radius': -1}},
        {'tick': 2, 'kind': 'add_stimulus',
         'stimulus': {'id': 1, 'kind': 'Food', 'position': [3, 3], 'magnitude': 1}},
    ])
    doc['world']['stimuli'] = [{'id': 1, 'kind': 'Water', 'position': [2, 2], 'magnitude': 1}]
    problems = violations_of(doc)
    assert "events[0].stimulus.position: outside world bounds" in problems
    assert "events[0].stimulus.body_radius: must be finite and >= 0" in problems
    assert "events[1].stimulus.id: duplicate id 1" in problems


def test_removed_id_can_be_added_again():
    doc = minimal(events=[
        {'tick': 1, 'kind': 'remove_stimulus', 'id': 1},
        {'tick': 2, 'kind': 'add_stimulus',
         'stimulus': {'id': 1, 'kind': 'Food', 'position': [3, 3], 'magnitude': 1}},
    ])
    doc['world']['stimuli'] = [{'id': 1, 'kind': 'Water', 'position': [2, 2], 'magnitude': 1}]
    assert len(scenario_from_dict(doc).events) == 2


def test_non_utf8_file_is_a_format_error(tmp_path):
    path = tmp_path / 'binary.yaml'
    path.write_bytes(b'name: \xff\xfe bad\n')
    with pytest.raises(ScenarioFormatError, match='not UTF-8'):
        load_scenario(str(path))
