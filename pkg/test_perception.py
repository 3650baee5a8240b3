"""
Tests for the perceptual system: region, occlusion, pondered values,
compound percepts and reverberation memory
"""

import math

import numpy as np
import pytest

from utils.perception import (PerceptionParams, PerceptKind, PerceptMemory,
                              Pose, decay_memory, effective_radius,
                              in_perceptual_region, normalize_angle, ponder,
                              sense, wrap_to_pi)
from utils.world import (Obstacle, Rect, Stimulus, StimulusKind, Vec2, World,
                         segment_blocked)

PARAMS = PerceptionParams()


def make_world(*stimuli, obstacles=()):
    return World(Rect(Vec2(0.0, 0.0), Vec2(30.0, 30.0)), tuple(stimuli), tuple(obstacles))


def by_kind(percepts):
    return {p.kind: p for p in percepts}


def test_angles_are_normalized():
    assert normalize_angle(-math.pi / 2) == pytest.approx(3 * math.pi / 2)
    assert normalize_angle(2 * math.pi) == 0.0
    assert wrap_to_pi(3 * math.pi / 2) == pytest.approx(-math.pi / 2)
    assert wrap_to_pi(-math.pi) == pytest.approx(math.pi)


def test_bearing_is_relative_to_heading():
    pose = Pose(Vec2(0.0, 0.0), 0.0)
    assert pose.bearing_to(Vec2(1.0, 1.0)) == pytest.approx(math.pi / 4)
    assert Pose(Vec2(0.0, 0.0), math.pi / 2).bearing_to(Vec2(1.0, 0.0)) == pytest.approx(-math.pi / 2)


def test_point_behind_is_not_perceived():
    pose = Pose(Vec2(10.0, 10.0), 0.0)
    assert in_perceptual_region(pose, 5.0, Vec2(12.0, 10.0))
    assert not in_perceptual_region(pose, 5.0, Vec2(8.0, 10.0))
    # exactly abeam is outside the open half plane
    assert not in_perceptual_region(pose, 5.0, Vec2(10.0, 12.0))
    assert not in_perceptual_region(pose, 5.0, Vec2(15.0, 10.0))


def test_radius_scales_with_lucidity():
    assert effective_radius(PARAMS, 1.0) == PARAMS.base_radius
    assert effective_radius(PARAMS, 0.5) == PARAMS.base_radius / 2
    world = make_world(Stimulus(1, StimulusKind.WATER, Vec2(12.0, 10.0), 1.0))
    blind, _ = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 0.0, PerceptMemory(), PARAMS)
    assert blind == []


def test_ponder_is_bounded_and_monotone():
    assert ponder([], PARAMS.d_min) == 0.0
    near = ponder([(1.0, 1.0)], PARAMS.d_min)
    far = ponder([(1.0, 4.0)], PARAMS.d_min)
    assert 0.0 < far < near < 1.0
    assert ponder([(1.0, 0.0)], PARAMS.d_min) == ponder([(1.0, PARAMS.d_min)], PARAMS.d_min)
    assert ponder([(1.0, 1.0), (1.0, 1.0)], PARAMS.d_min) == pytest.approx(2.0 / 3.0)


def test_sense_reports_nearest_and_at_range():
    world = make_world(
        Stimulus(1, StimulusKind.WATER, Vec2(11.0, 10.0), 1.0),
        Stimulus(2, StimulusKind.WATER, Vec2(15.0, 10.0), 1.0),
    )
    percepts, memory = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 1.0, PerceptMemory(), PARAMS)
    water = by_kind(percepts)[PerceptKind.WATER]
    assert water.target_id == 1
    assert water.nearest_distance == 1.0
    assert water.at_range
    assert water.value == pytest.approx(ponder([(1.0, 1.0), (1.0, 5.0)], PARAMS.d_min))
    assert PerceptKind.WATER in memory.entries


def test_occluded_stimulus_is_not_perceived():
    world = make_world(
        Stimulus(1, StimulusKind.FOOD, Vec2(16.0, 10.0), 1.0),
        obstacles=[Obstacle(Vec2(12.0, 8.0), Vec2(13.0, 12.0))],
    )
    percepts, _ = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 1.0, PerceptMemory(), PARAMS)
    assert PerceptKind.FOOD not in by_kind(percepts)


def test_adjacent_food_and_water_form_compound_percept():
    world = make_world(
        Stimulus(1, StimulusKind.FOOD, Vec2(15.0, 10.5), 1.0),
        Stimulus(2, StimulusKind.WATER, Vec2(15.0, 9.5), 1.0),
        Stimulus(3, StimulusKind.WATER, Vec2(14.0, 16.0), 1.0),
    )
    percepts, _ = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 1.0, PerceptMemory(), PARAMS)
    compound = by_kind(percepts)[PerceptKind.FOOD_AND_WATER]
    assert compound.target_id == 1
    assert compound.partner_id == 2
    assert compound.bearing == pytest.approx(0.0)
    d = math.hypot(5.0, 0.5)
    assert compound.value == pytest.approx(ponder([(1.0, d), (1.0, d)], PARAMS.d_min))
    assert not compound.at_range


def test_distant_food_and_water_do_not_pair():
    world = make_world(
        Stimulus(1, StimulusKind.FOOD, Vec2(15.0, 7.0), 1.0),
        Stimulus(2, StimulusKind.WATER, Vec2(15.0, 13.0), 1.0),
    )
    percepts, _ = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 1.0, PerceptMemory(), PARAMS)
    assert PerceptKind.FOOD_AND_WATER not in by_kind(percepts)


def test_memory_decays_and_forgets():
    params = PerceptionParams(memory_decay=0.5, forget_eps=0.05)
    world = make_world(Stimulus(1, StimulusKind.WATER, Vec2(12.0, 10.0), 1.0))
    _, memory = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 1.0, PerceptMemory(), params)
    live_value = memory.entries[PerceptKind.WATER].value

    turned = Pose(Vec2(10.0, 10.0), math.pi)
    percepts, memory = sense(world, turned, 1.0, memory, params)
    water = by_kind(percepts)[PerceptKind.WATER]
    assert water.remembered
    assert not water.at_range
    assert water.value == pytest.approx(live_value * 0.5)
    assert abs(water.bearing) == pytest.approx(math.pi)

    for _ in range(10):
        percepts, memory = sense(world, turned, 1.0, memory, params)
    assert PerceptKind.WATER not in memory.entries
    assert PerceptKind.WATER not in by_kind(percepts)


def test_decay_memory_never_keeps_values_below_eps():
    params = PerceptionParams(memory_decay=0.7, forget_eps=0.02)
    world = make_world(Stimulus(1, StimulusKind.GRASS, Vec2(14.0, 10.0), 1.0))
    _, memory = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 1.0, PerceptMemory(), params)
    for _ in range(30):
        memory = decay_memory(memory, params)
        assert all(entry.value >= params.forget_eps for entry in memory.entries.values())
    assert len(memory) == 0


def test_frame_ahead_is_an_obstacle_at_range():
    world = make_world()
    percepts, _ = sense(world, Pose(Vec2(29.2, 10.0), 0.0), 1.0, PerceptMemory(), PARAMS)
    obstacle = by_kind(percepts)[PerceptKind.OBSTACLE]
    assert obstacle.at_range
    assert obstacle.nearest_distance == pytest.approx(0.8)
    clear, _ = sense(world, Pose(Vec2(29.2, 10.0), math.pi), 1.0, PerceptMemory(), PARAMS)
    assert PerceptKind.OBSTACLE not in by_kind(clear)


def test_percepts_are_sorted_by_kind():
    world = make_world(
        Stimulus(1, StimulusKind.BLOB, Vec2(13.0, 10.0), 1.0),
        Stimulus(2, StimulusKind.GRASS, Vec2(14.0, 11.0), 1.0),
        Stimulus(3, StimulusKind.WATER, Vec2(15.0, 9.0), 1.0),
    )
    percepts, _ = sense(world, Pose(Vec2(10.0, 10.0), 0.0), 1.0, PerceptMemory(), PARAMS)
    assert [p.kind for p in percepts] == [PerceptKind.WATER, PerceptKind.GRASS, PerceptKind.BLOB]


def test_perceptual_region_oracle():
    """Random poses, radii and points against the distance and dot-product rule"""
    rng = np.random.default_rng(2024)
    n = 100_000
    origins = rng.uniform(-50.0, 50.0, (n, 2))
    thetas = rng.uniform(-4 * math.pi, 4 * math.pi, n)
    radii = rng.uniform(0.1, 20.0, n)
    points = origins + rng.uniform(-25.0, 25.0, (n, 2))

    dz = points[:, 0] - origins[:, 0]
    dx = points[:, 1] - origins[:, 1]
    expected = (dz * dz + dx * dx < radii * radii) & (dz * np.cos(thetas) + dx * np.sin(thetas) > 0.0)

    disagreements = 0
    for i in range(n):
        pose = Pose(Vec2(origins[i, 0], origins[i, 1]), thetas[i])
        got = in_perceptual_region(pose, radii[i], Vec2(points[i, 0], points[i, 1]))
        if got != bool(expected[i]):
            # heading is renormalized; only a vanishing margin may differ
            forward = dz[i] * math.cos(pose.theta) + dx[i] * math.sin(pose.theta)
            if abs(forward) > 1e-9:
                disagreements += 1
    assert disagreements == 0


def test_occlusion_oracle():
    """Line of sight through one box compared with dense segment sampling"""
    rng = np.random.default_rng(77)
    t = np.linspace(0.0, 1.0, 4001)[1:-1]
    checked = 0
    disagreements = 0
    for _ in range(10_000):
        lo = rng.uniform(2.0, 20.0, 2)
        box = Obstacle(Vec2(*lo), Vec2(*(lo + rng.uniform(0.5, 5.0, 2))))
        world = make_world(obstacles=[box])
        a, b = rng.uniform(0.0, 30.0, 2), rng.uniform(0.0, 30.0, 2)
        z = a[0] + t * (b[0] - a[0])
        x = a[1] + t * (b[1] - a[1])
        depth = np.minimum.reduce([z - box.min_corner.z, box.max_corner.z - z,
                                   x - box.min_corner.x, box.max_corner.x - x]).max()
        if abs(depth) < 0.02:
            continue
        checked += 1
        if segment_blocked(world, Vec2(*a), Vec2(*b)) != (depth > 0):
            disagreements += 1
    assert disagreements == 0
    assert checked > 9000


def test_occluded_stimuli_never_contribute_to_percepts():
    """Removing every occluded stimulus from random worlds leaves the percepts unchanged"""
    rng = np.random.default_rng(78)
    kinds = list(StimulusKind)
    hidden_in_region = 0
    mismatches = 0
    for _ in range(20_000):
        obstacles = []
        for _ in range(rng.integers(1, 4)):
            lo = rng.uniform(1.0, 24.0, 2)
            obstacles.append(Obstacle(Vec2(*lo), Vec2(*(lo + rng.uniform(0.5, 5.0, 2)))))
        stimuli = [Stimulus(i, kinds[rng.integers(len(kinds))], Vec2(*rng.uniform(0.0, 30.0, 2)),
                            float(rng.uniform(0.1, 3.0)))
                   for i in range(int(rng.integers(3, 9)))]
        world = make_world(*stimuli, obstacles=obstacles)
        pose = Pose(Vec2(*rng.uniform(0.0, 30.0, 2)), float(rng.uniform(0.0, 2 * math.pi)))

        hidden = [s for s in stimuli if segment_blocked(world, pose.position, s.position)]
        hidden_in_region += sum(in_perceptual_region(pose, PARAMS.base_radius, s.position) for s in hidden)
        pruned = make_world(*[s for s in stimuli if s not in hidden], obstacles=obstacles)

        seen, _ = sense(world, pose, 1.0, PerceptMemory(), PARAMS)
        expected, _ = sense(pruned, pose, 1.0, PerceptMemory(), PARAMS)
        if seen != expected:
            mismatches += 1
    assert mismatches == 0
    assert hidden_in_region > 200
