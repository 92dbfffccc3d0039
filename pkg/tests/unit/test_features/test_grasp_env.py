"""Testes do ambiente planar de preensão."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.exceptions import ServiceError, StructuralError
from src.core.types import Phase
from src.features.grasp_env.contact import Contact, Penetration, antipodal_check, compose, invert, push_resolve
from src.features.grasp_env.environment import PlanarGraspEnv
from src.features.grasp_env.geometry import Box, Circle
from src.features.grasp_env.kinematics import (
    decode_genome,
    forward_kinematics,
    interpolate,
    joint_positions,
    waypoint_nodes,
)
from src.models.genome import Genome


class TestKinematics:
    """Testes de decodificação, interpolação e cinemática direta."""

    @pytest.mark.parametrize("gene,expected", [(-1.0, 0), (0.0, 90), (1.0, 180), (-0.999, 0)])
    def test_closure_step(self, env_config, gene, expected) -> None:
        decoded = decode_genome(Genome((0.0,) * 9 + (gene,)), env_config)
        assert decoded.t_close == expected

    def test_waypoints_span_joint_limits(self, env_config) -> None:
        genes = (-1.0, 0.0, 1.0) * 3 + (0.0,)
        decoded = decode_genome(Genome(genes), env_config)
        np.testing.assert_allclose(decoded.waypoints[0], [-math.pi, 0.0, math.pi], atol=1e-12)

    def test_interpolation_passes_through_nodes(self) -> None:
        q0 = np.array([0.1, 0.2, 0.3])
        waypoints = np.array([[0.5, -0.5, 0.0], [1.0, 0.0, -1.0], [0.2, 0.4, 0.6]])
        setpoints = interpolate(q0, waypoints, 30)
        assert setpoints.shape == (30, 3)
        np.testing.assert_allclose(setpoints[0], q0, atol=1e-12)
        np.testing.assert_allclose(setpoints[10], waypoints[0], atol=1e-12)
        np.testing.assert_allclose(setpoints[20], waypoints[1], atol=1e-12)
        # o último nó (t=T) fica fora do episódio; o polinômio ainda o atinge
        nodes = waypoint_nodes(30)
        assert nodes[-1] == 30.0

    def test_interpolation_clamps_to_limits(self) -> None:
        q0 = np.zeros(1)
        waypoints = np.array([[3.0], [3.0], [3.0]])
        setpoints = interpolate(q0, waypoints, 30, np.array([[-1.0, 1.0]]))
        assert setpoints.max() <= 1.0

    def test_forward_kinematics_rest_pose(self, env_config) -> None:
        position, orientation = forward_kinematics(np.array(env_config.rest_config), env_config)
        np.testing.assert_allclose(position, [0.3, 0.45], atol=1e-12)
        assert orientation == pytest.approx(-math.pi / 2)

    def test_joint_positions_chain(self, env_config) -> None:
        chain = joint_positions(np.array(env_config.rest_config), env_config)
        np.testing.assert_allclose(chain, [[0.0, 0.25], [0.0, 0.65], [0.3, 0.65], [0.3, 0.45]], atol=1e-12)


class TestShapes:
    """Testes das consultas segmento-objeto."""

    def test_circle_separated(self) -> None:
        distance, point, normal = Circle(0.04).query(np.array([[0.05, -0.1]]), np.array([[0.05, 0.1]]))[0]
        assert distance == pytest.approx(0.01)
        np.testing.assert_allclose(point, [0.04, 0.0], atol=1e-12)
        np.testing.assert_allclose(normal, [1.0, 0.0], atol=1e-12)

    def test_circle_penetration_is_negative(self) -> None:
        distance, _, _ = Circle(0.04).query(np.array([[0.01, -0.1]]), np.array([[0.01, 0.1]]))[0]
        assert distance == pytest.approx(-0.03)

    def test_circle_segments(self) -> None:
        circle = Circle(0.04)
        assert circle.segment_count(0.01) == 25
        assert circle.segment_index(np.array([[0.04, 0.0]]), 25)[0] == 0
        assert circle.segment_index(np.array([[-0.04, 0.0]]), 25)[0] == 12

    def test_box_separated(self) -> None:
        distance, point, normal = Box((0.03, 0.04)).query(np.array([[0.05, -0.1]]), np.array([[0.05, 0.1]]))[0]
        assert distance == pytest.approx(0.02)
        np.testing.assert_allclose(normal, [1.0, 0.0], atol=1e-12)
        assert point[0] == pytest.approx(0.03)

    def test_box_crossing_segment(self) -> None:
        distance, point, normal = Box((0.03, 0.04)).query(np.array([[-0.1, 0.0]]), np.array([[0.1, 0.0]]))[0]
        assert distance == pytest.approx(-0.03)
        assert abs(normal[0]) == 1.0

    def test_box_perimeter(self) -> None:
        box = Box((0.03, 0.04))
        assert box.perimeter == pytest.approx(0.28)
        assert box.rest_height == 0.04


def cones_intersect(axis_1: np.ndarray, axis_2: np.ndarray, half_angle: np.ndarray) -> np.ndarray:
    """
    Os cones de atrito (eixos (N, 2), semiabertura (N,)) têm direção comum?

    Testa as bordas e os eixos de cada cone contra os dois cones.
    """
    def rotate(v: np.ndarray, angle: np.ndarray) -> np.ndarray:
        c, s = np.cos(angle), np.sin(angle)
        return np.column_stack([c * v[:, 0] - s * v[:, 1], s * v[:, 0] + c * v[:, 1]])

    def inside(v: np.ndarray, axis: np.ndarray) -> np.ndarray:
        return np.sum(v * axis, axis=1) >= np.cos(half_angle) - 1e-12

    candidates = [axis_1, axis_2]
    for axis in (axis_1, axis_2):
        candidates += [rotate(axis, half_angle), rotate(axis, -half_angle)]
    found = np.zeros(len(axis_1), dtype=bool)
    for v in candidates:
        found |= inside(v, axis_1) & inside(v, axis_2)
    return found


def _normal(angle: float) -> np.ndarray:
    return np.array([math.cos(angle), math.sin(angle)])


class TestContact:
    """Testes do critério antipodal, do empurrão e das poses SE(2)."""

    def test_antipodal_opposite_normals(self) -> None:
        left = Contact(np.array([0.04, 0.0]), _normal(0.0))
        right = Contact(np.array([-0.04, 0.0]), _normal(math.pi))
        assert antipodal_check(left, right, 0.5)

    def test_antipodal_without_friction_requires_exact_opposition(self) -> None:
        left = Contact(np.zeros(2), _normal(0.0))
        right = Contact(np.zeros(2), _normal(math.pi + 0.01))
        assert not antipodal_check(left, right, 0.0)

    def test_antipodal_matches_cone_oracle(self) -> None:
        rng = np.random.default_rng(3)
        count = 100_000
        a = rng.uniform(-math.pi, math.pi, count)
        b = rng.uniform(-math.pi, math.pi, count)
        mu = rng.uniform(0.05, 2.0, count)
        points = rng.uniform(-0.05, 0.05, size=(count, 2, 2))
        n1 = np.column_stack([np.cos(a), np.sin(a)])
        n2 = np.column_stack([np.cos(b), np.sin(b)])

        expected = cones_intersect(-n1, n2, np.arctan(mu))
        gap = np.abs(np.arccos(np.clip(np.sum(n1 * -n2, axis=1), -1.0, 1.0)) - 2.0 * np.arctan(mu))
        checked = 0
        for i in np.flatnonzero(gap > 1e-9):
            c1 = Contact(points[i, 0], n1[i])
            c2 = Contact(points[i, 1], n2[i])
            assert antipodal_check(c1, c2, float(mu[i])) == expected[i]
            checked += 1
        assert checked > 0.99 * count
        assert 0 < expected.sum() < count

    def test_push_moves_object_away(self) -> None:
        pose = np.array([0.55, 0.04, 0.0])
        pushed = push_resolve(pose, [Penetration(np.array([-1.0, 0.0]), 0.002)])
        np.testing.assert_allclose(pushed, [0.552, 0.04, 0.0])

    def test_push_from_both_sides_jams(self) -> None:
        pose = np.array([0.55, 0.04, 0.0])
        pushed = push_resolve(pose, [
            Penetration(np.array([-1.0, 0.0]), 0.002),
            Penetration(np.array([1.0, 0.0]), 0.001),
        ])
        np.testing.assert_array_equal(pushed, pose)

    def test_vertical_push_is_ignored(self) -> None:
        pose = np.array([0.55, 0.04, 0.0])
        pushed = push_resolve(pose, [Penetration(np.array([0.0, 1.0]), 0.003)])
        np.testing.assert_array_equal(pushed, pose)

    def test_compose_with_inverse_is_identity(self) -> None:
        pose = np.array([0.3, -0.2, 1.1])
        np.testing.assert_allclose(compose(invert(pose), pose), [0.0, 0.0, 0.0], atol=1e-12)


class TestPlanarGraspEnv:
    """Testes de episódios completos."""

    def test_successful_grasp(self, grasp_env_config, grasp_genome) -> None:
        trajectory = PlanarGraspEnv(grasp_env_config).rollout(grasp_genome)
        assert trajectory.length == 210
        assert trajectory.t_close == 70
        assert trajectory.t_touch == 76
        assert trajectory.grasp_established_at == 76
        assert trajectory.success
        assert trajectory.object_pose[-1, 1] == pytest.approx(0.234, abs=0.01)
        assert abs(trajectory.touch_point[0]) == pytest.approx(0.04, abs=1e-3)
        assert trajectory.touch_point[1] == pytest.approx(0.0, abs=1e-6)

    def test_phases_in_order(self, grasp_env_config, grasp_genome) -> None:
        trajectory = PlanarGraspEnv(grasp_env_config).rollout(grasp_genome)
        assert trajectory.phase_at(69) is Phase.APPROACH
        assert trajectory.phase_at(70) is Phase.CLOSING
        assert trajectory.phase_at(76) is Phase.CLOSING
        assert trajectory.phase_at(77) is Phase.POST_CLOSURE
        assert trajectory.closure_end == 76
        assert np.all(np.diff(trajectory.phases) >= 0)

    def test_arm_frozen_while_closing(self, grasp_env_config, grasp_genome) -> None:
        trajectory = PlanarGraspEnv(grasp_env_config).rollout(grasp_genome)
        closing = trajectory.joints[70:77]
        np.testing.assert_array_equal(closing, np.broadcast_to(closing[0], closing.shape))
        np.testing.assert_array_equal(trajectory.ee_pose[70:77], np.broadcast_to(trajectory.ee_pose[70], (7, 3)))

    def test_gripper_closes_at_constant_speed(self, grasp_env_config, grasp_genome) -> None:
        trajectory = PlanarGraspEnv(grasp_env_config).rollout(grasp_genome)
        speed = grasp_env_config.gripper.closure_speed
        assert np.all(trajectory.gripper[:70] == grasp_env_config.gripper.max_opening)
        np.testing.assert_allclose(np.diff(trajectory.gripper[70:76]), -speed, atol=1e-12)
        # parada na largura de contato dos dois dedos: diâmetro + 2·tolerância
        assert trajectory.gripper[76] == pytest.approx(0.082, abs=1e-6)
        assert np.all(trajectory.gripper[77:] == trajectory.gripper[76])

    def test_no_contact_during_approach(self, grasp_env_config, grasp_genome) -> None:
        trajectory = PlanarGraspEnv(grasp_env_config).rollout(grasp_genome)
        assert not trajectory.contacts[:70].any()
        np.testing.assert_array_equal(trajectory.object_pose[:70], np.broadcast_to([0.55, 0.04, 0.0], (70, 3)))
        assert trajectory.contacts[77:].all()

    def test_object_follows_gripper_after_grasp(self, grasp_env_config, grasp_genome) -> None:
        trajectory = PlanarGraspEnv(grasp_env_config).rollout(grasp_genome)
        offset = trajectory.object_pose[77:, :2] - trajectory.ee_pose[77:, :2]
        np.testing.assert_allclose(offset, np.broadcast_to(offset[0], offset.shape), atol=1e-9)

    def test_idle_arm_never_touches(self, env_config, idle_genome) -> None:
        trajectory = PlanarGraspEnv(env_config).rollout(idle_genome)
        assert trajectory.t_touch is None
        assert trajectory.touch_point is None
        assert trajectory.grasp_established_at is None
        assert not trajectory.success
        assert not trajectory.contacts.any()
        assert trajectory.t_close == 90
        assert trajectory.gripper[-1] == 0.0
        np.testing.assert_allclose(trajectory.ee_pose[0], [0.3, 0.45, -math.pi / 2], atol=1e-12)
        np.testing.assert_array_equal(trajectory.object_pose, np.broadcast_to([0.55, 0.04, 0.0], (200, 3)))

    def test_unreachable_object_is_never_touched(self, far_object_config) -> None:
        from src.features.variation.operators import init_pop

        env = PlanarGraspEnv(far_object_config)
        for genome in init_pop(20, 3, np.random.default_rng(0)):
            trajectory = env.rollout(genome)
            assert trajectory.t_touch is None
            assert not trajectory.success

    def test_rollout_is_deterministic(self, env_config) -> None:
        from src.features.variation.operators import init_pop

        env = PlanarGraspEnv(env_config)
        for genome in init_pop(5, 3, np.random.default_rng(1)):
            assert env.rollout(genome).same_as(env.rollout(genome))

    def test_random_rollouts_respect_invariants(self, env_config) -> None:
        from src.features.variation.operators import init_pop

        env = PlanarGraspEnv(env_config)
        for genome in init_pop(30, 3, np.random.default_rng(2)):
            trajectory = env.rollout(genome)
            assert trajectory.length == 200
            assert np.all(np.diff(trajectory.phases) >= 0)
            assert np.all(trajectory.object_pose[:, 1] >= 0.04 - 1e-12) or trajectory.grasp_established_at is not None
            if trajectory.success:
                assert trajectory.t_touch <= trajectory.grasp_established_at

    def test_wrong_genome_length(self, env_config) -> None:
        with pytest.raises(StructuralError):
            PlanarGraspEnv(env_config).rollout(Genome((0.0,) * 13))

    def test_box_object_episode(self, env_config, idle_genome) -> None:
        from src.core.types import ShapeKind
        from src.models.run_config import ObjectConfig

        config = env_config.copy(object=ObjectConfig(shape=ShapeKind.BOX))
        trajectory = PlanarGraspEnv(config).rollout(idle_genome)
        assert trajectory.object_pose[0, 1] == pytest.approx(0.04)
        assert trajectory.t_touch is None


@pytest.mark.usefixtures("fresh_container")
class TestEnvironmentFactory:
    """Testes da criação de backends via container."""

    def test_planar_backend(self, env_config) -> None:
        from src.features.grasp_env.base import create_environment

        assert isinstance(create_environment(env_config), PlanarGraspEnv)

    def test_unknown_backend(self, env_config) -> None:
        from src.features.grasp_env.base import create_environment

        with pytest.raises(ServiceError):
            create_environment(env_config.copy(backend="mujoco"))

    def test_container_factory_is_used(self, fresh_container, env_config) -> None:
        from src.features.grasp_env.base import GraspEnvironment, resolve_environment

        sentinel = PlanarGraspEnv(env_config)
        fresh_container.register_factory(GraspEnvironment, lambda config: sentinel)
        assert resolve_environment(env_config) is sentinel
