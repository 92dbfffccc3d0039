"""Testes da novidade k-NN por slot."""

from __future__ import annotations

import math

import numpy as np
import pytest

from src.core.exceptions import ContractViolation
from src.core.types import Slot
from src.features.novelty.descriptors import extract_descriptors
from src.features.novelty.evaluator import (
    ReferenceSet,
    angular_gap,
    knn_novelty,
    knn_scores,
    slot_distance,
    update_novelty,
)
from src.models.archives import NoveltyArchive


def sorting_oracle(queries, refs, k, query_owners, ref_owners, angular):
    """Média dos k menores por ordenação completa da matriz de distâncias."""
    diff = queries[:, None, :] - refs[None, :, :]
    if angular:
        gap = np.mod(np.abs(diff[..., 0]), 2.0 * math.pi)
        distances = np.minimum(gap, 2.0 * math.pi - gap)
    else:
        distances = np.sqrt(np.sum(diff * diff, axis=-1))
    distances = np.where(query_owners[:, None] == ref_owners[None, :], np.inf, distances)
    expected = []
    for row in distances:
        nearest = np.sort(row[np.isfinite(row)])[:k]
        expected.append(float(np.mean(nearest)) if nearest.size else None)
    return expected


def random_angle(rng) -> float:
    return math.pi - float(rng.uniform(0.0, 2.0 * math.pi))


class TestDistances:
    """Testes das distâncias por slot."""

    def test_angular_gap_takes_shortest_arc(self) -> None:
        assert angular_gap(math.pi - 0.1, -math.pi + 0.1) == pytest.approx(0.2)
        assert angular_gap(0.0, math.pi) == pytest.approx(math.pi)

    def test_slot_distance_position_and_angle(self, make_descriptor) -> None:
        a = make_descriptor(final=(0.0, 0.0), mid_angle=3.0)
        b = make_descriptor(final=(0.3, 0.4), mid_angle=-3.0)
        assert slot_distance(a, b, Slot.OBJECT_FINAL) == pytest.approx(0.5)
        assert slot_distance(a, b, Slot.MID_ORIENTATION) == pytest.approx(2 * math.pi - 6.0)

    def test_slot_distance_requires_eligibility(self, make_descriptor) -> None:
        with pytest.raises(ContractViolation):
            slot_distance(make_descriptor(touch=(0.1, 0.1)), make_descriptor(), Slot.TOUCH_POSITION)


class TestKnnScores:
    """Testes de `knn_scores`."""

    def test_matches_sorting_oracle(self) -> None:
        rng = np.random.default_rng(11)
        queries = rng.uniform(0.0, 1.0, size=(20, 2))
        refs = rng.uniform(0.0, 1.0, size=(30, 2))
        no_owner = np.full(20, -1)
        for k in (1, 5, 30, 45):
            expected = sorting_oracle(queries, refs, k, no_owner, np.full(30, -2), angular=False)
            np.testing.assert_allclose(knn_scores(queries, refs, k), expected)

    def test_angular_rows_wrap(self) -> None:
        queries = np.array([[math.pi - 0.05]])
        refs = np.array([[-math.pi + 0.05], [0.0]])
        assert knn_scores(queries, refs, 1, angular=True)[0] == pytest.approx(0.1)

    def test_owned_references_skipped(self) -> None:
        queries = np.array([[0.0, 0.0]])
        refs = np.array([[0.0, 0.0], [0.0, 0.0], [0.3, 0.4], [3.0, 4.0]])
        scores = knn_scores(queries, refs, 1, [7], [7, 7, 8, 9])
        assert scores[0] == pytest.approx(0.5)

    def test_short_rows_average_what_is_left(self) -> None:
        queries = np.array([[0.0, 0.0]])
        refs = np.array([[0.0, 0.0], [0.2, 0.0], [0.4, 0.0]])
        assert knn_scores(queries, refs, 3, [1], [1, 2, 3])[0] == pytest.approx(0.3)
        assert math.isnan(knn_scores(queries, refs[:1], 2, [1], [1])[0])

    def test_no_reference_gives_nan(self) -> None:
        scores = knn_scores(np.zeros((3, 2)), np.zeros((0, 2)), 5)
        assert scores.shape == (3,)
        assert np.all(np.isnan(scores))

    def test_k_must_be_positive(self) -> None:
        with pytest.raises(ContractViolation):
            knn_scores(np.zeros((1, 3)), np.zeros((2, 3)), 0)


class TestKnnNovelty:
    """Testes de `knn_novelty` e `update_novelty`."""

    def test_score_is_mean_of_nearest(self, make_descriptor) -> None:
        refs = ReferenceSet([make_descriptor(final=(x, 0.0)) for x in (0.1, 0.2, 0.4, 0.8)])
        score = knn_novelty(make_descriptor(final=(0.0, 0.0)), refs, 2, Slot.OBJECT_FINAL)
        assert score == pytest.approx(0.15)

    def test_owner_is_not_its_own_neighbor(self, make_descriptor) -> None:
        x = make_descriptor(final=(0.0, 0.0))
        refs = ReferenceSet([x, make_descriptor(final=(1.0, 0.0))], owners=[5, 6])
        assert knn_novelty(x, refs, 1, Slot.OBJECT_FINAL, owner=5) == pytest.approx(1.0)
        assert knn_novelty(x, refs, 1, Slot.OBJECT_FINAL) == pytest.approx(0.0)

    def test_no_eligible_reference_gives_none(self, make_descriptor) -> None:
        refs = ReferenceSet([make_descriptor(), make_descriptor()])
        x = make_descriptor(touch=(0.1, 0.1))
        assert knn_novelty(x, refs, 3, Slot.TOUCH_POSITION) is None
        assert knn_novelty(x, refs, 3, Slot.TOUCH_ORIENTATION, owner=4) is None

    def test_update_leaves_slot_unset_without_eligible_reference(self, make_individual, make_descriptor) -> None:
        touched = make_individual(1, make_descriptor(touch=(0.1, 0.1), touch_angle=0.5))
        refs = ReferenceSet([make_descriptor(final=(0.3, 0.4))], owners=[99])

        [scored] = update_novelty([touched], refs, 15)

        assert scored.score(Slot.TOUCH_POSITION) is None
        assert scored.score(Slot.TOUCH_ORIENTATION) is None
        assert scored.score(Slot.OBJECT_FINAL) == pytest.approx(0.5)

    def test_update_alone_in_its_references(self, make_individual, make_descriptor) -> None:
        lone = make_individual(3, make_descriptor(touch=(0.1, 0.1)))
        [scored] = update_novelty([lone], ReferenceSet.from_sources([lone]), 15)
        assert scored.novelty == (None,) * len(Slot)

    def test_ineligible_query_raises(self, make_descriptor) -> None:
        refs = ReferenceSet([make_descriptor(touch=(0.1, 0.1))])
        with pytest.raises(ContractViolation):
            knn_novelty(make_descriptor(), refs, 1, Slot.TOUCH_POSITION)

    def test_update_novelty_matches_single_queries(self, make_individual, make_descriptor) -> None:
        rng = np.random.default_rng(4)
        pool = []
        for uid in range(12):
            touched = uid % 3 == 0
            pool.append(make_individual(uid, make_descriptor(
                final=tuple(rng.uniform(0, 1, 2)),
                touch=tuple(rng.uniform(0, 1, 2)) if touched else None,
                touch_angle=float(rng.uniform(-3, 3)) if touched else None,
                mid=tuple(rng.uniform(0, 1, 2)),
                mid_angle=float(rng.uniform(-3, 3)),
            )))
        archive = NoveltyArchive()
        archive.extend([make_individual(100 + i, make_descriptor(final=(i * 0.1, 0.0))) for i in range(5)])
        refs = ReferenceSet.from_sources(pool, archive)
        scored = update_novelty(pool, refs, 3)

        assert [ind.uid for ind in scored] == [ind.uid for ind in pool]
        for ind in scored:
            for slot in Slot:
                if ind.descriptor.is_eligible(slot):
                    expected = knn_novelty(ind.descriptor, refs, 3, slot, owner=ind.uid)
                    assert ind.score(slot) == pytest.approx(expected)
                else:
                    assert ind.score(slot) is None

    def test_update_novelty_empty_pool(self) -> None:
        assert update_novelty([], ReferenceSet([]), 3) == []

    def test_matches_exhaustive_oracle_on_random_sets(self, make_individual, make_descriptor) -> None:
        rng = np.random.default_rng(2024)
        for case in range(100):
            n = int(rng.integers(1, 501))
            k = (1, 5, 15)[case % 3]
            pool = []
            for uid in range(n):
                touched = bool(rng.random() < 0.5)
                pool.append(make_individual(uid, make_descriptor(
                    final=tuple(rng.uniform(-1.0, 1.0, 2)),
                    touch=tuple(rng.uniform(-1.0, 1.0, 2)) if touched else None,
                    touch_angle=random_angle(rng) if touched else None,
                    mid=tuple(rng.uniform(-1.0, 1.0, 2)),
                    mid_angle=random_angle(rng),
                )))
            descriptors = [ind.descriptor for ind in pool]
            owners = [ind.uid for ind in pool]
            # archive copies of some pool members share their owner uid
            for uid in rng.choice(n, size=min(n, int(rng.integers(0, 30))), replace=False):
                descriptors.append(pool[uid].descriptor)
                owners.append(int(uid))
            refs = ReferenceSet(descriptors, owners)

            scored = update_novelty(pool, refs, k)

            for slot in Slot:
                rows = [i for i, ind in enumerate(pool) if ind.descriptor.is_eligible(slot)]
                if not rows:
                    continue
                values, ref_owners = refs.slot(slot)
                queries = np.vstack([pool[i].descriptor.value(slot) for i in rows])
                expected = sorting_oracle(
                    queries, values, k, np.array(rows), ref_owners, angular=slot.is_angular
                )
                for i, value in zip(rows, expected):
                    got = scored[i].score(slot)
                    if value is None:
                        assert got is None
                    else:
                        assert got == pytest.approx(value, abs=1e-9)
                single = knn_novelty(pool[rows[0]].descriptor, refs, k, slot, owner=rows[0])
                if expected[0] is None:
                    assert single is None
                else:
                    assert single == pytest.approx(expected[0], abs=1e-9)


class TestExtractDescriptors:
    """Testes da extração do descritor a partir da trajetória."""

    def test_grasp_descriptor(self, grasp_env_config, grasp_genome) -> None:
        from src.features.grasp_env.environment import PlanarGraspEnv

        trajectory = PlanarGraspEnv(grasp_env_config).rollout(grasp_genome)
        descriptor = extract_descriptors(trajectory, 210)
        assert descriptor.touched
        np.testing.assert_allclose(descriptor.object_final, trajectory.object_pose[209, :2])
        np.testing.assert_allclose(descriptor.touch_position, trajectory.ee_pose[76, :2])
        np.testing.assert_allclose(descriptor.mid_position, trajectory.ee_pose[105, :2])
        assert descriptor.touch_orientation == pytest.approx(-math.pi / 2)

    def test_untouched_descriptor(self, env_config, idle_genome) -> None:
        from src.features.grasp_env.environment import PlanarGraspEnv

        descriptor = extract_descriptors(PlanarGraspEnv(env_config).rollout(idle_genome), 200)
        assert descriptor.eligible == (True, False, False, True, True)
        np.testing.assert_allclose(descriptor.object_final, [0.55, 0.04])

    def test_length_mismatch(self, env_config, idle_genome) -> None:
        from src.core.exceptions import StructuralError
        from src.features.grasp_env.environment import PlanarGraspEnv

        with pytest.raises(StructuralError):
            extract_descriptors(PlanarGraspEnv(env_config).rollout(idle_genome), 150)
