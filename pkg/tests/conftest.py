"""
Configuração e fixtures do pytest.

Este arquivo é lido automaticamente pelo pytest e disponibiliza
fixtures compartilhadas para os testes. Os serviços da aplicação
são singletons (ver `src/services/base.py`), então o fixture
`reset_services` garante isolamento entre testes.

Cenários do ambiente planar usados em vários arquivos:

- `grasp_env_config` + `grasp_genome`: a garra desce sobre o disco,
  fecha no passo 70, toca os dois lados no passo 76 e levanta o
  objeto até y ≈ 0.23 (sucesso).
- `idle_genome`: o braço fica parado na pose de repouso, longe do
  objeto (nenhum contato).
- `far_object_config`: objeto fora do alcance do braço.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path
from typing import Generator

import pytest

# Garante que `src` está no sys.path
ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

GRASP_EPISODE = 210
GRASP_CLOSE_STEP = 70
GRASP_HEIGHT = 0.085
APPROACH_HEIGHT = 0.15


def pytest_addoption(parser: pytest.Parser) -> None:
    parser.addoption(
        "--run-slow",
        action="store_true",
        default=False,
        help="executa também os testes marcados como slow",
    )


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="use --run-slow para executar")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


def planar_ik(x: float, y: float, theta: float) -> tuple[float, float, float]:
    """
    Cinemática inversa (cotovelo para cima) do braço padrão de 3 elos.

    Coloca o efetuador em (x, y) com orientação ``theta``.
    """
    l1, l2, l3 = 0.4, 0.3, 0.2
    bx, by = 0.0, 0.25
    wx, wy = x - l3 * math.cos(theta), y - l3 * math.sin(theta)
    dx, dy = wx - bx, wy - by
    c2 = (dx * dx + dy * dy - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)
    q2 = -math.acos(c2)
    q1 = math.atan2(dy, dx) - math.atan2(l2 * math.sin(q2), l1 + l2 * math.cos(q2))
    return (q1, q2, theta - q1 - q2)


@pytest.fixture(scope="session")
def qapp():
    """
    QGuiApplication compartilhado para toda a sessão.

    A renderização SVG usa QPainter, que exige uma aplicação Qt
    (plataforma offscreen, sem janela).
    """
    from src.features.reporting.svg_renderer import ensure_gui_application

    yield ensure_gui_application()


@pytest.fixture
def reset_services() -> Generator[None, None, None]:
    """
    Reseta os singletons dos services entre testes.

    Use este fixture em testes que criam ou resolvem services para
    garantir que cada teste começa com um estado limpo.
    """
    from src.services.base import BaseService

    # Guarda o estado anterior e limpa
    saved = dict(BaseService._instances)
    BaseService._instances.clear()
    yield
    # Restaura
    BaseService._instances.clear()
    BaseService._instances.update(saved)


@pytest.fixture
def fresh_container() -> Generator:
    """
    Container DI limpo para cada teste.

    Cuidado: `Container` é singleton, então este fixture limpa o
    container global e o restaura ao final.
    """
    from src.core.container import Container

    c = Container()
    snapshot_services = dict(c._services)
    snapshot_factories = dict(c._factories)
    c.clear()
    yield c
    c._services.clear()
    c._services.update(snapshot_services)
    c._factories.clear()
    c._factories.update(snapshot_factories)


@pytest.fixture
def env_config():
    """Ambiente planar com os valores padrão."""
    from src.models.run_config import EnvConfig

    return EnvConfig()


@pytest.fixture
def grasp_waypoints() -> tuple[tuple[float, ...], tuple[float, ...]]:
    """Configurações de pega (qg) e de aproximação (qa), garra apontando para baixo."""
    qg = planar_ik(0.55, GRASP_HEIGHT, -math.pi / 2)
    qa = planar_ik(0.55, APPROACH_HEIGHT, -math.pi / 2)
    return qg, qa


@pytest.fixture
def grasp_env_config(grasp_waypoints):
    """Ambiente de 210 passos com repouso sobre o objeto."""
    from src.models.run_config import EnvConfig

    _, qa = grasp_waypoints
    return EnvConfig(episode_length=GRASP_EPISODE, rest_config=qa)


@pytest.fixture
def grasp_genome(grasp_waypoints):
    """
    Genoma que desce até qg, fecha em t=70 e sobe além de qa.

    Waypoints: qg (t=70), qa (t=140), qa + 2(qa - qg) (t=210).
    """
    from src.models.genome import Genome

    qg, qa = grasp_waypoints
    delta = [a - g for a, g in zip(qa, qg)]
    waypoints = (
        list(qg)
        + [g + d for g, d in zip(qg, delta)]
        + [g + 3 * d for g, d in zip(qg, delta)]
    )
    horizon = 0.9 * GRASP_EPISODE
    closure = 2.0 * GRASP_CLOSE_STEP / horizon - 1.0
    return Genome(tuple(q / math.pi for q in waypoints) + (closure,))


@pytest.fixture
def idle_genome():
    """Waypoints iguais à pose de repouso padrão: o braço não se move."""
    from src.models.genome import Genome

    return Genome((0.5, -0.5, -0.5) * 3 + (0.0,))


@pytest.fixture
def far_object_config():
    """Objeto em x=2.0, fora do alcance (0.9) do braço."""
    from src.models.run_config import EnvConfig, ObjectConfig

    return EnvConfig(object=ObjectConfig(x=2.0))


@pytest.fixture
def grasp_individual(grasp_env_config, grasp_genome):
    """Indivíduo de sucesso avaliado no ambiente de pega."""
    from src.core.types import MutationKind
    from src.features.engine.evaluation import Evaluator
    from src.features.grasp_env.environment import PlanarGraspEnv
    from src.models.individual import Individual, Lineage

    evaluation = Evaluator(PlanarGraspEnv(grasp_env_config)).evaluate_one(grasp_genome)
    return Individual(
        uid=1000,
        genome=grasp_genome,
        descriptor=evaluation.descriptor,
        success=evaluation.success,
        lineage=Lineage(0, MutationKind.INIT),
        touch_point=evaluation.trajectory.touch_point,
    )


@pytest.fixture
def make_descriptor():
    """Fábrica de descritores com valores simples."""
    from src.models.descriptor import BehaviorDescriptor

    def factory(
        final=(0.0, 0.0),
        touch=None,
        touch_angle=None,
        mid=(0.0, 0.0),
        mid_angle=0.0,
    ) -> BehaviorDescriptor:
        if touch is not None and touch_angle is None:
            touch_angle = 0.0
        return BehaviorDescriptor(
            object_final=tuple(final),
            touch_position=tuple(touch) if touch is not None else None,
            touch_orientation=touch_angle,
            mid_position=tuple(mid),
            mid_orientation=mid_angle,
        )

    return factory


@pytest.fixture
def make_individual(make_descriptor):
    """Fábrica de indivíduos (genoma nulo de 3 juntas)."""
    from src.core.types import MutationKind
    from src.models.genome import Genome
    from src.models.individual import UNSCORED, Individual, Lineage

    def factory(uid, descriptor=None, success=False, novelty=UNSCORED, genes=None):
        touch_point = None
        if success:
            touch_point = (0.04, 0.0)
            if descriptor is None:
                descriptor = make_descriptor(touch=(0.5, 0.1))
        return Individual(
            uid=uid,
            genome=Genome(tuple(genes) if genes is not None else (0.0,) * 10),
            descriptor=descriptor if descriptor is not None else make_descriptor(),
            success=success,
            lineage=Lineage(0, MutationKind.INIT),
            touch_point=touch_point,
            novelty=tuple(novelty),
        )

    return factory


@pytest.fixture
def tiny_run_config():
    """Execução curta: μ=6, λ=3, 24 rollouts, episódios de 40 passos."""
    from src.models.run_config import EnvConfig, RunConfig

    return RunConfig(
        seed=7,
        budget=24,
        mu=6,
        lambda_=3,
        g_i=2,
        g_r=2,
        n_a=2,
        k=3,
        env=EnvConfig(episode_length=40),
    )


@pytest.fixture
def tiny_settings(tmp_path: Path) -> Path:
    """Arquivo JSON de configuração para testes da CLI (execução curta)."""
    import json

    path = tmp_path / "tiny.json"
    path.write_text(json.dumps({
        "logging": {"level": "WARNING"},
        "run": {"budget": 15},
        "algorithm": {"mu": 6, "lambda": 3, "g_i": 2, "g_r": 2, "n_a": 2, "k": 3},
        "env": {"T": 30},
    }), encoding="utf-8")
    return path
