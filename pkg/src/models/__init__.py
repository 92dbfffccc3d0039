"""
Módulo de modelos compartilhados.

Contém a classe base `BaseModel` e os tipos do núcleo do algoritmo
(genoma, descritor, trajetória, indivíduo, arquivos e configuração).
Modelos específicos de cada feature devem ficar dentro de
`src/features/<feature>/models/`.
"""

from src.models.archives import NoveltyArchive, SuccessArchive
from src.models.base import BaseModel
from src.models.descriptor import BehaviorDescriptor
from src.models.genome import Genome, genome_clamp
from src.models.individual import Individual, Lineage
from src.models.run_config import EnvConfig, RunConfig, validate_config
from src.models.trajectory import Trajectory

__all__ = [
    "BaseModel",
    "BehaviorDescriptor",
    "EnvConfig",
    "Genome",
    "Individual",
    "Lineage",
    "NoveltyArchive",
    "RunConfig",
    "SuccessArchive",
    "Trajectory",
    "genome_clamp",
    "validate_config",
]
