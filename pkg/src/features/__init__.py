"""
Módulo de features.

Cada feature é uma pasta auto-contida que agrupa tudo relacionado
a uma área funcional do toolkit: operadores, controlador (quando
há estado de execução) e, quando necessário, modelos específicos.

Features:

    grasp_env/    ambiente de preensão planar (cinemática, contato, rollout)
    novelty/      descritores comportamentais e novidade k-NN
    variation/    inicialização e mutações (explore, refine, uniforme)
    selection/    seleção de sobreviventes e regeneração
    engine/       laço evolutivo (EvolutionEngine)
    metrics/      cobertura de aproximação/preensão e agregação entre sementes
    reporting/    repertórios, tabelas de métricas, replay e SVG
    registry.py   perfis das estratégias

Para adicionar uma estratégia nova, consulte `docs/04-criando-uma-estrategia.md`.
"""
