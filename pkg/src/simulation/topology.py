"""Seeded generators for processor-interconnection topologies.

Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64), so a
(spec, seed) pair always yields the same edge set.
"""

import logging
import math

import numpy as np

from analysis.measurements import graph_summary
from core.exceptions import TopologyError
from graphs.spatial_graph import SpatialGraph
from models.simulation import TopologyModel, TopologySpec, TopologyStats, topology_problems

logger = logging.getLogger(__name__)

MAX_RETRIES = 100


def _random_edges(n: int, p: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(len(rows)) < p
    return list(zip(rows[keep].tolist(), cols[keep].tolist(), strict=True))


def _small_world_edges(
    n: int, k: int, p_rew: float, rng: np.random.Generator
) -> list[tuple[int, int]]:
    adj: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for j in range(1, k // 2 + 1):
            v = (u + j) % n
            adj[u].add(v)
            adj[v].add(u)

    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            if v not in adj[u] or rng.random() >= p_rew:
                continue
            choices = [w for w in range(n) if w != u and w not in adj[u]]
            if not choices:
                continue
            w = choices[int(rng.integers(len(choices)))]
            adj[u].discard(v)
            adj[v].discard(u)
            adj[u].add(w)
            adj[w].add(u)

    return [(u, v) for u in range(n) for v in sorted(adj[u]) if u < v]


def _scale_free_edges(n: int, m: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    # seed: clique on m + 1 nodes, so every newcomer finds m distinct targets
    edges = [(u, v) for u in range(m + 1) for v in range(u + 1, m + 1)]
    degree = np.zeros(n)
    degree[: m + 1] = m
    for t in range(m + 1, n):
        weights = degree[:t] / degree[:t].sum()
        targets = rng.choice(t, size=m, replace=False, p=weights)
        for v in sorted(targets.tolist()):
            edges.append((v, t))
            degree[v] += 1
        degree[t] = m
    return edges


def _lattice_graph(rows: int, cols: int) -> SpatialGraph:
    edges: list[tuple[int, int, float]] = []
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            if c + 1 < cols:
                edges.append((u, u + 1, 1.0))
            if r + 1 < rows:
                edges.append((u, u + cols, 1.0))
    positions = [(float(c), float(r)) for r in range(rows) for c in range(cols)]
    return SpatialGraph.from_edges(rows * cols, edges, positions=positions)


def generate_topology(spec: TopologySpec) -> SpatialGraph:
    problems = topology_problems(spec)
    if problems:
        raise TopologyError("invalid topology parameters", details={"problems": problems})

    rng = np.random.default_rng(spec.seed)
    n = spec.n
    match spec.model:
        case TopologyModel.RANDOM:
            pairs = _random_edges(n, spec.p or 0.0, rng)
        case TopologyModel.SMALL_WORLD:
            pairs = _small_world_edges(n, spec.k or 0, spec.p_rew or 0.0, rng)
        case TopologyModel.SCALE_FREE:
            pairs = _scale_free_edges(n, spec.m or 0, rng)
        case TopologyModel.LATTICE:
            graph = _lattice_graph(spec.rows or 0, spec.cols or 0)
            logger.debug("Generated %r", graph)
            return graph.freeze()

    graph = SpatialGraph.from_edges(n, ((u, v, 1.0) for u, v in pairs))
    logger.debug("Generated %s topology %r (seed=%d)", spec.model, graph, spec.seed)
    return graph.freeze()


def generate_connected_topology(
    spec: TopologySpec, retry: bool = False
) -> tuple[SpatialGraph, TopologySpec]:
    """Generate ``spec``; with ``retry``, bump the seed until the result is connected.

    Returns the graph together with the TopologySpec that produced it.
    """
    if not retry:
        return generate_topology(spec), spec
    for attempt in range(MAX_RETRIES):
        candidate = spec.model_copy(update={"seed": spec.seed + attempt})
        graph = generate_topology(candidate)
        if graph.is_connected():
            if attempt:
                logger.info("Connected topology found at seed %d", candidate.seed)
            return graph, candidate
    raise TopologyError(
        "no connected topology within the retry budget",
        details={"model": str(spec.model), "seed": spec.seed, "attempts": MAX_RETRIES},
    )


def lattice_shape(n: int) -> tuple[int, int]:
    """Most square rows x cols factorisation of n (rows <= cols)."""
    rows = max(d for d in range(1, math.isqrt(n) + 1) if n % d == 0)
    return rows, n // rows


def describe_topology(g: SpatialGraph) -> TopologyStats:
    return graph_summary(g)
