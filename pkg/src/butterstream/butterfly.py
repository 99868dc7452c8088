"""Exact butterfly (2,2-biclique) counting, butterfly-edge extraction, wedges.

All functions are read-only over a :class:`~butterstream.core.BipartiteGraph`
and count on the deduplicated simple graph: duplicate record arrivals grow
strengths but never add parallel edges, and a butterfly needs four distinct
vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import _kernels
from .core import BipartiteGraph

BRUTE_FORCE_MAX_SIDE = 64


@dataclass
class ButterflyReport:
    """Butterfly census of one graph: count plus the edges and vertices involved."""

    count: int
    butterfly_edges: set[tuple[int, int]] = field(repr=False)
    butterfly_i_vertices: set[int] = field(repr=False)
    butterfly_j_vertices: set[int] = field(repr=False)


def count_butterflies(graph: BipartiteGraph) -> int:
    """Exact number of distinct 2,2-bicliques."""
    ii, jj = graph.edge_arrays()
    return _kernels.count_butterflies_arrays(ii, jj)


def butterfly_edge_set(graph: BipartiteGraph) -> set[tuple[int, int]]:
    """Edges that belong to at least one butterfly."""
    ii, jj = graph.edge_arrays()
    mask = _kernels.butterfly_edge_mask_arrays(ii, jj)
    return {(int(i), int(j)) for i, j in zip(ii[mask], jj[mask])}


def butterfly_report(graph: BipartiteGraph) -> ButterflyReport:
    ii, jj = graph.edge_arrays()
    count, mask = _kernels.count_and_mask_arrays(ii, jj)
    bi = ii[mask]
    bj = jj[mask]
    return ButterflyReport(
        count=count,
        butterfly_edges={(int(i), int(j)) for i, j in zip(bi, bj)},
        butterfly_i_vertices={int(v) for v in np.unique(bi)},
        butterfly_j_vertices={int(v) for v in np.unique(bj)},
    )


def brute_force_count(graph: BipartiteGraph) -> int:
    """Independent oracle: enumerate i-pairs x j-pairs and check all four edges.

    Guarded to small graphs; intended for tests and verification only.
    """
    n_i = len(graph.i_vertices)
    n_j = len(graph.j_vertices)
    if n_i > BRUTE_FORCE_MAX_SIDE or n_j > BRUTE_FORCE_MAX_SIDE:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_MAX_SIDE} vertices per side "
            f"(got {n_i}+{n_j})"
        )
    edges = set(graph.edge_attrs)
    i_ids = sorted(graph.i_vertices)
    j_ids = sorted(graph.j_vertices)
    total = 0
    for i1, i2 in combinations(i_ids, 2):
        for j1, j2 in combinations(j_ids, 2):
            if (
                (i1, j1) in edges
                and (i1, j2) in edges
                and (i2, j1) in edges
                and (i2, j2) in edges
            ):
                total += 1
    return total


def brute_force_edge_set(graph: BipartiteGraph) -> set[tuple[int, int]]:
    """Oracle counterpart of :func:`butterfly_edge_set`, by direct membership test."""
    n_i = len(graph.i_vertices)
    n_j = len(graph.j_vertices)
    if n_i > BRUTE_FORCE_MAX_SIDE or n_j > BRUTE_FORCE_MAX_SIDE:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_MAX_SIDE} vertices per side "
            f"(got {n_i}+{n_j})"
        )
    edges = set(graph.edge_attrs)
    out = set()
    for (i, j) in edges:
        found = False
        for i2 in graph.i_vertices:
            if i2 == i or (i2, j) not in edges:
                continue
            for j2 in graph.j_vertices:
                if j2 != j and (i, j2) in edges and (i2, j2) in edges:
                    found = True
                    break
            if found:
                break
        if found:
            out.add((i, j))
    return out


def wedge_count(graph: BipartiteGraph) -> int:
    """Number of two-paths: sum over all vertices of C(degree, 2)."""
    total = 0
    for nbrs in graph.j_neighbors.values():
        d = len(nbrs)
        total += d * (d - 1) // 2
    for nbrs in graph.i_neighbors.values():
        d = len(nbrs)
        total += d * (d - 1) // 2
    return total
