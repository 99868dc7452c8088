"""Snapshot measurement suite: strength-difference distribution and its summaries.

The central object is the distribution of per-edge strength differences
``delta = |S_i - S_j|`` over butterfly edges, embedded into a four-region
probability vector split at the population mean, mean + std, and mean + 2*std.
The localization factor ``f1 - 0.5`` tracks how much of the mass sits at or
below the mean: positive means edges prefer similar-strength endpoints.
All statistics are population statistics (divide by N).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import BipartiteGraph, Snapshot, StreamLog, sample_timeline, segment_bursts


@dataclass(frozen=True)
class FVector:
    """Probabilities of the four strength-difference regions; components sum to 1."""

    f1: float
    f2: float
    f3: float
    f4: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.f1, self.f2, self.f3, self.f4)


@dataclass(frozen=True)
class MomentStats:
    mean: float
    cv: float
    excess_kurtosis: float
    n: int


@dataclass(frozen=True)
class RatePoint:
    n_bursts: int
    n_edges: int
    butterflies: int
    rate: float


@dataclass(frozen=True)
class RateSeries:
    points: list[RatePoint]
    mean_rate: float
    std_rate: float


def strength_deltas(
    snapshot: Snapshot, edges: Iterable[tuple[int, int]]
) -> list[float]:
    """|S_i - S_j| per edge, strengths read from the snapshot's graph."""
    g = snapshot.graph
    out = []
    for i, j in edges:
        if (i, j) not in g.edge_attrs:
            raise ValueError(f"edge ({i},{j}) not in snapshot graph")
        out.append(float(abs(g.i_vertices[i].strength - g.j_vertices[j].strength)))
    return out


def f_vector(deltas: Sequence[float]) -> FVector:
    """Four-region embedding of the delta distribution (closed upper bounds)."""
    arr = np.asarray(deltas, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("f_vector needs at least one value")
    mu = float(arr.mean())
    sigma = float(arr.std())
    n = arr.size
    c1 = int(np.count_nonzero(arr <= mu))
    c2 = int(np.count_nonzero((arr > mu) & (arr <= mu + sigma)))
    c3 = int(np.count_nonzero((arr > mu + sigma) & (arr <= mu + 2 * sigma)))
    c4 = n - c1 - c2 - c3
    return FVector(c1 / n, c2 / n, c3 / n, c4 / n)


def localization_factor(f: FVector) -> float:
    """f1 - 0.5: 0 is random mixing, +0.5 perfect strength assortativity."""
    return f.f1 - 0.5


def moments(values: Sequence[float]) -> MomentStats:
    """Population mean, CV and excess kurtosis of a sample."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.size < 2:
        raise ValueError("moments need at least two values")
    mean = float(arr.mean())
    sigma = float(arr.std())
    if mean <= 0:
        raise ValueError("cv undefined: mean must be positive")
    if sigma == 0:
        raise ValueError("kurtosis undefined: zero standard deviation")
    m4 = float(np.mean((arr - mean) ** 4))
    return MomentStats(
        mean=mean,
        cv=sigma / mean,
        excess_kurtosis=m4 / sigma**4 - 3.0,
        n=int(arr.size),
    )


def pearson_assortativity(
    snapshot: Snapshot, edges: Iterable[tuple[int, int]]
) -> float:
    """Pearson correlation of (S_i, S_j) over the given edges."""
    g = snapshot.graph
    si = []
    sj = []
    for i, j in edges:
        if (i, j) not in g.edge_attrs:
            raise ValueError(f"edge ({i},{j}) not in snapshot graph")
        si.append(g.i_vertices[i].strength)
        sj.append(g.j_vertices[j].strength)
    if len(si) < 2:
        raise ValueError("pearson assortativity needs at least two edges")
    x = np.asarray(si, dtype=np.float64)
    y = np.asarray(sj, dtype=np.float64)
    if x.std() == 0 or y.std() == 0:
        raise ValueError("correlation undefined: zero variance endpoint strengths")
    return float(np.corrcoef(x, y)[0, 1])


def knn_average_strength(snapshot: Snapshot) -> dict[int, float]:
    """Mean nearest-neighbor strength per strength class, both partitions pooled.

    For every vertex with at least one edge, take the mean strength of its
    neighbors; then average those values over all vertices sharing the same
    strength.
    """
    g = snapshot.graph
    sums: dict[int, float] = {}
    counts: dict[int, int] = {}

    def _absorb(own_strength: int, neighbor_mean: float) -> None:
        sums[own_strength] = sums.get(own_strength, 0.0) + neighbor_mean
        counts[own_strength] = counts.get(own_strength, 0) + 1

    for i, nbrs in g.j_neighbors.items():
        if not nbrs:
            continue
        mean_nbr = sum(g.j_vertices[j].strength for j in nbrs) / len(nbrs)
        _absorb(g.i_vertices[i].strength, mean_nbr)
    for j, nbrs in g.i_neighbors.items():
        if not nbrs:
            continue
        mean_nbr = sum(g.i_vertices[i].strength for i in nbrs) / len(nbrs)
        _absorb(g.j_vertices[j].strength, mean_nbr)
    return {s: sums[s] / counts[s] for s in sums}


def butterfly_rate_series(stream: StreamLog, k: int) -> RateSeries:
    """Butterfly count and per-edge rate at k equally spaced snapshots.

    Snapshots are prefixes of one another, so the graph is folded once,
    pausing at each sampled burst count; butterflies are recounted from
    scratch at each pause.
    """
    bursts = segment_bursts(stream)
    points = sample_timeline(len(bursts), k)
    graph = BipartiteGraph()
    ii: list[int] = []
    jj: list[int] = []
    pos = 0
    out = []
    for nb in points:
        end = bursts[nb - 1].end_index
        for sgr in stream.records[pos:end]:
            if graph.apply_add(sgr):
                ii.append(sgr.i_id)
                jj.append(sgr.j_id)
        pos = end
        n_edges = len(ii)
        count = _kernels.count_butterflies_arrays(
            np.asarray(ii, dtype=np.int64), np.asarray(jj, dtype=np.int64)
        )
        out.append(
            RatePoint(
                n_bursts=nb,
                n_edges=n_edges,
                butterflies=count,
                rate=count / n_edges,
            )
        )
    rates = np.array([p.rate for p in out], dtype=np.float64)
    return RateSeries(points=out, mean_rate=float(rates.mean()), std_rate=float(rates.std()))
