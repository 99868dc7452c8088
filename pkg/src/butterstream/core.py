"""Core domain types: stream records, bipartite graphs with strengths, bursts, snapshots.

A stream is an arrival-ordered log of weighted, timestamped bipartite edges.
Timestamps may arrive out of order; bursts are *maximal runs* of records that
share a timestamp, and a snapshot is the graph induced by the prefix of the
log covering the first ``n_bursts`` bursts.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

import numpy as np

I_SIDE = "i"
J_SIDE = "j"

WEIGHT_MIN = 1
WEIGHT_MAX = 5


class MissingEdgeWarning(UserWarning):
    """Raised as a warning when removing an edge that is not in the graph."""


class Sgr(NamedTuple):
    """One streaming graph record: a weighted, timestamped bipartite edge arrival."""

    i_id: int
    j_id: int
    weight: int
    timestamp: int


class StreamLog:
    """Arrival-ordered sequence of :class:`Sgr` records.

    Arrival order is preserved as-is; timestamps are allowed to be
    non-monotonic (late arrivals are legal). ``delete_at`` exists for
    generators that retract a record from a pending batch before it is
    considered emitted.
    """

    __slots__ = ("records", "i_id_map", "j_id_map")

    def __init__(self, records: Iterable[Sgr] | None = None):
        self.records: list[Sgr] = list(records) if records is not None else []
        # Populated by stream_io.read_stream: external id -> dense internal id.
        self.i_id_map: dict[int, int] | None = None
        self.j_id_map: dict[int, int] | None = None

    def append(self, sgr: Sgr) -> None:
        self.records.append(sgr)

    def delete_at(self, index: int) -> Sgr:
        return self.records.pop(index)

    def timestamps(self) -> np.ndarray:
        n = len(self.records)
        return np.fromiter((r.timestamp for r in self.records), dtype=np.int64, count=n)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[Sgr]:
        return iter(self.records)

    def __getitem__(self, index):
        return self.records[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StreamLog):
            return NotImplemented
        return self.records == other.records

    def __repr__(self) -> str:
        return f"StreamLog(n={len(self.records)})"


@dataclass
class VertexState:
    """Per-vertex bookkeeping: partition, accumulated strength, first-seen timestamp."""

    id: int
    partition: str  # I_SIDE or J_SIDE
    strength: int = 0
    birth_timestamp: int = 0


class BipartiteGraph:
    """Simple bipartite adjacency with per-vertex strengths and per-edge attributes.

    Duplicate (i, j) arrivals do not add parallel edges: the stored edge
    accumulates the new weight, its timestamp refreshes to the newest arrival,
    and both endpoint strengths grow by the arrival weight. Strength is thus
    the sum of *accumulated* weights of a vertex's live edges.
    """

    __slots__ = ("j_neighbors", "i_neighbors", "i_vertices", "j_vertices", "edge_attrs")

    def __init__(self):
        # Insertion-ordered neighbor sets (dict keys) keep iteration deterministic.
        self.j_neighbors: dict[int, dict[int, None]] = {}
        self.i_neighbors: dict[int, dict[int, None]] = {}
        self.i_vertices: dict[int, VertexState] = {}
        self.j_vertices: dict[int, VertexState] = {}
        self.edge_attrs: dict[tuple[int, int], tuple[int, int]] = {}

    # -- mutation ---------------------------------------------------------

    def apply_add(self, sgr: Sgr) -> bool:
        """Fold one record into the graph. Returns True when a new edge was created."""
        i, j, w, ts = sgr
        if not WEIGHT_MIN <= w <= WEIGHT_MAX:
            raise ValueError(f"weight {w} outside [{WEIGHT_MIN},{WEIGHT_MAX}]")
        vi = self.i_vertices.get(i)
        if vi is None:
            vi = self.i_vertices[i] = VertexState(i, I_SIDE, 0, ts)
        vj = self.j_vertices.get(j)
        if vj is None:
            vj = self.j_vertices[j] = VertexState(j, J_SIDE, 0, ts)
        key = (i, j)
        attrs = self.edge_attrs.get(key)
        if attrs is None:
            self.edge_attrs[key] = (w, ts)
            self.j_neighbors.setdefault(i, {})[j] = None
            self.i_neighbors.setdefault(j, {})[i] = None
            new_edge = True
        else:
            acc, old_ts = attrs
            self.edge_attrs[key] = (acc + w, old_ts if old_ts >= ts else ts)
            new_edge = False
        vi.strength += w
        vj.strength += w
        return new_edge

    def apply_remove(self, i_id: int, j_id: int) -> tuple[int, int] | None:
        """Delete edge (i, j); strengths drop by its accumulated weight.

        A missing edge is a warned no-op (returns None) so that replaying a
        log with retractions stays robust. Endpoints left with no edges remain
        as isolated vertex states.
        """
        attrs = self.edge_attrs.pop((i_id, j_id), None)
        if attrs is None:
            warnings.warn(
                f"edge ({i_id},{j_id}) not present; removal skipped", MissingEdgeWarning,
                stacklevel=2,
            )
            return None
        acc, _ts = attrs
        del self.j_neighbors[i_id][j_id]
        del self.i_neighbors[j_id][i_id]
        self.i_vertices[i_id].strength -= acc
        self.j_vertices[j_id].strength -= acc
        return attrs

    def remove_vertex(self, partition: str, vid: int) -> list[tuple[int, int, int, int]]:
        """Drop a vertex and its incident edges; returns [(i, j, acc_weight, ts), ...]."""
        removed = []
        if partition == I_SIDE:
            if vid not in self.i_vertices:
                raise KeyError(f"i-vertex {vid} not in graph")
            for j in list(self.j_neighbors.get(vid, ())):
                attrs = self.apply_remove(vid, j)
                removed.append((vid, j, attrs[0], attrs[1]))
            self.j_neighbors.pop(vid, None)
            del self.i_vertices[vid]
        elif partition == J_SIDE:
            if vid not in self.j_vertices:
                raise KeyError(f"j-vertex {vid} not in graph")
            for i in list(self.i_neighbors.get(vid, ())):
                attrs = self.apply_remove(i, vid)
                removed.append((i, vid, attrs[0], attrs[1]))
            self.i_neighbors.pop(vid, None)
            del self.j_vertices[vid]
        else:
            raise ValueError(f"unknown partition {partition!r}")
        return removed

    # -- queries ----------------------------------------------------------

    def has_edge(self, i_id: int, j_id: int) -> bool:
        return (i_id, j_id) in self.edge_attrs

    def num_edges(self) -> int:
        return len(self.edge_attrs)

    def degree_i(self, i_id: int) -> int:
        return len(self.j_neighbors.get(i_id, ()))

    def degree_j(self, j_id: int) -> int:
        return len(self.i_neighbors.get(j_id, ()))

    def i_strength(self, i_id: int) -> int:
        return self.i_vertices[i_id].strength

    def j_strength(self, j_id: int) -> int:
        return self.j_vertices[j_id].strength

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Deduplicated edges as parallel (i_ids, j_ids) int64 arrays."""
        n = len(self.edge_attrs)
        ii = np.empty(n, dtype=np.int64)
        jj = np.empty(n, dtype=np.int64)
        for pos, (i, j) in enumerate(self.edge_attrs):
            ii[pos] = i
            jj[pos] = j
        return ii, jj

    def recompute_strengths(self) -> tuple[dict[int, int], dict[int, int]]:
        """Strengths recomputed from edge_attrs; used to audit the stored values."""
        si = {vid: 0 for vid in self.i_vertices}
        sj = {vid: 0 for vid in self.j_vertices}
        for (i, j), (acc, _ts) in self.edge_attrs.items():
            si[i] += acc
            sj[j] += acc
        return si, sj


@dataclass(frozen=True)
class Burst:
    """A maximal run of consecutive records sharing one timestamp."""

    timestamp: int
    start_index: int
    length: int

    @property
    def end_index(self) -> int:
        return self.start_index + self.length


@dataclass
class Snapshot:
    """Stream prefix covering the first ``n_bursts`` bursts plus its folded graph."""

    n_bursts: int
    edges: list[Sgr] = field(repr=False)
    graph: BipartiteGraph = field(repr=False)


def apply_add(graph: BipartiteGraph, sgr: Sgr) -> None:
    graph.apply_add(sgr)


def apply_remove(graph: BipartiteGraph, i_id: int, j_id: int) -> None:
    graph.apply_remove(i_id, j_id)


def segment_bursts(stream: StreamLog) -> list[Burst]:
    """Partition the log into maximal same-timestamp runs, in arrival order.

    An out-of-order record always starts a new burst, so bursts of a
    non-monotonic stream may repeat timestamps.
    """
    n = len(stream)
    if n == 0:
        return []
    ts = stream.timestamps()
    boundaries = np.flatnonzero(ts[1:] != ts[:-1]) + 1
    starts = np.concatenate(([0], boundaries, [n]))
    return [
        Burst(timestamp=int(ts[int(s)]), start_index=int(s), length=int(e - s))
        for s, e in zip(starts[:-1], starts[1:])
    ]


def snapshot_at(stream: StreamLog, n_bursts: int) -> Snapshot:
    """Graph snapshot after the first ``n_bursts`` bursts of the stream."""
    bursts = segment_bursts(stream)
    if not 1 <= n_bursts <= len(bursts):
        raise ValueError(f"n_bursts={n_bursts} outside [1, {len(bursts)}]")
    end = bursts[n_bursts - 1].end_index
    edges = stream.records[:end]
    graph = BipartiteGraph()
    for sgr in edges:
        graph.apply_add(sgr)
    return Snapshot(n_bursts=n_bursts, edges=edges, graph=graph)


def full_snapshot(stream: StreamLog) -> Snapshot:
    """Snapshot covering the whole stream."""
    bursts = segment_bursts(stream)
    if not bursts:
        raise ValueError("cannot snapshot an empty stream")
    return snapshot_at(stream, len(bursts))


def sample_timeline(total_bursts: int, k: int) -> list[int]:
    """k equally spaced burst counts, ``floor(total*t/k)`` for t=1..k; last == total."""
    if total_bursts < 1:
        raise ValueError("total_bursts must be positive")
    if not 1 <= k <= total_bursts:
        raise ValueError(f"k={k} outside [1, {total_bursts}]")
    return [(total_bursts * t) // k for t in range(1, k + 1)]
