"""Burst-based streaming graph generator over a sliding-window computational graph.

Each time step creates a random batch of brand-new isolated edges that share a
timestamp, then wires a random subset of them into the recent graph: a
strength-proportional pick seeds an alternating preferential walk, and every
walk vertex contributes a small burst of edges toward the new endpoints
(direct link, one uniform shortcut, and probabilistic neighborhood copying).
Copied and shortcut edges reuse older vertex timestamps, which is what puts
out-of-order records into the emitted stream. A sliding window prunes stale
edges from the computational graph so new connections stay recency-biased;
the emitted stream itself is append-only.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from random import Random
from typing import Callable, Iterable, Sequence

from .core import (
    BipartiteGraph,
    I_SIDE,
    J_SIDE,
    Sgr,
    Snapshot,
    StreamLog,
    WEIGHT_MAX,
    WEIGHT_MIN,
)

SLIDE_LITERAL = "literal"
SLIDE_TEXTUAL = "textual"

CHECKPOINT_EVERY = 100_000


class GeneratorStarvedError(RuntimeError):
    """No vertices left in the computational graph; reseed from an initial snapshot."""


@dataclass
class SGrowConfig:
    """Generator knobs.

    rho: probability of shortcut and copy edges (burstiness / assortativity trade-off).
    M: exclusive upper bound on the per-step batch size.
    beta: window slide amount and pruning period.
    l_min, l_max: bounds for the random walk hop count.
    copy_step_enabled: disable to produce low-burstiness streams.
    slide_mode: "literal" advances the window border every step and prunes
        every beta steps; "textual" advances and prunes together every beta steps.
    """

    rho: float = 0.3
    M: int = 50
    beta: int = 5
    l_min: int = 1
    l_max: int = 2
    copy_step_enabled: bool = True
    target_sgrs: int = 1_000_000
    seed: int = 0
    slide_mode: str = SLIDE_LITERAL

    def __post_init__(self):
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must be in [0,1]")
        if self.M < 1:
            raise ValueError("M must be >= 1")
        if self.beta < 1:
            raise ValueError("beta must be >= 1")
        if not 1 <= self.l_min <= self.l_max:
            raise ValueError("need 1 <= l_min <= l_max")
        if self.target_sgrs < 1:
            raise ValueError("target_sgrs must be positive")
        if self.slide_mode not in (SLIDE_LITERAL, SLIDE_TEXTUAL):
            raise ValueError(f"unknown slide_mode {self.slide_mode!r}")


def timestamp_gap(w: int) -> int:
    """Timestamp jump after a burst whose last edge has weight w: low weights open gaps."""
    if not WEIGHT_MIN <= w <= WEIGHT_MAX:
        raise ValueError(f"weight {w} outside [{WEIGHT_MIN},{WEIGHT_MAX}]")
    return abs((w - 5) * (w - 4) * (w - 3)) // 2


def sps(candidates: Sequence[tuple[int, int]], rng: Random) -> int:
    """Pick one id with probability proportional to its (integer) strength.

    All-zero strengths fall back to a uniform pick. Selection uses a single
    integer draw so it replays identically across sampler implementations.
    """
    if not candidates:
        raise ValueError("sps needs at least one candidate")
    total = 0
    for _vid, s in candidates:
        if s < 0:
            raise ValueError("strengths must be non-negative")
        total += s
    if total == 0:
        return candidates[rng.randrange(len(candidates))][0]
    r = rng.randrange(total)
    acc = 0
    for vid, s in candidates:
        acc += s
        if r < acc:
            return vid
    raise AssertionError("unreachable: r < total")


class StrengthFenwick:
    """Prefix-sum tree over vertex ids for O(log n) strength-proportional draws.

    Selection agrees draw-for-draw with :func:`sps` over id-sorted candidates.
    """

    __slots__ = ("_cap", "_tree", "_weights", "total")

    def __init__(self, capacity: int = 1024):
        cap = 1
        while cap < capacity:
            cap <<= 1
        self._cap = cap
        self._tree = [0] * (cap + 1)
        self._weights = [0] * cap
        self.total = 0

    def _grow(self, min_cap: int) -> None:
        cap = self._cap
        while cap < min_cap:
            cap <<= 1
        weights = self._weights + [0] * (cap - self._cap)
        tree = [0] + weights[:]
        for pos in range(1, cap + 1):
            parent = pos + (pos & -pos)
            if parent <= cap:
                tree[parent] += tree[pos]
        self._cap = cap
        self._weights = weights
        self._tree = tree

    def add(self, idx: int, delta: int) -> None:
        if delta == 0:
            return
        if idx >= self._cap:
            self._grow(idx + 1)
        self._weights[idx] += delta
        self.total += delta
        pos = idx + 1
        tree = self._tree
        cap = self._cap
        while pos <= cap:
            tree[pos] += delta
            pos += pos & -pos

    def weight(self, idx: int) -> int:
        return self._weights[idx] if idx < self._cap else 0

    def sample(self, r: int) -> int:
        """Smallest id whose inclusive prefix sum exceeds r (0 <= r < total)."""
        pos = 0
        rem = r
        bitmask = self._cap
        tree = self._tree
        cap = self._cap
        while bitmask:
            nxt = pos + bitmask
            if nxt <= cap and tree[nxt] <= rem:
                rem -= tree[nxt]
                pos = nxt
            bitmask >>= 1
        return pos


def prw(
    graph: BipartiteGraph,
    starter: int,
    starter_is_i: bool,
    length: int,
    rng: Random,
) -> tuple[list[int], list[int]]:
    """Alternating-partition walk whose hops are strength-preferential neighbor picks.

    Returns the unique i-ids and j-ids visited (starter excluded), in first-visit
    order. Revisits consume a hop without growing the sets; a neighbor-less
    vertex ends the walk early.
    """
    vertices = graph.i_vertices if starter_is_i else graph.j_vertices
    if starter not in vertices:
        raise ValueError(f"walk starter {starter} not in graph")
    if length < 0:
        raise ValueError("length must be non-negative")
    walk_i: dict[int, None] = {}
    walk_j: dict[int, None] = {}
    cur = starter
    cur_is_i = starter_is_i
    for _ in range(length):
        if cur_is_i:
            nbrs = graph.j_neighbors.get(cur)
            if not nbrs:
                break
            vstates = graph.j_vertices
            nxt = sps([(v, vstates[v].strength) for v in nbrs], rng)
            walk_j[nxt] = None
        else:
            nbrs = graph.i_neighbors.get(cur)
            if not nbrs:
                break
            vstates = graph.i_vertices
            nxt = sps([(v, vstates[v].strength) for v in nbrs], rng)
            walk_i[nxt] = None
        cur = nxt
        cur_is_i = not cur_is_i
    return list(walk_i), list(walk_j)


class GeneratorState:
    """Mutable generator state: windowed graph, output stream, clocks, RNG."""

    def __init__(self, g0: Snapshot, config: SGrowConfig):
        if not g0.edges:
            raise ValueError("initial snapshot must contain at least one record")
        self.graph = BipartiteGraph()
        self.stream = StreamLog()
        self.rng = Random(config.seed)
        self.t = 0
        self.tau = g0.edges[-1].timestamp + 1
        self.window_begin = g0.edges[0].timestamp
        self.i_count = 0
        self.j_count = 0
        self._i_ids: list[int] = []
        self._j_ids: list[int] = []
        self._i_pos: dict[int, int] = {}
        self._j_pos: dict[int, int] = {}
        self._fenwick = StrengthFenwick()
        self._heap: list[tuple[int, int, int]] = []
        for sgr in g0.edges:
            self.stream.append(sgr)
            self._apply(sgr)
        self.i_count = max(self._i_ids) + 1 if self._i_ids else 0
        self.j_count = max(self._j_ids) + 1 if self._j_ids else 0

    # -- bookkeeping shared by every mutation ------------------------------

    def _register_i(self, vid: int) -> None:
        self._i_pos[vid] = len(self._i_ids)
        self._i_ids.append(vid)

    def _register_j(self, vid: int) -> None:
        self._j_pos[vid] = len(self._j_ids)
        self._j_ids.append(vid)

    def _unregister(self, ids: list[int], pos: dict[int, int], vid: int) -> None:
        at = pos.pop(vid)
        last = ids.pop()
        if last != vid:
            ids[at] = last
            pos[last] = at

    def _apply(self, sgr: Sgr) -> None:
        self.graph.apply_add(sgr)
        if sgr.i_id not in self._i_pos:
            self._register_i(sgr.i_id)
        if sgr.j_id not in self._j_pos:
            self._register_j(sgr.j_id)
        self._fenwick.add(sgr.j_id, sgr.weight)
        stored_ts = self.graph.edge_attrs[(sgr.i_id, sgr.j_id)][1]
        heapq.heappush(self._heap, (stored_ts, sgr.i_id, sgr.j_id))

    def emit(self, sgr: Sgr) -> Sgr:
        self.stream.append(sgr)
        self._apply(sgr)
        return sgr

    def _remove_edge(self, i_id: int, j_id: int) -> None:
        attrs = self.graph.apply_remove(i_id, j_id)
        if attrs is not None:
            self._fenwick.add(j_id, -attrs[0])

    def _prune_vertex(self, partition: str, vid: int) -> None:
        removed = self.graph.remove_vertex(partition, vid)
        for _i, j, acc, _ts in removed:
            self._fenwick.add(j, -acc)
        if partition == I_SIDE:
            self._unregister(self._i_ids, self._i_pos, vid)
        else:
            self._unregister(self._j_ids, self._j_pos, vid)

    def _expire_window(self) -> None:
        heap = self._heap
        attrs = self.graph.edge_attrs
        wb = self.window_begin
        while heap and heap[0][0] < wb:
            _ts, i, j = heapq.heappop(heap)
            live = attrs.get((i, j))
            if live is not None and live[1] < wb:
                self._remove_edge(i, j)

    # -- random pools -------------------------------------------------------

    def sps_all_j(self) -> int:
        """Strength-proportional pick over every j-vertex in the graph."""
        if not self._j_ids:
            raise GeneratorStarvedError(
                "computational graph has no j-vertices; reseed from an initial snapshot"
            )
        total = self._fenwick.total
        if total > 0:
            return self._fenwick.sample(self.rng.randrange(total))
        ordered = sorted(self._j_ids)
        return ordered[self.rng.randrange(len(ordered))]

    def uniform_i(self) -> int:
        return self._i_ids[self.rng.randrange(len(self._i_ids))]

    def uniform_j(self) -> int:
        return self._j_ids[self.rng.randrange(len(self._j_ids))]


def add_burst(
    state: GeneratorState,
    v_i: int,
    v_j: int,
    walk: Iterable[int],
    rho: float,
    *,
    walk_is_i: bool = True,
    copy_step_enabled: bool = True,
) -> list[Sgr]:
    """Connect one batch edge (v_i, v_j) to the graph through walk vertices.

    Per walk vertex u: (1) an edge between u and the opposite-side new vertex,
    stamped with the new vertex's timestamp; (2) with probability rho a
    shortcut from u to a uniformly chosen existing vertex, stamped with the
    older of the two first-seen timestamps; (3) with probability rho per
    neighbor, u's pre-existing neighborhood copied onto the same-side new
    vertex, each copy stamped with the neighbor's first-seen timestamp.
    Steps 2 and 3 reuse old timestamps, producing out-of-order records.
    """
    g = state.graph
    rng = state.rng
    emitted: list[Sgr] = []
    if walk_is_i:
        anchor_ts = g.j_vertices[v_j].birth_timestamp
        for u in walk:
            copy_targets = list(g.j_neighbors.get(u, ())) if copy_step_enabled else ()
            w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
            emitted.append(state.emit(Sgr(u, v_j, w, anchor_ts)))
            if rng.random() < rho:
                z = state.uniform_j()
                w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
                ts = min(
                    g.i_vertices[u].birth_timestamp, g.j_vertices[z].birth_timestamp
                )
                emitted.append(state.emit(Sgr(u, z, w, ts)))
            for n in copy_targets:
                if rng.random() < rho:
                    w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
                    emitted.append(
                        state.emit(Sgr(v_i, n, w, g.j_vertices[n].birth_timestamp))
                    )
    else:
        anchor_ts = g.i_vertices[v_i].birth_timestamp
        for u in walk:
            copy_targets = list(g.i_neighbors.get(u, ())) if copy_step_enabled else ()
            w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
            emitted.append(state.emit(Sgr(v_i, u, w, anchor_ts)))
            if rng.random() < rho:
                z = state.uniform_i()
                w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
                ts = min(
                    g.j_vertices[u].birth_timestamp, g.i_vertices[z].birth_timestamp
                )
                emitted.append(state.emit(Sgr(z, u, w, ts)))
            for n in copy_targets:
                if rng.random() < rho:
                    w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
                    emitted.append(
                        state.emit(Sgr(n, v_j, w, g.i_vertices[n].birth_timestamp))
                    )
    return emitted


def step(state: GeneratorState, config: SGrowConfig) -> list[Sgr]:
    """One generation step; returns the records that survived into the stream."""
    rng = state.rng
    g = state.graph
    state.t += 1
    start_len = len(state.stream)
    m = rng.randrange(config.M)
    batch: list[Sgr] = []
    for _ in range(m):
        w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
        i_id = state.i_count
        state.i_count += 1
        j_id = state.j_count
        state.j_count += 1
        sgr = Sgr(i_id, j_id, w, state.tau)
        state.emit(sgr)
        batch.append(sgr)
    deleted = 0
    for l, sgr_l in enumerate(batch):
        omega = rng.randint(-1, 5)
        if omega == -1:
            state.stream.delete_at(start_len + l - deleted)
            deleted += 1
            state._remove_edge(sgr_l.i_id, sgr_l.j_id)
        elif omega == 0:
            continue
        else:
            u_j0 = state.sps_all_j()
            length = rng.randint(config.l_min, config.l_max)
            walk_i, walk_j = prw(g, u_j0, False, length, rng)
            first = add_burst(
                state, sgr_l.i_id, sgr_l.j_id, walk_i, config.rho,
                walk_is_i=True, copy_step_enabled=config.copy_step_enabled,
            )
            second = add_burst(
                state, sgr_l.i_id, sgr_l.j_id, walk_j, config.rho,
                walk_is_i=False, copy_step_enabled=config.copy_step_enabled,
            )
            last = second[-1] if second else (first[-1] if first else None)
            if last is not None:
                state.tau += timestamp_gap(last.weight)
    # batch vertices that failed to reach two neighbors leave the graph
    # (their records stay in the stream); eligibility is judged before any
    # of them is removed
    flagged: list[tuple[str, int]] = []
    for sgr_b in batch:
        if sgr_b.i_id in g.i_vertices and g.degree_i(sgr_b.i_id) < 2:
            flagged.append((I_SIDE, sgr_b.i_id))
        if sgr_b.j_id in g.j_vertices and g.degree_j(sgr_b.j_id) < 2:
            flagged.append((J_SIDE, sgr_b.j_id))
    for partition, vid in flagged:
        state._prune_vertex(partition, vid)
    state.tau += 1
    if config.slide_mode == SLIDE_LITERAL:
        state.window_begin += config.beta
        if state.t == config.beta:
            state._expire_window()
            state.t = 0
    else:
        if state.t == config.beta:
            state.window_begin += config.beta
            state._expire_window()
            state.t = 0
    return list(state.stream.records[start_len:])


def run_until(
    state: GeneratorState,
    config: SGrowConfig,
    target_sgrs: int,
    on_checkpoint: Callable[[int, float], None] | None = None,
) -> None:
    """Step until the stream holds at least target_sgrs records."""
    start = time.perf_counter()
    mark = (len(state.stream) // CHECKPOINT_EVERY + 1) * CHECKPOINT_EVERY
    while len(state.stream) < target_sgrs:
        step(state, config)
        if on_checkpoint is not None:
            n = len(state.stream)
            while mark <= n:
                on_checkpoint(mark, time.perf_counter() - start)
                mark += CHECKPOINT_EVERY


def generate(
    g0: Snapshot,
    config: SGrowConfig,
    on_checkpoint: Callable[[int, float], None] | None = None,
) -> StreamLog:
    """Grow a stream from the initial snapshot until target_sgrs records exist.

    Deterministic for a fixed (g0, config) pair: the stream starts with g0's
    records and every random decision comes from one seeded RNG.
    """
    state = GeneratorState(g0, config)
    run_until(state, config, config.target_sgrs, on_checkpoint)
    return state.stream
