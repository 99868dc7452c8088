"""Baseline synthetic stream generators: one-level forest fire and SPA.

Both grow a directed graph one vertex per step and map it to a bipartite
stream: the source role of a vertex is its i-identity, the target role its
j-identity. Every edge gets a uniform weight in [1,5] and the step index as
timestamp, so the streams arrive in timestamp order.
"""

from __future__ import annotations

from dataclasses import dataclass
from random import Random

import numpy as np

from .core import Sgr, StreamLog, WEIGHT_MAX, WEIGHT_MIN


@dataclass
class FFConfig:
    p: float  # forward-burning probability
    p_b: float  # backward-burning probability
    n_steps: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0 or not 0.0 <= self.p_b <= 1.0:
            raise ValueError("burning probabilities must be in [0,1]")
        if self.n_steps < 1:
            raise ValueError("n_steps must be positive")


@dataclass
class SPAConfig:
    m: int  # edges per new vertex
    n_steps: int
    seed: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        if self.n_steps < 1:
            raise ValueError("n_steps must be positive")


def ff_generate(config: FFConfig) -> StreamLog:
    """One-level forest fire over a two-vertex seed.

    Each step a new vertex links to a uniformly chosen ambassador, then with
    probability p to one uniformly chosen out-neighbor of the ambassador and
    with probability p_b to one uniformly chosen in-neighbor. Burning stops
    at the ambassador's immediate neighborhood; there is no recursion.
    """
    rng = Random(config.seed)
    out_nbrs: list[list[int]] = [[], []]
    in_nbrs: list[list[int]] = [[], []]
    stream = StreamLog()

    def emit(src: int, dst: int, ts: int) -> None:
        w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
        stream.append(Sgr(src, dst, w, ts))
        out_nbrs[src].append(dst)
        in_nbrs[dst].append(src)

    emit(0, 1, 0)  # two-vertex seed
    for step in range(1, config.n_steps + 1):
        v = len(out_nbrs)
        out_nbrs.append([])
        in_nbrs.append([])
        ambassador = rng.randrange(v)
        outs = list(out_nbrs[ambassador])
        ins = list(in_nbrs[ambassador])
        targets = [ambassador]
        if outs and rng.random() < config.p:
            x = outs[rng.randrange(len(outs))]
            if x not in targets:
                targets.append(x)
        if ins and rng.random() < config.p_b:
            x = ins[rng.randrange(len(ins))]
            if x not in targets:
                targets.append(x)
        for t in targets:
            emit(v, t, step)
    return stream


def spa_generate(config: SPAConfig) -> StreamLog:
    """Strength-preferential attachment toward a fixed destination pool.

    The seed graph is m disjoint unit-weight edges; the destination pool is
    the m seed target vertices. Each step a new source vertex links to m
    distinct destinations drawn sequentially with probability proportional
    to destination strength, renormalizing after each draw (without
    replacement). Destination strengths accumulate the random edge weights,
    so popular targets keep getting likelier until the pool is exhausted
    each step.
    """
    rng = Random(config.seed)
    m = config.m
    strengths = np.zeros(m, dtype=np.float64)  # j-side strengths of the pool
    stream = StreamLog()
    for k in range(m):
        stream.append(Sgr(k, k, 1, 0))
        strengths[k] += 1
    next_source = m
    for step in range(1, config.n_steps + 1):
        v = next_source
        next_source += 1
        pool = strengths.copy()
        chosen = []
        for _ in range(m):
            total = float(pool.sum())
            if total > 0:
                r = rng.random() * total
                idx = int(np.searchsorted(np.cumsum(pool), r, side="right"))
                idx = min(idx, m - 1)
            else:  # defensive: unit seed weights keep this branch unreachable
                candidates = [c for c in range(m) if c not in chosen]
                idx = candidates[rng.randrange(len(candidates))]
            chosen.append(idx)
            pool[idx] = 0.0
        for target in chosen:
            w = rng.randint(WEIGHT_MIN, WEIGHT_MAX)
            stream.append(Sgr(v, target, w, step))
            strengths[target] += w
    return stream
