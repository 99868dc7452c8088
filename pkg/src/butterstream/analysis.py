"""Snapshot-timeline analysis: one metrics row per sampled burst count.

The stream is folded into a graph once, pausing at each of the k sampled
burst counts (snapshots are prefixes of one another). At each pause the
butterfly census is recomputed from scratch and the strength-difference
measurements are taken over the butterfly edges. Fields that are undefined at
a snapshot (no butterfly edges, zero variance, ...) are reported as NaN.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields

import numpy as np

from . import _kernels
from .core import BipartiteGraph, StreamLog, sample_timeline, segment_bursts

NAN = float("nan")


@dataclass(frozen=True)
class SnapshotRow:
    n_bursts: int
    n_edges: int
    butterflies: int
    rate: float
    f1: float
    f2: float
    f3: float
    f4: float
    r_s: float
    pearson_r: float
    mean_delta: float
    cv_delta: float
    kurtosis_delta: float
    mean_i: float
    cv_i: float
    kurtosis_i: float
    mean_j: float
    cv_j: float
    kurtosis_j: float


COLUMNS = [f.name for f in fields(SnapshotRow)]


@dataclass(frozen=True)
class AnalysisReport:
    rows: list[SnapshotRow]
    avg_rate: float
    std_rate: float


def _strength_array(vertices) -> np.ndarray:
    n = len(vertices)
    ids = np.fromiter(vertices.keys(), dtype=np.int64, count=n)
    vals = np.fromiter((v.strength for v in vertices.values()), dtype=np.int64, count=n)
    arr = np.zeros(int(ids.max()) + 1 if n else 1, dtype=np.int64)
    arr[ids] = vals
    return arr


def _moment_fields(arr: np.ndarray) -> tuple[float, float, float]:
    """(mean, cv, excess kurtosis) with NaN where a quantity is undefined."""
    if arr.size == 0:
        return NAN, NAN, NAN
    mean = float(arr.mean())
    sigma = float(arr.std())
    cv = sigma / mean if mean > 0 else NAN
    if sigma > 0:
        kurt = float(np.mean((arr - mean) ** 4)) / sigma**4 - 3.0
    else:
        kurt = NAN
    return mean, cv, kurt


def _f_fractions(deltas: np.ndarray) -> tuple[float, float, float, float]:
    mu = float(deltas.mean())
    sigma = float(deltas.std())
    n = deltas.size
    c1 = int(np.count_nonzero(deltas <= mu))
    c2 = int(np.count_nonzero((deltas > mu) & (deltas <= mu + sigma)))
    c3 = int(np.count_nonzero((deltas > mu + sigma) & (deltas <= mu + 2 * sigma)))
    c4 = n - c1 - c2 - c3
    return c1 / n, c2 / n, c3 / n, c4 / n


def _snapshot_row(
    n_bursts: int, graph: BipartiteGraph, ii: np.ndarray, jj: np.ndarray
) -> SnapshotRow:
    n_edges = ii.size
    count, mask = _kernels.count_and_mask_arrays(ii, jj)
    rate = count / n_edges if n_edges else NAN
    if not mask.any():
        return SnapshotRow(
            n_bursts, n_edges, count, rate,
            NAN, NAN, NAN, NAN, NAN, NAN,
            NAN, NAN, NAN, NAN, NAN, NAN, NAN, NAN, NAN,
        )
    si = _strength_array(graph.i_vertices)
    sj = _strength_array(graph.j_vertices)
    bi = ii[mask]
    bj = jj[mask]
    s_edge_i = si[bi].astype(np.float64)
    s_edge_j = sj[bj].astype(np.float64)
    deltas = np.abs(s_edge_i - s_edge_j)
    f1, f2, f3, f4 = _f_fractions(deltas)
    r_s = f1 - 0.5
    if bi.size >= 2 and s_edge_i.std() > 0 and s_edge_j.std() > 0:
        pearson = float(np.corrcoef(s_edge_i, s_edge_j)[0, 1])
    else:
        pearson = NAN
    mean_d, cv_d, kurt_d = _moment_fields(deltas)
    mean_i, cv_i, kurt_i = _moment_fields(si[np.unique(bi)].astype(np.float64))
    mean_j, cv_j, kurt_j = _moment_fields(sj[np.unique(bj)].astype(np.float64))
    return SnapshotRow(
        n_bursts, n_edges, count, rate,
        f1, f2, f3, f4, r_s, pearson,
        mean_d, cv_d, kurt_d, mean_i, cv_i, kurt_i, mean_j, cv_j, kurt_j,
    )


def build_report(stream: StreamLog, k: int = 20) -> AnalysisReport:
    bursts = segment_bursts(stream)
    points = sample_timeline(len(bursts), k)
    graph = BipartiteGraph()
    ii: list[int] = []
    jj: list[int] = []
    pos = 0
    rows = []
    for nb in points:
        end = bursts[nb - 1].end_index
        for sgr in stream.records[pos:end]:
            if graph.apply_add(sgr):
                ii.append(sgr.i_id)
                jj.append(sgr.j_id)
        pos = end
        rows.append(
            _snapshot_row(
                nb, graph,
                np.asarray(ii, dtype=np.int64),
                np.asarray(jj, dtype=np.int64),
            )
        )
    rates = np.array([r.rate for r in rows], dtype=np.float64)
    return AnalysisReport(
        rows=rows, avg_rate=float(rates.mean()), std_rate=float(rates.std())
    )


def report_to_csv(report: AnalysisReport, fh, mae: dict[str, float] | None = None) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in report.rows:
        writer.writerow([getattr(row, c) for c in COLUMNS])
    fh.write(f"# avg_rate={report.avg_rate} std_rate={report.std_rate}\n")
    if mae is not None:
        parts = " ".join(f"mae_{k}={v}" for k, v in mae.items())
        fh.write(f"# {parts}\n")


def read_report_csv(path) -> list[dict[str, float]]:
    """Rows of a previously written report CSV (comment lines ignored)."""
    with open(path, "rt", encoding="utf-8", newline="") as fh:
        data_lines = [line for line in fh if not line.startswith("#")]
    reader = csv.DictReader(data_lines)
    out = []
    for rec in reader:
        out.append({k: float(v) for k, v in rec.items()})
    return out


def mae_vs_reference(
    report: AnalysisReport, ref_rows: list[dict[str, float]]
) -> dict[str, float]:
    """Mean absolute error of the localization factor and F elements vs a reference.

    r_s differs from f1 by a constant, so they share one error figure. Rows
    where either side is NaN are skipped.
    """
    if len(ref_rows) != len(report.rows):
        raise ValueError(
            f"reference has {len(ref_rows)} rows, report has {len(report.rows)}"
        )
    out: dict[str, float] = {}
    for key, label in (("f1", "f1_rs"), ("f2", "f2"), ("f3", "f3"), ("f4", "f4")):
        diffs = []
        for row, ref in zip(report.rows, ref_rows):
            a = getattr(row, key)
            b = ref[key]
            if math.isnan(a) or math.isnan(b):
                continue
            diffs.append(abs(a - b))
        out[label] = sum(diffs) / len(diffs) if diffs else NAN
    return out
