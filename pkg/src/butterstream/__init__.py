"""Bipartite streaming-graph workload generators and butterfly emergence analytics."""

from .core import (
    BipartiteGraph,
    Burst,
    MissingEdgeWarning,
    Sgr,
    Snapshot,
    StreamLog,
    VertexState,
    apply_add,
    apply_remove,
    full_snapshot,
    sample_timeline,
    segment_bursts,
    snapshot_at,
)
from .butterfly import (
    ButterflyReport,
    brute_force_count,
    brute_force_edge_set,
    butterfly_edge_set,
    butterfly_report,
    count_butterflies,
    wedge_count,
)
from .metrics import (
    FVector,
    MomentStats,
    RatePoint,
    RateSeries,
    butterfly_rate_series,
    f_vector,
    knn_average_strength,
    localization_factor,
    moments,
    pearson_assortativity,
    strength_deltas,
)
from .sgrow import (
    GeneratorState,
    GeneratorStarvedError,
    SGrowConfig,
    add_burst,
    generate,
    prw,
    sps,
    step,
    timestamp_gap,
)
from .baselines import FFConfig, SPAConfig, ff_generate, spa_generate
from .stream_io import StreamFormatError, read_stream, take_prefix, write_stream
from .analysis import AnalysisReport, SnapshotRow, build_report

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BipartiteGraph",
    "Burst",
    "ButterflyReport",
    "FFConfig",
    "FVector",
    "GeneratorStarvedError",
    "GeneratorState",
    "MissingEdgeWarning",
    "MomentStats",
    "RatePoint",
    "RateSeries",
    "SGrowConfig",
    "SPAConfig",
    "Sgr",
    "Snapshot",
    "SnapshotRow",
    "StreamFormatError",
    "StreamLog",
    "VertexState",
    "add_burst",
    "apply_add",
    "apply_remove",
    "brute_force_count",
    "brute_force_edge_set",
    "build_report",
    "butterfly_edge_set",
    "butterfly_rate_series",
    "butterfly_report",
    "count_butterflies",
    "f_vector",
    "ff_generate",
    "full_snapshot",
    "generate",
    "knn_average_strength",
    "localization_factor",
    "moments",
    "pearson_assortativity",
    "prw",
    "read_stream",
    "sample_timeline",
    "segment_bursts",
    "snapshot_at",
    "spa_generate",
    "sps",
    "step",
    "strength_deltas",
    "take_prefix",
    "timestamp_gap",
    "wedge_count",
    "write_stream",
]
