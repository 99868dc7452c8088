"""Stream (de)serialization and real-dataset ingestion.

File format: one record per line, ``i_id j_id weight timestamp``, single-space
separated decimal integers; lines starting with ``%`` or ``#`` are comments.
Files ending in ``.gz`` are read and written gzip-compressed. On read,
external ids are densely remapped per partition in first-seen order (identity
for streams that already use first-seen dense ids) and the mapping is kept on
the returned log.
"""

from __future__ import annotations

import gzip
import math
from pathlib import Path

from .core import Sgr, StreamLog, WEIGHT_MAX, WEIGHT_MIN


class StreamFormatError(ValueError):
    """Malformed or invalid stream file contents."""

    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


def _opener(path):
    return gzip.open if str(path).endswith(".gz") else open


def rescale_weight(raw: float) -> int:
    """Map a raw rating onto the 1-5 integer scale: round half up, then 0 -> 1."""
    w = math.floor(raw + 0.5)
    if w < 1:
        w = 1
    return w


def read_stream(path, rescale: bool = False) -> StreamLog:
    """Parse a stream file; records keep file order, ids become dense per partition.

    Without ``rescale`` the weight field must already be an integer in [1,5];
    with it, fractional ratings are rounded half-up and zeros become 1.
    """
    i_map: dict[int, int] = {}
    j_map: dict[int, int] = {}
    records: list[Sgr] = []
    with _opener(path)(path, "rt", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            s = line.strip()
            if not s or s.startswith("%") or s.startswith("#"):
                continue
            parts = s.split()
            if len(parts) != 4:
                raise StreamFormatError(
                    f"expected 4 fields, got {len(parts)}", lineno
                )
            try:
                raw_i = int(parts[0])
                raw_j = int(parts[1])
                ts = int(parts[3])
            except ValueError as exc:
                raise StreamFormatError(f"bad integer field: {exc}", lineno) from None
            if rescale:
                try:
                    w = rescale_weight(float(parts[2]))
                except ValueError:
                    raise StreamFormatError(
                        f"bad weight field {parts[2]!r}", lineno
                    ) from None
            else:
                try:
                    w = int(parts[2])
                except ValueError:
                    raise StreamFormatError(
                        f"bad weight field {parts[2]!r} (use --rescale for raw ratings)",
                        lineno,
                    ) from None
            if not WEIGHT_MIN <= w <= WEIGHT_MAX:
                raise StreamFormatError(
                    f"weight {w} outside [{WEIGHT_MIN},{WEIGHT_MAX}]", lineno
                )
            if ts < 0:
                raise StreamFormatError(f"negative timestamp {ts}", lineno)
            i = i_map.setdefault(raw_i, len(i_map))
            j = j_map.setdefault(raw_j, len(j_map))
            records.append(Sgr(i, j, w, ts))
    log = StreamLog(records)
    log.i_id_map = i_map
    log.j_id_map = j_map
    return log


def write_stream(stream: StreamLog, path) -> None:
    """Write records verbatim, one per line, in arrival order."""
    path = Path(path)
    with _opener(path)(path, "wt", encoding="utf-8", newline="\n") as fh:
        for r in stream.records:
            fh.write(f"{r.i_id} {r.j_id} {r.weight} {r.timestamp}\n")


def take_prefix(stream: StreamLog, n: int) -> StreamLog:
    """First n records in arrival order (the usual way to build an initial snapshot)."""
    if not 1 <= n <= len(stream):
        raise ValueError(f"prefix length {n} outside [1, {len(stream)}]")
    return StreamLog(stream.records[:n])
