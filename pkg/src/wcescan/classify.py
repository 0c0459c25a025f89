"""Frame classification: count rule-matching pixels, decide bleeding or not.

The decision reproduces the count-threshold rule: a frame is bleeding when
at least ``min_count`` pixels fall inside the rule box, and the default
``min_count=1`` is exactly "any matching pixel at all". Counting is
vectorized but contractually equal to the naive per-pixel scan, independent
of scan order.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import partial
from pathlib import Path
from typing import IO, Iterable, Sequence

from .frames import DecodeError, Frame, decode_frame
from .rules import ColorRangeRule


class Verdict(Enum):
    BLEEDING = "bleeding"
    NON_BLEEDING = "non_bleeding"


@dataclass(frozen=True)
class FrameVerdict:
    """Outcome of scanning one frame with one rule."""

    source: str
    rule_id: str
    matching_count: int
    min_count: int
    verdict: Verdict


@dataclass(frozen=True)
class FrameError:
    """Per-file decode failure inside a batch; keeps its slot in the output."""

    source: str
    rule_id: str
    message: str


def count_matching(frame: Frame, rule: ColorRangeRule) -> int:
    """Number of pixels inside the rule's box."""
    px = frame.pixels
    r, g, b = px[..., 0], px[..., 1], px[..., 2]
    mask = (r >= rule.r.lo) & (r <= rule.r.hi)
    mask &= (g >= rule.g.lo) & (g <= rule.g.hi)
    mask &= (b >= rule.b.lo) & (b <= rule.b.hi)
    return int(mask.sum())


def classify_frame(frame: Frame, rule: ColorRangeRule, min_count: int = 1) -> FrameVerdict:
    """Bleeding iff at least ``min_count`` pixels match (default: one)."""
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    n = count_matching(frame, rule)
    verdict = Verdict.BLEEDING if n >= min_count else Verdict.NON_BLEEDING
    return FrameVerdict(frame.source, rule.id, n, min_count, verdict)


def _scan_one(
    path: str | Path, rule: ColorRangeRule, min_count: int
) -> FrameVerdict | FrameError:
    try:
        frame = decode_frame(path)
    except DecodeError as exc:
        return FrameError(str(path), rule.id, str(exc))
    return classify_frame(frame, rule, min_count)


def classify_batch(
    paths: Sequence[str | Path],
    rule: ColorRangeRule,
    min_count: int = 1,
    workers: int = 1,
) -> list[FrameVerdict | FrameError]:
    """Classify many image files; output order mirrors input order exactly.

    Decode failures occupy their slot as :class:`FrameError` instead of
    aborting the batch. Each entry depends only on its own file, so the
    result is bit-identical for every ``workers`` value. Fan-out uses
    processes: decode plus count is CPU-bound and mostly GIL-held.
    """
    if min_count < 1:
        raise ValueError(f"min_count must be >= 1, got {min_count}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    if workers == 1 or len(paths) <= 1:
        return [_scan_one(p, rule, min_count) for p in paths]
    scan = partial(_scan_one, rule=rule, min_count=min_count)
    chunksize = max(1, len(paths) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(scan, paths, chunksize=chunksize))


CSV_HEADER = ("source", "rule_id", "matching_count", "min_count", "verdict")


def write_records(entries: Iterable[FrameVerdict | FrameError], stream: IO[str]) -> None:
    """Write per-frame CSV records, header row first.

    Error entries keep their position with empty count fields and an
    ``error:<message>`` token in the verdict column.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for entry in entries:
        if isinstance(entry, FrameError):
            writer.writerow([entry.source, entry.rule_id, "", "", f"error:{entry.message}"])
        else:
            writer.writerow(
                [
                    entry.source,
                    entry.rule_id,
                    entry.matching_count,
                    entry.min_count,
                    entry.verdict.value,
                ]
            )
