"""Silence-driven segmentation of word-timecode streams.

A recording's recognized words are scanned left to right. The stream is
cut at an inter-word silence when the gap exceeds the active threshold:
normally ``base_silence_threshold`` (default 0.65 s), but once the
running word count of the current segment exceeds
``long_segment_word_count`` (default 40) the much smaller
``reduced_silence_threshold`` (default 0.15 s) takes over, which keeps
segments from growing without bound. The word counter restarts after
every cut.

Threshold tuning picks, from a candidate grid, the pair whose produced
segment-duration distribution is closest (1-D Wasserstein distance) to a
target duration sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .timecodes import Segment, ValidationError, WordHypothesis, validate_single_recording


class BoundaryPlacement(str, Enum):
    """Where segment boundaries land inside a splitting silence."""

    MIDPOINT_OF_GAP = "midpoint_of_gap"
    END_OF_LAST_WORD = "end_of_last_word"


@dataclass(frozen=True)
class SegmentationConfig:
    base_silence_threshold: float = 0.65
    long_segment_word_count: int = 40
    reduced_silence_threshold: float = 0.15
    boundary_placement: BoundaryPlacement = BoundaryPlacement.MIDPOINT_OF_GAP

    def __post_init__(self) -> None:
        if not 0 < self.reduced_silence_threshold <= self.base_silence_threshold:
            raise ValueError(
                "need 0 < reduced_silence_threshold <= base_silence_threshold, "
                f"got {self.reduced_silence_threshold} / {self.base_silence_threshold}"
            )
        if self.long_segment_word_count < 1:
            raise ValueError(f"long_segment_word_count must be >= 1, got {self.long_segment_word_count}")


@dataclass(frozen=True)
class DurationStats:
    min: float
    max: float
    mean: float
    std_dev: float
    count: int


def segment_by_silence(
    words: list[WordHypothesis],
    cfg: SegmentationConfig = SegmentationConfig(),
    segment_id_prefix: str | None = None,
) -> list[Segment]:
    """Split one recording's sorted word stream at long silences.

    The gap between consecutive words is ``start(next) - end(prev)``. A
    split happens iff the gap is strictly greater than the active
    threshold, which is the reduced one when the current segment already
    holds more than ``cfg.long_segment_word_count`` words. Every word
    lands in exactly one segment; empty segments are never produced.
    """
    if not words:
        return []
    validate_single_recording(words)
    rec = words[0].recording_id
    prefix = segment_id_prefix if segment_id_prefix is not None else rec

    groups: list[list[WordHypothesis]] = []
    current = [words[0]]
    for nxt in words[1:]:
        gap = nxt.start - current[-1].end
        threshold = (
            cfg.reduced_silence_threshold
            if len(current) > cfg.long_segment_word_count
            else cfg.base_silence_threshold
        )
        if gap > threshold:
            groups.append(current)
            current = [nxt]
        else:
            current.append(nxt)
    groups.append(current)

    segments = []
    for i, group in enumerate(groups):
        start = group[0].start
        end = group[-1].end
        if cfg.boundary_placement is BoundaryPlacement.MIDPOINT_OF_GAP:
            if i > 0:
                start = (groups[i - 1][-1].end + group[0].start) / 2.0
            if i < len(groups) - 1:
                end = (group[-1].end + groups[i + 1][0].start) / 2.0
        seg = Segment(f"{prefix}-{i:04d}", rec, start, end, list(group))
        seg.validate()
        segments.append(seg)
    return segments


def segment_recordings(
    words: list[WordHypothesis], cfg: SegmentationConfig = SegmentationConfig()
) -> list[Segment]:
    """Segment a multi-recording word stream, recording by recording."""
    by_rec: dict[str, list[WordHypothesis]] = {}
    for w in words:
        by_rec.setdefault(w.recording_id, []).append(w)
    segments = []
    for rec_words in by_rec.values():
        segments.extend(segment_by_silence(rec_words, cfg))
    return segments


def duration_stats(segments: list[Segment]) -> DurationStats:
    """Min/max/mean/population-std of segment durations. Needs >= 1 segment."""
    if not segments:
        raise ValidationError("no segments: duration statistics undefined")
    durations = np.array([s.duration for s in segments], dtype=float)
    return DurationStats(
        min=float(durations.min()),
        max=float(durations.max()),
        mean=float(durations.mean()),
        std_dev=float(durations.std()),  # population, not sample
        count=len(segments),
    )


def format_stats_table(rows: list[tuple[str, DurationStats]]) -> str:
    """Aligned text table with min size / max size / average / std dev columns."""
    header = ("corpus/segmentation", "min size", "max size", "average", "std dev")
    cells = [header]
    for label, st in rows:
        cells.append(
            (label, f"{st.min:.2f}", f"{st.max:.2f}", f"{st.mean:.2f}", f"{st.std_dev:.2f}")
        )
    widths = [max(len(row[i]) for row in cells) for i in range(len(header))]
    lines = []
    for row in cells:
        first = row[0].ljust(widths[0])
        rest = "  ".join(cell.rjust(w) for cell, w in zip(row[1:], widths[1:]))
        lines.append(f"{first}  {rest}")
    return "\n".join(lines) + "\n"


def format_stats_keyvalues(st: DurationStats) -> str:
    return (
        f"count={st.count}\n"
        f"min={st.min:.6f}\n"
        f"max={st.max:.6f}\n"
        f"mean={st.mean:.6f}\n"
        f"std_dev={st.std_dev:.6f}\n"
    )


def wasserstein_1d(a, b) -> float:
    """Exact 1-D Wasserstein-1 distance between two sample multisets.

    Integrates |F_a - F_b| over the merged support; for equal-size samples
    this equals the mean absolute difference of the sorted samples.
    """
    xs = np.sort(np.asarray(a, dtype=float))
    ys = np.sort(np.asarray(b, dtype=float))
    if xs.size == 0 or ys.size == 0:
        raise ValueError("wasserstein_1d needs non-empty samples")
    support = np.sort(np.concatenate([xs, ys]))
    deltas = np.diff(support)
    cdf_x = np.searchsorted(xs, support[:-1], side="right") / xs.size
    cdf_y = np.searchsorted(ys, support[:-1], side="right") / ys.size
    return float(np.sum(np.abs(cdf_x - cdf_y) * deltas))


def tune_thresholds(
    target_durations: list[float],
    words: list[WordHypothesis],
    grid: list[tuple[float, float]],
    long_segment_word_count: int = 40,
    boundary_placement: BoundaryPlacement = BoundaryPlacement.MIDPOINT_OF_GAP,
) -> tuple[SegmentationConfig, float]:
    """Pick the (base, reduced) grid pair best matching a duration target.

    Every grid pair segments ``words`` (grouped by recording); the winner
    minimizes the Wasserstein distance between produced durations and
    ``target_durations``. Ties break to the first minimal pair in grid
    order. A pair producing zero segments scores infinity.
    """
    if not grid:
        raise ValueError("empty tuning grid")
    if not target_durations:
        raise ValueError("empty target duration sample")
    best: tuple[SegmentationConfig, float] | None = None
    for base, reduced in grid:
        cfg = SegmentationConfig(
            base_silence_threshold=base,
            reduced_silence_threshold=reduced,
            long_segment_word_count=long_segment_word_count,
            boundary_placement=boundary_placement,
        )
        segments = segment_recordings(words, cfg)
        if not segments:
            distance = math.inf
        else:
            distance = wasserstein_1d([s.duration for s in segments], target_durations)
        if best is None or distance < best[1]:
            best = (cfg, distance)
    assert best is not None
    return best


def grid_distances(
    target_durations: list[float],
    words: list[WordHypothesis],
    grid: list[tuple[float, float]],
    long_segment_word_count: int = 40,
) -> list[tuple[tuple[float, float], float]]:
    """Wasserstein distance for every grid pair, in grid order."""
    out = []
    for base, reduced in grid:
        cfg = SegmentationConfig(
            base_silence_threshold=base,
            reduced_silence_threshold=reduced,
            long_segment_word_count=long_segment_word_count,
        )
        segments = segment_recordings(words, cfg)
        if not segments:
            out.append(((base, reduced), math.inf))
        else:
            out.append(
                ((base, reduced), wasserstein_1d([s.duration for s in segments], target_durations))
            )
    return out


def simple_threshold_segments(
    words: list[WordHypothesis], threshold: float
) -> list[list[WordHypothesis]]:
    """Plain gap thresholding with no word-count rule; reference behavior."""
    if not words:
        return []
    groups = [[words[0]]]
    for nxt in words[1:]:
        if nxt.start - groups[-1][-1].end > threshold:
            groups.append([nxt])
        else:
            groups[-1].append(nxt)
    return groups
