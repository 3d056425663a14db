"""Word-level timecode files (CTM) and segment manifests.

A CTM document carries one recognized word per line::

    <recording-id> <channel> <start> <duration> <word> [confidence]

Times are seconds. Lines starting with ";;" are comments. A segment
manifest carries one segment per line: ``<segment-id> <recording-id>
<start> <end>`` with times fixed to two decimals.
"""

from __future__ import annotations

from dataclasses import dataclass, field

# Tolerated overlap between consecutive words of one recording, to absorb
# floating-point rounding in upstream recognizer output.
OVERLAP_TOLERANCE = 1e-3

COMMENT_PREFIX = ";;"


class CtmParseError(ValueError):
    """Malformed CTM or manifest input; carries the 1-based line number."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class ValidationError(ValueError):
    """Input violates a timecode invariant (ordering, overlap, ranges)."""


@dataclass(frozen=True)
class WordHypothesis:
    """One recognized word with its time span."""

    recording_id: str
    channel: str
    start: float
    duration: float
    word: str
    confidence: float | None = None

    @property
    def end(self) -> float:
        return self.start + self.duration


@dataclass
class Segment:
    """A contiguous time span of one recording, the unit of translation."""

    segment_id: str
    recording_id: str
    start: float
    end: float
    words: list[WordHypothesis] = field(default_factory=list)

    @property
    def duration(self) -> float:
        return self.end - self.start

    def validate(self) -> None:
        if not self.end > self.start:
            raise ValidationError(
                f"segment {self.segment_id}: end {self.end} <= start {self.start}"
            )
        for w in self.words:
            if w.start < self.start - OVERLAP_TOLERANCE or w.end > self.end + OVERLAP_TOLERANCE:
                raise ValidationError(
                    f"segment {self.segment_id}: word {w.word!r} at "
                    f"[{w.start}, {w.end}] outside [{self.start}, {self.end}]"
                )

    @property
    def text(self) -> str:
        return " ".join(w.word for w in self.words)


def parse_ctm(text: str, overlap_tolerance: float = OVERLAP_TOLERANCE) -> list[WordHypothesis]:
    """Parse a CTM document into validated, sorted word hypotheses.

    Words are returned grouped by recording and sorted by start time within
    each recording. Raises :class:`CtmParseError` for malformed lines and
    :class:`ValidationError` when words of one recording overlap by more
    than ``overlap_tolerance`` seconds.
    """
    words: list[WordHypothesis] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIX):
            continue
        fields = stripped.split()
        if len(fields) < 5:
            raise CtmParseError(lineno, f"expected >=5 fields, got {len(fields)}")
        rec, channel, start_s, dur_s, word = fields[:5]
        try:
            start = float(start_s)
            duration = float(dur_s)
        except ValueError:
            raise CtmParseError(lineno, f"non-numeric time field in {stripped!r}") from None
        confidence = None
        if len(fields) >= 6:
            try:
                confidence = float(fields[5])
            except ValueError:
                raise CtmParseError(lineno, f"non-numeric confidence {fields[5]!r}") from None
            if not 0.0 <= confidence <= 1.0:
                raise CtmParseError(lineno, f"confidence {confidence} outside [0, 1]")
        if start < 0:
            raise CtmParseError(lineno, f"negative start time {start}")
        if duration < 0:
            raise CtmParseError(lineno, f"negative duration {duration}")
        words.append(WordHypothesis(rec, channel, start, duration, word, confidence))

    words.sort(key=lambda w: (w.recording_id, w.start, w.end))
    _check_overlaps(words, overlap_tolerance)
    return words


def _check_overlaps(words: list[WordHypothesis], tolerance: float) -> None:
    for prev, cur in zip(words, words[1:]):
        if prev.recording_id != cur.recording_id:
            continue
        if prev.end > cur.start + tolerance:
            raise ValidationError(
                f"recording {cur.recording_id}: word {prev.word!r} ending at "
                f"{prev.end:.3f} overlaps {cur.word!r} starting at {cur.start:.3f}"
            )


def validate_single_recording(words: list[WordHypothesis]) -> None:
    """Check that words belong to one recording, sorted and non-overlapping."""
    if not words:
        return
    rec = words[0].recording_id
    for w in words:
        if w.recording_id != rec:
            raise ValidationError(
                f"words span recordings {rec!r} and {w.recording_id!r}"
            )
    for prev, cur in zip(words, words[1:]):
        if cur.start < prev.start:
            raise ValidationError(
                f"words not sorted by start time: {prev.start} before {cur.start}"
            )
    _check_overlaps(words, OVERLAP_TOLERANCE)


def write_segment_manifest(segments: list[Segment]) -> str:
    """Serialize segments, one ``id rec start end`` line each, 2-decimal times."""
    lines = [
        f"{s.segment_id} {s.recording_id} {s.start:.2f} {s.end:.2f}"
        for s in segments
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def parse_segment_manifest(text: str) -> list[Segment]:
    """Parse a segment manifest written by :func:`write_segment_manifest`."""
    segments = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith(COMMENT_PREFIX):
            continue
        fields = stripped.split()
        if len(fields) != 4:
            raise CtmParseError(lineno, f"expected 4 fields, got {len(fields)}")
        seg_id, rec, start_s, end_s = fields
        try:
            start = float(start_s)
            end = float(end_s)
        except ValueError:
            raise CtmParseError(lineno, f"non-numeric time field in {stripped!r}") from None
        seg = Segment(seg_id, rec, start, end)
        seg.validate()
        segments.append(seg)
    return segments
