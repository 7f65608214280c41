"""Valence categorization from multifractal spectral widths.

Per-segment widths roll up into per-clip means, each instrument learns a
midpoint threshold between its positive- and negative-valence clips, and
new widths are labeled by which side of the threshold they fall on. The
polarity is learned per instrument because it is not universal: flute
clips carry higher widths for positive valence while sarod and sitar
carry lower ones. A negative margin between the class extremes marks the
instruments where the two classes overlap and labels become ambiguous.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

from .errors import NoValidSegments, SingleArtist, SingleClassOnly
from .signal_io import ClipMetadata

ORIENTATIONS = ("positive_higher", "positive_lower")

#: Floor for the confidence denominator; only guards margin <= 0.
CONFIDENCE_EPSILON = 1e-9


@dataclass(frozen=True)
class SegmentReport:
    """Spectral summary of one analyzed segment of one clip."""

    clip_id: str
    metadata: ClipMetadata
    segment_index: int
    width_W: float
    width_direct: float
    h2: float
    alpha0: float
    asymmetry_B: float
    quality_flags: frozenset = frozenset()

    def __post_init__(self):
        if self.segment_index < 0:
            raise ValueError("segment_index must be >= 0")
        object.__setattr__(self, "quality_flags", frozenset(self.quality_flags))

    @property
    def width_valid(self) -> bool:
        return isfinite(self.width_W) and self.width_W >= 0


@dataclass(frozen=True)
class ClipAggregate:
    """Clip-level mean width over its valid segments."""

    clip_id: str
    metadata: ClipMetadata
    mean_width: float
    per_segment_widths: tuple
    width_range: tuple
    n_excluded: int = 0


@dataclass(frozen=True)
class InstrumentThreshold:
    """Learned valence decision rule for one instrument.

    upper_class_min / lower_class_max are the inner extremes of the two
    classes under the learned orientation; margin is their gap and the
    closed interval between them is the ambiguity band when they overlap.
    """

    instrument: str
    orientation: str
    threshold: float
    margin: float
    overlap: bool
    upper_class_min: float
    lower_class_max: float

    def __post_init__(self):
        if self.orientation not in ORIENTATIONS:
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.overlap != (self.margin < 0):
            raise ValueError("overlap must equal (margin < 0)")


@dataclass(frozen=True)
class Classification:
    label: str
    confidence: float
    ambiguous: bool


def aggregate(reports: list[SegmentReport]) -> list[ClipAggregate]:
    """Collapse segment reports into per-clip mean widths.

    Segments whose width is flagged invalid (NaN or negative) are excluded
    from the mean and counted in n_excluded. A clip with no valid segment
    raises NoValidSegments rather than producing a silent NaN aggregate.
    """
    by_clip: dict[str, list[SegmentReport]] = {}
    for rep in reports:
        by_clip.setdefault(rep.clip_id, []).append(rep)
    out = []
    for clip_id in sorted(by_clip):
        group = sorted(by_clip[clip_id], key=lambda r: r.segment_index)
        indices = [r.segment_index for r in group]
        if len(set(indices)) != len(indices):
            raise ValueError(f"duplicate segment_index for clip {clip_id!r}")
        if len({r.metadata for r in group}) != 1:
            raise ValueError(f"inconsistent metadata for clip {clip_id!r}")
        widths = tuple(r.width_W for r in group if r.width_valid)
        if not widths:
            raise NoValidSegments(f"clip {clip_id!r} has no valid segments")
        out.append(
            ClipAggregate(
                clip_id=clip_id,
                metadata=group[0].metadata,
                mean_width=sum(widths) / len(widths),
                per_segment_widths=widths,
                width_range=(min(widths), max(widths)),
                n_excluded=len(group) - len(widths),
            )
        )
    return out


def learn_threshold(
    aggregates: list[ClipAggregate], instrument: str
) -> InstrumentThreshold:
    """Midpoint decision rule between the instrument's two valence classes.

    The threshold sits halfway between the class means; orientation records
    which class carries the larger widths. The margin is the gap between
    the inner class extremes, so a negative margin means the classes
    interleave and no width threshold can separate them cleanly.
    """
    # Sorted so the result is exactly permutation-invariant in the input.
    pos = sorted(a.mean_width for a in aggregates
                 if a.metadata.instrument == instrument
                 and a.metadata.valence == "positive")
    neg = sorted(a.mean_width for a in aggregates
                 if a.metadata.instrument == instrument
                 and a.metadata.valence == "negative")
    if not pos or not neg:
        raise SingleClassOnly(
            f"instrument {instrument!r} has {len(pos)} positive and "
            f"{len(neg)} negative clips; need both classes"
        )
    mean_pos = sum(pos) / len(pos)
    mean_neg = sum(neg) / len(neg)
    # Equal class means default to positive_higher; the margin will be
    # negative in that case anyway, flagging the rule as unreliable.
    orientation = "positive_higher" if mean_pos >= mean_neg else "positive_lower"
    upper, lower = (pos, neg) if orientation == "positive_higher" else (neg, pos)
    margin = min(upper) - max(lower)
    return InstrumentThreshold(
        instrument=instrument,
        orientation=orientation,
        threshold=(mean_pos + mean_neg) / 2.0,
        margin=margin,
        overlap=margin < 0,
        upper_class_min=min(upper),
        lower_class_max=max(lower),
    )


def classify(width: float, t: InstrumentThreshold) -> Classification:
    """Label one width against a learned threshold.

    A width strictly above the threshold takes the higher-oriented class;
    a width exactly at the threshold falls to the lower class. Confidence
    is the distance to the threshold in units of the margin, capped at 1;
    inside an overlapping instrument's ambiguity band the label is kept
    but marked ambiguous.
    """
    if not isfinite(width):
        raise ValueError("width must be finite")
    above = width > t.threshold
    label = "positive" if above != (t.orientation == "positive_lower") else "negative"
    confidence = min(
        1.0, abs(width - t.threshold) / max(t.margin, CONFIDENCE_EPSILON)
    )
    ambiguous = t.overlap and t.upper_class_min <= width <= t.lower_class_max
    return Classification(label=label, confidence=confidence, ambiguous=ambiguous)


@dataclass(frozen=True)
class StyleProfile:
    """One artist's deviation from the shared rendition of a raga."""

    artist: str
    segment_indices: tuple
    deviations: tuple
    improvisation_score: float


def style_variation(reports: list[SegmentReport]) -> list[StyleProfile]:
    """Per-artist deviation profiles for one raga rendered by several artists.

    At each segment index the cross-artist mean width is the reference;
    an artist's deviation there is their width minus that mean, and the
    improvisation score is the largest absolute deviation. Two artists
    playing identical widths therefore both score zero.
    """
    ragas = {r.metadata.raga for r in reports}
    if len(ragas) != 1:
        raise ValueError(f"expected reports for exactly one raga, got {sorted(ragas)}")
    per_artist: dict[str, dict[int, float]] = {}
    for rep in reports:
        if not rep.width_valid:
            continue
        slots = per_artist.setdefault(rep.metadata.artist, {})
        if rep.segment_index in slots:
            raise ValueError(
                f"duplicate segment {rep.segment_index} for artist "
                f"{rep.metadata.artist!r}"
            )
        slots[rep.segment_index] = rep.width_W
    if len(per_artist) < 2:
        raise SingleArtist(
            f"raga {next(iter(ragas))!r} has {len(per_artist)} artist(s); need >= 2"
        )
    all_indices = sorted({i for slots in per_artist.values() for i in slots})
    reference = {}
    for idx in all_indices:
        vals = [slots[idx] for slots in per_artist.values() if idx in slots]
        reference[idx] = sum(vals) / len(vals)
    profiles = []
    for artist in sorted(per_artist):
        slots = per_artist[artist]
        indices = tuple(sorted(slots))
        devs = tuple(slots[i] - reference[i] for i in indices)
        profiles.append(
            StyleProfile(
                artist=artist,
                segment_indices=indices,
                deviations=devs,
                improvisation_score=max(abs(d) for d in devs),
            )
        )
    return profiles
