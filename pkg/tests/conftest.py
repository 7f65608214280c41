import numpy as np
import pytest

from mfspec import ClipMetadata, SegmentReport, aggregate

# Classification fixtures: published per-clip mean spectral widths for three
# instrumentalists across six ragas, with each raga's conventional valence.
# Treated as stored data, not as estimator output.
FIXTURE_CLIPS = (
    ("Ali Akbar Khan", "sarod", "Hamswadhani", "positive", 0.628),
    ("Ali Akbar Khan", "sarod", "Darbari", "negative", 0.802),
    ("Ali Akbar Khan", "sarod", "Jay Jayanti", "positive", 0.677),
    ("Ali Akbar Khan", "sarod", "Mia ki Malhar", "negative", 0.583),
    ("Ali Akbar Khan", "sarod", "Durga", "positive", 0.809),
    ("Ali Akbar Khan", "sarod", "Yaman", "negative", 0.721),
    ("Hariprasad Chaurasia", "flute", "Hamswadhani", "positive", 1.076),
    ("Hariprasad Chaurasia", "flute", "Darbari", "negative", 0.447),
    ("Hariprasad Chaurasia", "flute", "Jay Jayanti", "positive", 0.675),
    ("Hariprasad Chaurasia", "flute", "Mia ki Malhar", "negative", 0.421),
    ("Hariprasad Chaurasia", "flute", "Durga", "positive", 0.538),
    ("Hariprasad Chaurasia", "flute", "Yaman", "negative", 0.443),
    ("Nikhil Banerjee", "sitar", "Hamswadhani", "positive", 0.429),
    ("Nikhil Banerjee", "sitar", "Darbari", "negative", 0.647),
    ("Nikhil Banerjee", "sitar", "Jay Jayanti", "positive", 0.403),
    ("Nikhil Banerjee", "sitar", "Mia ki Malhar", "negative", 0.614),
    ("Nikhil Banerjee", "sitar", "Durga", "positive", 0.564),
    ("Nikhil Banerjee", "sitar", "Yaman", "negative", 0.447),
)


def clip_id_for(artist: str, raga: str) -> str:
    return f"{artist.split()[-1].lower()}_{raga.replace(' ', '_').lower()}"


def make_report(clip_id, width, *, artist="a", instrument="flute", raga="r",
                valence="unlabeled", segment_index=0, flags=()):
    return SegmentReport(
        clip_id=clip_id,
        metadata=ClipMetadata(raga=raga, artist=artist, instrument=instrument,
                              valence=valence),
        segment_index=segment_index,
        width_W=width,
        width_direct=width,
        h2=0.5,
        alpha0=0.5,
        asymmetry_B=0.0,
        quality_flags=frozenset(flags),
    )


@pytest.fixture
def fixture_reports():
    """One single-segment report per fixture clip."""
    return [
        make_report(clip_id_for(artist, raga), width, artist=artist,
                    instrument=instrument, raga=raga, valence=valence)
        for artist, instrument, raga, valence, width in FIXTURE_CLIPS
    ]


@pytest.fixture
def fixture_aggregates(fixture_reports):
    return aggregate(fixture_reports)
