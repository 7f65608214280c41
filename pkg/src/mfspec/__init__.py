"""Multifractal spectral width features for audio and synthetic series.

The pipeline: load or synthesize a series, run multifractal detrended
fluctuation analysis to get generalized Hurst exponents and the
singularity spectrum, summarize the spectrum by its quadratic width W,
then aggregate widths per clip and learn per-instrument valence
thresholds. The `mfspec` console script exposes the same steps as batch
commands.
"""

from .emotion import (
    Classification,
    ClipAggregate,
    InstrumentThreshold,
    SegmentReport,
    StyleProfile,
    aggregate,
    classify,
    learn_threshold,
    style_variation,
)
from .errors import MfspecError
from .mfdfa import (
    AnalysisConfig,
    FluctuationSurface,
    HurstSpectrum,
    SingularitySpectrum,
    analyze,
    fluctuation_function,
    fluctuation_surface,
    hurst_spectrum,
    local_fluctuations,
    profile,
    quadratic_width,
    quality_flags,
    scale_grid,
    singularity_spectrum,
)
from .signal_io import (
    ClipMetadata,
    TimeSeries,
    load_wav,
    read_labels,
    save_wav,
    segment,
)
from .synth import (
    CascadeParams,
    analytic_cascade_hurst,
    binomial_cascade,
    fgn,
    fgn_autocovariance,
    shuffle,
    white_noise,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisConfig",
    "CascadeParams",
    "Classification",
    "ClipAggregate",
    "ClipMetadata",
    "FluctuationSurface",
    "HurstSpectrum",
    "InstrumentThreshold",
    "MfspecError",
    "SegmentReport",
    "SingularitySpectrum",
    "StyleProfile",
    "TimeSeries",
    "aggregate",
    "analytic_cascade_hurst",
    "analyze",
    "binomial_cascade",
    "classify",
    "fgn",
    "fgn_autocovariance",
    "fluctuation_function",
    "fluctuation_surface",
    "hurst_spectrum",
    "learn_threshold",
    "load_wav",
    "local_fluctuations",
    "profile",
    "quadratic_width",
    "quality_flags",
    "read_labels",
    "save_wav",
    "scale_grid",
    "segment",
    "shuffle",
    "singularity_spectrum",
    "style_variation",
    "white_noise",
]
