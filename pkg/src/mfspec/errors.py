"""Exception types raised by the mfspec library."""


class MfspecError(Exception):
    """Base class for all mfspec-specific errors."""


# --- audio ingestion ---

class UnsupportedFormat(MfspecError):
    """WAV file uses a codec other than integer or float PCM."""


class MalformedHeader(MfspecError):
    """File is not a parseable RIFF/WAVE container."""


class NoSampleRate(MfspecError):
    """Operation needs wall-clock time but the series has no sample rate."""


class SegmentTooShort(MfspecError):
    """Requested segment length is too small to analyze."""


# --- synthetic generators ---

class EmbeddingFailure(MfspecError):
    """Circulant covariance embedding produced negative eigenvalues."""


# --- fluctuation analysis ---

class DegenerateSignal(MfspecError):
    """Constant input: every detrended fluctuation would be zero."""


class EmptyGrid(MfspecError):
    """Integer rounding collapsed the scale grid."""


class ScaleTooLarge(MfspecError):
    """Scale exceeds a quarter of the series length."""


class ScaleTooSmallForOrder(MfspecError):
    """Window too short for the requested detrending order."""


class AllZeroFluctuations(MfspecError):
    """Every window at this scale detrended to exactly zero."""


class InsufficientScales(MfspecError):
    """Fewer than eight usable scales remain for the log-log fits."""


class NonConcaveSpectrum(MfspecError):
    """Quadratic fit to the singularity spectrum opened upward."""


class ComplexRoots(MfspecError):
    """Fitted quadratic never crosses zero; width is undefined."""


# --- valence pipeline ---

class NoValidSegments(MfspecError):
    """A clip has no unflagged segments to aggregate."""


class SingleClassOnly(MfspecError):
    """Threshold learning needs both valence classes for an instrument."""


class SingleArtist(MfspecError):
    """Style comparison needs at least two artists on the same raga."""


class UnlabeledClip(MfspecError):
    """A report row has no matching row in the label file."""


class MissingArtifacts(MfspecError):
    """Run directory lacks the files a command needs."""
