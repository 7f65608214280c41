"""WAV ingestion, time-series containers, and fixed-length segmentation."""

from __future__ import annotations

import csv
import struct
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import MalformedHeader, NoSampleRate, SegmentTooShort, UnsupportedFormat

INSTRUMENTS = ("sitar", "sarod", "flute", "other")
VALENCES = ("positive", "negative", "unlabeled")

_WAVE_FORMAT_PCM = 0x0001
_WAVE_FORMAT_IEEE_FLOAT = 0x0003
_WAVE_FORMAT_EXTENSIBLE = 0xFFFE


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """A 1-D sequence of real samples, optionally anchored to wall-clock time.

    ``samples`` is always a float64 array. Audio loaded through
    :func:`load_wav` is normalized to [-1, 1]; synthetic series carry
    whatever scale their generator produced and usually no sample rate.
    """

    samples: np.ndarray
    sample_rate: float | None = None
    label: str | None = None

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.float64)
        if arr.ndim != 1:
            raise ValueError("samples must be one-dimensional")
        if arr.size == 0:
            raise ValueError("samples must be non-empty")
        object.__setattr__(self, "samples", arr)
        if self.sample_rate is not None and self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration_seconds(self) -> float | None:
        if self.sample_rate is None:
            return None
        return self.samples.size / self.sample_rate


@dataclass(frozen=True)
class ClipMetadata:
    """Descriptive labels for one recording."""

    raga: str = ""
    artist: str = ""
    instrument: str = "other"
    valence: str = "unlabeled"

    def __post_init__(self):
        object.__setattr__(self, "instrument", normalize_instrument(self.instrument))
        object.__setattr__(self, "valence", normalize_valence(self.valence))


def normalize_instrument(value: str) -> str:
    value = (value or "").strip().lower()
    return value if value in INSTRUMENTS else "other"


def normalize_valence(value: str) -> str:
    value = (value or "").strip().lower()
    if value in ("", "unlabeled", "unknown", "none"):
        return "unlabeled"
    if value not in VALENCES:
        raise ValueError(f"valence must be one of {VALENCES}, got {value!r}")
    return value


def _read_exact(fh, n: int, what: str) -> bytes:
    data = fh.read(n)
    if len(data) != n:
        raise MalformedHeader(f"truncated file while reading {what}")
    return data


def _decode_pcm(raw: bytes, fmt: int, bits: int) -> np.ndarray:
    if fmt == _WAVE_FORMAT_IEEE_FLOAT:
        if bits != 32:
            raise UnsupportedFormat(f"{bits}-bit float PCM is not supported")
        return np.frombuffer(raw, dtype="<f4").astype(np.float64)
    if fmt != _WAVE_FORMAT_PCM:
        raise UnsupportedFormat(
            f"compressed or non-PCM codec (format tag 0x{fmt:04X}) is not supported"
        )
    if bits == 8:
        # 8-bit WAV is unsigned with midpoint 128
        x = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
        return (x - 128.0) / 128.0
    if bits == 16:
        return np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    if bits == 24:
        b = np.frombuffer(raw, dtype=np.uint8)
        if b.size % 3:
            raise MalformedHeader("24-bit data chunk is not a whole number of samples")
        b = b.reshape(-1, 3).astype(np.int32)
        x = b[:, 0] | (b[:, 1] << 8) | (b[:, 2] << 16)
        x = (x ^ 0x800000) - 0x800000  # sign-extend
        return x.astype(np.float64) / float(2**23)
    if bits == 32:
        return np.frombuffer(raw, dtype="<i4").astype(np.float64) / float(2**31)
    raise UnsupportedFormat(f"{bits}-bit integer PCM is not supported")


def load_wav(path: str | Path) -> TimeSeries:
    """Load a RIFF/WAVE PCM file as a normalized mono time series.

    Integer samples are scaled by 1/2^(bits-1) into [-1, 1]; 32-bit float
    samples are taken verbatim. Multichannel input is mixed down by the
    unweighted mean of the channels. The header sample rate is preserved.

    Parameters
    ----------
    path : str or Path
        File containing 8/16/24/32-bit integer PCM or 32-bit float PCM.

    Returns
    -------
    TimeSeries
        Mono series labeled with the file stem.

    Raises
    ------
    FileNotFoundError
        If ``path`` does not exist.
    MalformedHeader
        If the file is not a parseable RIFF/WAVE container.
    UnsupportedFormat
        For compressed codecs or unsupported sample widths.
    """
    path = Path(path)
    with open(path, "rb") as fh:
        riff, _, wave_id = struct.unpack("<4sI4s", _read_exact(fh, 12, "RIFF header"))
        if riff != b"RIFF" or wave_id != b"WAVE":
            raise MalformedHeader(f"{path.name} is not a RIFF/WAVE file")

        fmt_fields = None
        data = None
        while True:
            header = fh.read(8)
            if len(header) == 0:
                break
            if len(header) < 8:
                raise MalformedHeader("truncated chunk header")
            chunk_id, size = struct.unpack("<4sI", header)
            payload = _read_exact(fh, size, f"chunk {chunk_id!r}")
            if size % 2:
                fh.read(1)  # chunks are word-aligned
            if chunk_id == b"fmt ":
                if size < 16:
                    raise MalformedHeader("fmt chunk shorter than 16 bytes")
                fmt_fields = struct.unpack("<HHIIHH", payload[:16])
                if fmt_fields[0] == _WAVE_FORMAT_EXTENSIBLE:
                    if size < 40:
                        raise MalformedHeader("extensible fmt chunk shorter than 40 bytes")
                    sub_format = struct.unpack("<H", payload[24:26])[0]
                    fmt_fields = (sub_format,) + fmt_fields[1:]
            elif chunk_id == b"data":
                data = payload
            if fmt_fields is not None and data is not None:
                break

    if fmt_fields is None:
        raise MalformedHeader("missing fmt chunk")
    if data is None:
        raise MalformedHeader("missing data chunk")

    fmt, channels, rate, _, _, bits = fmt_fields
    if channels < 1:
        raise MalformedHeader("fmt chunk declares zero channels")
    if rate <= 0:
        raise MalformedHeader("fmt chunk declares a non-positive sample rate")

    samples = _decode_pcm(data, fmt, bits)
    if channels > 1:
        frames = samples.size // channels
        samples = samples[: frames * channels].reshape(frames, channels).mean(axis=1)
    if samples.size == 0:
        raise MalformedHeader("data chunk holds no samples")
    return TimeSeries(samples=samples, sample_rate=float(rate), label=path.stem)


def save_wav(path: str | Path, ts: TimeSeries, bits: int = 16) -> None:
    """Write a mono time series as integer PCM.

    Only 16-bit output is supported; samples are clipped to [-1, 1) and
    quantized by 2^15, so a series loaded from a 16-bit file round-trips
    exactly.
    """
    if bits != 16:
        raise UnsupportedFormat("only 16-bit PCM output is supported")
    if ts.sample_rate is None:
        raise NoSampleRate("cannot write a WAV without a sample rate")
    rate = int(round(ts.sample_rate))
    pcm = np.clip(np.round(ts.samples * 32768.0), -32768, 32767).astype("<i2")
    payload = pcm.tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF", 36 + len(payload), b"WAVE",
        b"fmt ", 16, _WAVE_FORMAT_PCM, 1, rate, rate * 2, 2, 16,
        b"data", len(payload),
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(payload)


def segment(ts: TimeSeries, segment_seconds: float) -> list[TimeSeries]:
    """Cut a series into consecutive equal-length segments.

    Returns ``floor(duration / segment_seconds)`` segments of exactly
    ``round(segment_seconds * sample_rate)`` samples each, taken
    contiguously from the start. A trailing remainder shorter than one
    segment is dropped with a warning rather than padded, since padding
    would inject artificial fluctuations into the analysis windows.
    """
    if ts.sample_rate is None:
        raise NoSampleRate("segmentation by seconds needs a sample rate")
    if segment_seconds <= 0:
        raise ValueError("segment_seconds must be positive")
    seg_len = int(round(segment_seconds * ts.sample_rate))
    if seg_len < 2:
        raise SegmentTooShort(
            f"{segment_seconds} s at {ts.sample_rate} Hz is {seg_len} samples"
        )
    n_segments = ts.samples.size // seg_len
    remainder = ts.samples.size - n_segments * seg_len
    if remainder:
        warnings.warn(
            f"dropping {remainder} trailing samples "
            f"({remainder / ts.sample_rate:.3f} s) shorter than one segment",
            stacklevel=2,
        )
    out = []
    for i in range(n_segments):
        chunk = ts.samples[i * seg_len : (i + 1) * seg_len]
        label = f"{ts.label}[{i}]" if ts.label else f"segment[{i}]"
        out.append(TimeSeries(samples=chunk, sample_rate=ts.sample_rate, label=label))
    return out


LABEL_COLUMNS = ("path", "raga", "artist", "instrument", "valence")


def read_labels(path: str | Path) -> dict[str, ClipMetadata]:
    """Read a clip label file: CSV with a `path,raga,artist,instrument,valence` header.

    Returns a mapping from the path column (verbatim) to metadata, in file
    order. Valence may be left empty, which maps to ``unlabeled``.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        if header[: len(LABEL_COLUMNS)] != LABEL_COLUMNS:
            raise ValueError(
                f"label file must start with header {','.join(LABEL_COLUMNS)}, "
                f"got {','.join(header)}"
            )
        out: dict[str, ClipMetadata] = {}
        for row in reader:
            out[row["path"]] = ClipMetadata(
                raga=row["raga"].strip(),
                artist=row["artist"].strip(),
                instrument=row["instrument"],
                valence=row["valence"],
            )
    return out
