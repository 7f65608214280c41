"""Batch command-line interface.

Four subcommands: `analyze` runs the fluctuation pipeline over a manifest
of WAV clips, `synth` writes reference signals for calibration, `classify`
learns per-instrument valence thresholds from labeled widths, and `report`
renders the run's tables and SVG plots. Every command is deterministic
given its inputs and seed: no timestamps are written, rows are sorted,
floats are serialized with repr, and files are written atomically
(temp-then-rename) so a crashed run never leaves half a file behind.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .emotion import (
    ClipAggregate,
    SegmentReport,
    aggregate,
    classify,
    learn_threshold,
)
from .errors import (
    MfspecError,
    MissingArtifacts,
    SingleClassOnly,
    UnlabeledClip,
)
from .mfdfa import AnalysisConfig, analyze, quality_flags
from .plots import svg_plot
from .signal_io import (
    LABEL_COLUMNS,
    ClipMetadata,
    TimeSeries,
    load_wav,
    save_wav,
    segment,
)
from .synth import CascadeParams, binomial_cascade, fgn, shuffle, white_noise

SEGMENT_COLUMNS = (
    "clip_id", "segment_index", "raga", "artist", "instrument", "valence",
    "width_W", "width_direct", "h2", "alpha0", "asymmetry_B", "quality_flags",
)

CONFIG_KEYS = frozenset(
    {
        "scale_min", "scale_max", "n_scales", "q_min", "q_max", "q_step",
        "detrend_order", "segment_seconds", "min_fit_r2", "seed",
        "manifest", "out", "emit_plots",
    }
)

DEFAULT_SAMPLE_RATE = 22050.0


@dataclass(frozen=True)
class RunConfig:
    """Resolved settings of one batch run; round-trips through run.json."""

    analysis: AnalysisConfig
    q_min: float = -5.0
    q_max: float = 5.0
    q_step: float = 0.5
    segment_seconds: float = 45.0
    seed: int = 0
    emit_plots: bool = True
    manifest: str | None = None
    out: str | None = None

    def to_mapping(self) -> dict:
        return {
            "scale_min": self.analysis.scale_min,
            "scale_max": self.analysis.scale_max,
            "n_scales": self.analysis.n_scales,
            "q_min": self.q_min,
            "q_max": self.q_max,
            "q_step": self.q_step,
            "detrend_order": self.analysis.detrend_order,
            "min_fit_r2": self.analysis.min_fit_r2,
            "segment_seconds": self.segment_seconds,
            "seed": self.seed,
            "emit_plots": self.emit_plots,
            "manifest": self.manifest,
            "out": self.out,
        }


def build_q_grid(q_min: float, q_max: float, q_step: float) -> tuple[float, ...]:
    """Inclusive arithmetic q grid; endpoints must differ by a whole number of steps."""
    if q_step <= 0:
        raise ValueError("q_step must be positive")
    span = (q_max - q_min) / q_step
    n = round(span)
    if n < 1 or abs(span - n) > 1e-9:
        raise ValueError("q_max - q_min must be a positive multiple of q_step")
    # Round away accumulated float dust so grid values compare cleanly.
    return tuple(round(q_min + i * q_step, 10) + 0.0 for i in range(n + 1))


def load_run_config(path: str | None) -> RunConfig:
    """Read a TOML or JSON config file into a RunConfig (defaults if None)."""
    raw: dict = {}
    if path is not None:
        p = Path(path)
        if p.suffix == ".toml":
            with open(p, "rb") as fh:
                raw = tomllib.load(fh)
        elif p.suffix == ".json":
            with open(p, "rb") as fh:
                raw = json.load(fh)
        else:
            raise ValueError(f"config must be .toml or .json, got {p.suffix!r}")
        unknown = set(raw) - CONFIG_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
    q_min = float(raw.get("q_min", -5.0))
    q_max = float(raw.get("q_max", 5.0))
    q_step = float(raw.get("q_step", 0.5))
    scale_max = raw.get("scale_max")
    analysis = AnalysisConfig(
        scale_min=int(raw.get("scale_min", 16)),
        scale_max=None if scale_max is None else int(scale_max),
        n_scales=int(raw.get("n_scales", 30)),
        q_values=build_q_grid(q_min, q_max, q_step),
        detrend_order=int(raw.get("detrend_order", 1)),
        min_fit_r2=float(raw.get("min_fit_r2", 0.97)),
    )
    return RunConfig(
        analysis=analysis,
        q_min=q_min,
        q_max=q_max,
        q_step=q_step,
        segment_seconds=float(raw.get("segment_seconds", 45.0)),
        seed=int(raw.get("seed", 0)),
        emit_plots=bool(raw.get("emit_plots", True)),
        manifest=raw.get("manifest"),
        out=raw.get("out"),
    )


# ---------------------------------------------------------------- file I/O

def atomic_write(path: Path, text: str) -> None:
    """Write text with \\n newlines via a temp file and atomic rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(text.encode("utf-8"))
    os.replace(tmp, path)


def write_csv(path: Path, header: tuple, rows: list) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    atomic_write(path, buf.getvalue())


def write_json(path: Path, obj) -> None:
    atomic_write(path, json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n")


def _jsonable(obj):
    """Recursively map non-finite floats to None; JSON has no NaN."""
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def _fnum(v: float) -> str:
    """Shortest exact decimal form of a float, for CSV cells."""
    return repr(float(v))


def _read_manifest(path: Path) -> list[tuple[Path, str, ClipMetadata]]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(LABEL_COLUMNS) - set(reader.fieldnames):
            raise ValueError(
                f"manifest must have columns {','.join(LABEL_COLUMNS)}"
            )
        entries = []
        for row in reader:
            clip_path = Path(row["path"])
            if not clip_path.is_absolute():
                clip_path = path.parent / clip_path
            meta = ClipMetadata(
                raga=row["raga"], artist=row["artist"],
                instrument=row["instrument"], valence=row["valence"],
            )
            entries.append((clip_path, Path(row["path"]).stem, meta))
    ids = [clip_id for _, clip_id, _ in entries]
    dupes = sorted({i for i in ids if ids.count(i) > 1})
    if dupes:
        raise ValueError(f"duplicate clip ids in manifest: {dupes}")
    return entries


def read_segment_reports(path: Path) -> list[SegmentReport]:
    """Parse a segments.csv written by `analyze` back into reports."""
    if not path.is_file():
        raise MissingArtifacts(f"missing {path}")
    reports = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != SEGMENT_COLUMNS:
            raise ValueError(f"{path} does not look like a segments.csv")
        for row in reader:
            flags = frozenset(f for f in row["quality_flags"].split(";") if f)
            reports.append(
                SegmentReport(
                    clip_id=row["clip_id"],
                    metadata=ClipMetadata(
                        raga=row["raga"], artist=row["artist"],
                        instrument=row["instrument"], valence=row["valence"],
                    ),
                    segment_index=int(row["segment_index"]),
                    width_W=float(row["width_W"]),
                    width_direct=float(row["width_direct"]),
                    h2=float(row["h2"]),
                    alpha0=float(row["alpha0"]),
                    asymmetry_B=float(row["asymmetry_B"]),
                    quality_flags=flags,
                )
            )
    return reports


def _read_series_file(path: Path) -> TimeSeries:
    """Load a WAV or single-column CSV as a series for resynthesis."""
    if path.suffix.lower() == ".wav":
        return load_wav(path)
    values = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                values.append(float(line))
    return TimeSeries(samples=np.asarray(values, dtype=np.float64))


def _write_series_file(path: Path, ts: TimeSeries, rate: float) -> None:
    if path.suffix.lower() == ".wav":
        out_ts = ts if ts.sample_rate else TimeSeries(ts.samples, sample_rate=rate)
        path.parent.mkdir(parents=True, exist_ok=True)
        save_wav(path, out_ts)
    else:
        atomic_write(path, "".join(_fnum(v) + "\n" for v in ts.samples))


# ---------------------------------------------------------------- analyze

def _segment_row(rep: SegmentReport) -> list:
    m = rep.metadata
    return [
        rep.clip_id, rep.segment_index, m.raga, m.artist, m.instrument, m.valence,
        _fnum(rep.width_W), _fnum(rep.width_direct), _fnum(rep.h2),
        _fnum(rep.alpha0), _fnum(rep.asymmetry_B),
        ";".join(sorted(rep.quality_flags)),
    ]


def _export_clip_curves(clip_dir: Path, results: list) -> None:
    """Per-clip data exports: fluctuation surface, h(q), and f(alpha) curves."""
    fluct_rows, hurst_rows, spec_rows = [], [], []
    hurst_series, spec_series, loglog_series = [], [], []
    for seg_idx, (surface, hs, spectrum) in results:
        for qi, q in enumerate(surface.q_values):
            for si, s in enumerate(surface.scales):
                fluct_rows.append(
                    [seg_idx, _fnum(q), int(s), _fnum(surface.F[qi, si])]
                )
        for qi, q in enumerate(hs.q_values):
            hurst_rows.append(
                [seg_idx, _fnum(q), _fnum(hs.h[qi]), _fnum(hs.fit_r2[qi]),
                 _fnum(hs.tau[qi])]
            )
            spec_rows.append(
                [seg_idx, _fnum(q), _fnum(spectrum.alpha[qi]),
                 _fnum(spectrum.f_alpha[qi])]
            )
        label = f"segment {seg_idx}"
        hurst_series.append((label, list(hs.q_values), list(hs.h)))
        spec_series.append((label, list(spectrum.alpha), list(spectrum.f_alpha)))
        q2 = int(np.nonzero(surface.q_values == 2.0)[0][0])
        loglog_series.append(
            (label, list(np.log(surface.scales.astype(float))),
             list(np.log(surface.F[q2])))
        )
    write_csv(clip_dir / "fluctuation.csv",
              ("segment_index", "q", "scale", "F"), fluct_rows)
    write_csv(clip_dir / "hurst.csv",
              ("segment_index", "q", "h", "fit_r2", "tau"), hurst_rows)
    write_csv(clip_dir / "spectrum.csv",
              ("segment_index", "q", "alpha", "f_alpha"), spec_rows)
    atomic_write(clip_dir / "hurst.svg",
                 svg_plot(hurst_series, title="Generalized Hurst exponents",
                          xlabel="q", ylabel="h(q)"))
    atomic_write(clip_dir / "spectrum.svg",
                 svg_plot(spec_series, title="Singularity spectrum",
                          xlabel="alpha", ylabel="f(alpha)"))
    atomic_write(clip_dir / "fluctuation.svg",
                 svg_plot(loglog_series, title="Scaling at q=2",
                          xlabel="ln scale", ylabel="ln F"))


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = load_run_config(args.config)
    manifest = args.manifest or cfg.manifest
    out = args.out or cfg.out
    if manifest is None:
        print("error: no manifest given (--manifest or config key)", file=sys.stderr)
        return 2
    if out is None:
        print("error: no output directory given (--out or config key)", file=sys.stderr)
        return 2
    if args.no_plots:
        cfg = RunConfig(**{**cfg.__dict__, "emit_plots": False})
    cfg = RunConfig(**{**cfg.__dict__, "manifest": manifest, "out": out})

    entries = _read_manifest(Path(manifest))
    if not entries:
        print("error: no inputs", file=sys.stderr)
        return 2

    out_dir = Path(out)
    reports: list[SegmentReport] = []
    errors: list[dict] = []
    for clip_path, clip_id, meta in entries:
        try:
            ts = load_wav(clip_path)
            segments = segment(ts, cfg.segment_seconds)
            results = []
            for idx, seg_ts in enumerate(segments):
                surface, hs, spectrum = analyze(seg_ts, cfg.analysis)
                flags = quality_flags(surface, hs, spectrum, cfg.analysis)
                reports.append(
                    SegmentReport(
                        clip_id=clip_id, metadata=meta, segment_index=idx,
                        width_W=spectrum.width_W,
                        width_direct=spectrum.width_direct,
                        h2=hs.h_at(2.0), alpha0=spectrum.alpha0,
                        asymmetry_B=spectrum.asymmetry_B,
                        quality_flags=frozenset(flags),
                    )
                )
                results.append((idx, (surface, hs, spectrum)))
            if cfg.emit_plots:
                _export_clip_curves(out_dir / "clips" / clip_id, results)
        except (MfspecError, OSError, ValueError) as exc:
            errors.append(
                {"clip_id": clip_id, "error": type(exc).__name__,
                 "message": str(exc)}
            )

    reports.sort(key=lambda r: (r.clip_id, r.segment_index))
    write_csv(out_dir / "segments.csv", SEGMENT_COLUMNS,
              [_segment_row(r) for r in reports])
    write_json(
        out_dir / "segments.json",
        [
            {
                "clip_id": r.clip_id, "segment_index": r.segment_index,
                "raga": r.metadata.raga, "artist": r.metadata.artist,
                "instrument": r.metadata.instrument,
                "valence": r.metadata.valence,
                "width_W": r.width_W, "width_direct": r.width_direct,
                "h2": r.h2, "alpha0": r.alpha0, "asymmetry_B": r.asymmetry_B,
                "quality_flags": sorted(r.quality_flags),
            }
            for r in reports
        ],
    )
    write_json(out_dir / "run.json", cfg.to_mapping())
    write_json(out_dir / "errors.json", sorted(errors, key=lambda e: e["clip_id"]))
    for err in errors:
        print(f"error: {err['clip_id']}: {err['message']}", file=sys.stderr)
    return 0 if not errors else 1


# ------------------------------------------------------------------ synth

def cmd_synth(args: argparse.Namespace) -> int:
    out = Path(args.out)
    meta: dict = {"kind": args.kind, "seed": args.seed}
    if args.kind == "white":
        ts = white_noise(args.n, seed=args.seed)
        meta["n"] = args.n
    elif args.kind == "fgn":
        if args.h is None:
            raise ValueError("fgn requires --h")
        ts = fgn(args.n, args.h, seed=args.seed)
        meta.update(n=args.n, h=args.h)
    elif args.kind == "cascade":
        ts = binomial_cascade(CascadeParams(levels=args.k, a=args.a))
        meta.update(k=args.k, a=args.a)
        del meta["seed"]  # deterministic construction, no randomness
    elif args.kind == "shuffle":
        if args.source is None:
            raise ValueError("shuffle requires --in FILE")
        ts = shuffle(_read_series_file(Path(args.source)), seed=args.seed)
        meta["source"] = str(args.source)
    else:  # unreachable through argparse choices
        raise ValueError(f"unknown kind {args.kind!r}")
    if out.suffix.lower() == ".wav":
        meta["rate"] = args.rate
    _write_series_file(out, ts, args.rate)
    write_json(Path(str(out) + ".json"), meta)
    return 0


# --------------------------------------------------------------- classify

def _aggregate_row(agg: ClipAggregate) -> list:
    m = agg.metadata
    return [agg.clip_id, m.raga, m.artist, m.instrument, m.valence,
            _fnum(agg.mean_width)]


def cmd_classify(args: argparse.Namespace) -> int:
    reports = read_segment_reports(Path(args.reports) / "segments.csv")
    labels_by_id: dict[str, ClipMetadata] = {}
    with open(args.labels, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or set(LABEL_COLUMNS) - set(reader.fieldnames):
            raise ValueError(f"labels must have columns {','.join(LABEL_COLUMNS)}")
        for row in reader:
            labels_by_id[Path(row["path"]).stem] = ClipMetadata(
                raga=row["raga"], artist=row["artist"],
                instrument=row["instrument"], valence=row["valence"],
            )
    missing = sorted({r.clip_id for r in reports} - set(labels_by_id))
    if missing:
        raise UnlabeledClip(f"no label row for clip(s): {', '.join(missing)}")
    # The label file is authoritative for metadata at classification time.
    relabeled = [
        SegmentReport(
            clip_id=r.clip_id, metadata=labels_by_id[r.clip_id],
            segment_index=r.segment_index, width_W=r.width_W,
            width_direct=r.width_direct, h2=r.h2, alpha0=r.alpha0,
            asymmetry_B=r.asymmetry_B, quality_flags=r.quality_flags,
        )
        for r in reports
    ]
    aggregates = aggregate(relabeled)
    out_dir = Path(args.out)
    write_csv(out_dir / "aggregates.csv",
              ("clip_id", "raga", "artist", "instrument", "valence", "mean_width"),
              [_aggregate_row(a) for a in aggregates])

    failures = []
    thresholds = {}
    for instrument in sorted({a.metadata.instrument for a in aggregates}):
        try:
            thresholds[instrument] = learn_threshold(aggregates, instrument)
        except SingleClassOnly as exc:
            failures.append(f"{type(exc).__name__}: {exc}")
    write_json(
        out_dir / "thresholds.json",
        {
            inst: {
                "orientation": t.orientation, "threshold": t.threshold,
                "margin": t.margin, "overlap": t.overlap,
                "upper_class_min": t.upper_class_min,
                "lower_class_max": t.lower_class_max,
            }
            for inst, t in thresholds.items()
        },
    )
    rows = []
    for agg in aggregates:
        t = thresholds.get(agg.metadata.instrument)
        if t is None:
            continue
        c = classify(agg.mean_width, t)
        rows.append([agg.clip_id, c.label, _fnum(c.confidence),
                     "true" if c.ambiguous else "false"])
    write_csv(out_dir / "classified.csv",
              ("clip_id", "label", "confidence", "ambiguous"), rows)
    for msg in failures:
        print(f"warning: {msg}", file=sys.stderr)
    return 0 if not failures else 1


# ----------------------------------------------------------------- report

def _slug(name: str) -> str:
    return "".join(c if c.isalnum() else "_" for c in name.lower())


def _clip_means(reports: list[SegmentReport]) -> list[ClipAggregate]:
    return aggregate(reports)


def cmd_report(args: argparse.Namespace) -> int:
    run_dir = Path(args.run)
    reports = read_segment_reports(run_dir / "segments.csv")
    if not reports:
        raise MissingArtifacts(f"{run_dir}/segments.csv has no rows")
    report_dir = run_dir / "report"
    aggregates = _clip_means(reports)

    # Width-vs-segment series per raga, one line per artist.
    ragas = sorted({r.metadata.raga for r in reports})
    for raga in ragas:
        group = [r for r in reports if r.metadata.raga == raga]
        group.sort(key=lambda r: (r.metadata.artist, r.clip_id, r.segment_index))
        rows = [
            [r.metadata.artist, r.clip_id, r.segment_index, _fnum(r.width_W)]
            for r in group
        ]
        write_csv(report_dir / f"raga_{_slug(raga)}.csv",
                  ("artist", "clip_id", "segment_index", "width_W"), rows)
        series = []
        for artist in sorted({r.metadata.artist for r in group}):
            pts = [(r.segment_index, r.width_W) for r in group
                   if r.metadata.artist == artist and r.width_valid]
            if pts:
                series.append((artist, [p[0] for p in pts], [p[1] for p in pts]))
        atomic_write(report_dir / f"raga_{_slug(raga)}.svg",
                     svg_plot(series, title=f"Raga {raga}",
                              xlabel="segment", ylabel="width W"))

    # Artist-by-raga matrix of clip mean widths.
    artists = sorted({a.metadata.artist for a in aggregates})
    matrix_rows = []
    cluster_series = []
    for artist in artists:
        row: list = [artist]
        xs, ys = [], []
        for col, raga in enumerate(ragas):
            cell = [a.mean_width for a in aggregates
                    if a.metadata.artist == artist and a.metadata.raga == raga]
            if cell:
                mean = sum(cell) / len(cell)
                row.append(_fnum(mean))
                xs.append(float(col))
                ys.append(mean)
            else:
                row.append("")
        matrix_rows.append(row)
        if xs:
            cluster_series.append((artist, xs, ys))
    write_csv(report_dir / "artist_raga_matrix.csv",
              ("artist", *ragas), matrix_rows)
    atomic_write(report_dir / "artist_clusters.svg",
                 svg_plot(cluster_series, kind="scatter",
                          title="Mean width by artist and raga",
                          xlabel="raga index", ylabel="mean width W"))

    # Threshold bands per instrument, only when classify artifacts exist.
    thresholds_path = run_dir / "thresholds.json"
    skipped_bands = False
    if thresholds_path.is_file():
        with open(thresholds_path, encoding="utf-8") as fh:
            thresholds = json.load(fh)
        for instrument in sorted(thresholds):
            t = thresholds[instrument]
            clips = sorted(
                (a for a in aggregates if a.metadata.instrument == instrument),
                key=lambda a: a.clip_id,
            )
            rows = [
                [a.clip_id, a.metadata.valence, _fnum(a.mean_width),
                 _fnum(t["threshold"]), t["orientation"]]
                for a in clips
            ]
            write_csv(
                report_dir / f"threshold_band_{_slug(instrument)}.csv",
                ("clip_id", "valence", "mean_width", "threshold", "orientation"),
                rows,
            )
            series = []
            for valence in ("positive", "negative", "unlabeled"):
                pts = [(i, a.mean_width) for i, a in enumerate(clips)
                       if a.metadata.valence == valence]
                if pts:
                    series.append(
                        (valence, [float(p[0]) for p in pts], [p[1] for p in pts])
                    )
            bands = []
            if t["overlap"]:
                bands.append((t["upper_class_min"], t["lower_class_max"]))
            atomic_write(
                report_dir / f"threshold_band_{_slug(instrument)}.svg",
                svg_plot(series, kind="scatter",
                         title=f"Threshold band: {instrument}",
                         xlabel="clip index", ylabel="mean width W",
                         hlines=[("threshold", t["threshold"])], bands=bands),
            )
    else:
        skipped_bands = True
        print("warning: no thresholds.json in run directory; "
              "threshold bands skipped", file=sys.stderr)

    lines = [
        f"clips: {len(aggregates)}",
        f"segments: {len(reports)}",
        f"ragas: {', '.join(ragas)}",
        f"artists: {', '.join(artists)}",
    ]
    if not skipped_bands:
        for instrument in sorted(thresholds):
            t = thresholds[instrument]
            state = "overlap" if t["overlap"] else "separable"
            lines.append(
                f"{instrument}: threshold={t['threshold']:.4f} "
                f"margin={t['margin']:.4f} ({state}, {t['orientation']})"
            )
    atomic_write(report_dir / "summary.txt", "\n".join(lines) + "\n")
    return 0


# ------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mfspec",
        description="Multifractal spectral width analysis of audio clips.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_an = sub.add_parser("analyze", help="run the fluctuation pipeline over a manifest")
    p_an.add_argument("--manifest", help="CSV of clips: path,raga,artist,instrument,valence")
    p_an.add_argument("--config", help="TOML or JSON run configuration")
    p_an.add_argument("--out", help="output directory")
    p_an.add_argument("--no-plots", action="store_true",
                      help="skip per-clip curve exports")
    p_an.set_defaults(func=cmd_analyze)

    p_sy = sub.add_parser("synth", help="write a reference signal")
    p_sy.add_argument("kind", choices=("white", "fgn", "cascade", "shuffle"))
    p_sy.add_argument("--n", type=int, default=65536, help="sample count")
    p_sy.add_argument("--h", type=float, default=None, help="Hurst exponent for fgn")
    p_sy.add_argument("--k", type=int, default=16, help="cascade levels")
    p_sy.add_argument("--a", type=float, default=0.75, help="cascade weight in (0.5, 1)")
    p_sy.add_argument("--seed", type=int, default=0)
    p_sy.add_argument("--in", dest="source", default=None,
                      help="input series for shuffle (WAV or CSV)")
    p_sy.add_argument("--rate", type=float, default=DEFAULT_SAMPLE_RATE,
                      help="sample rate when writing WAV")
    p_sy.add_argument("--out", required=True, help="output file (.csv or .wav)")
    p_sy.set_defaults(func=cmd_synth)

    p_cl = sub.add_parser("classify", help="learn thresholds and label clips")
    p_cl.add_argument("--reports", required=True,
                      help="directory holding segments.csv from analyze")
    p_cl.add_argument("--labels", required=True,
                      help="CSV of labels: path,raga,artist,instrument,valence")
    p_cl.add_argument("--out", required=True, help="output directory")
    p_cl.set_defaults(func=cmd_classify)

    p_re = sub.add_parser("report", help="render tables and plots for a run")
    p_re.add_argument("--run", required=True,
                      help="directory holding analyze (and classify) outputs")
    p_re.set_defaults(func=cmd_report)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MfspecError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main(sys.argv[1:]))
