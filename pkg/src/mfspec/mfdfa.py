"""Multifractal detrended fluctuation analysis.

The canonical MF-DFA procedure (Kantelhardt et al., Physica A 316 (2002)
87-114): integrate the mean-subtracted signal into a profile, detrend it in
non-overlapping windows at many scales, average the squared residuals into
q-order fluctuation functions, read generalized Hurst exponents h(q) off
log-log scaling fits, and Legendre-transform into the singularity spectrum
(alpha, f(alpha)). The spectrum is summarized by a least-squares quadratic
whose zero crossings give the spectral width W, the complexity measure the
rest of this package consumes.

Windows are taken from both ends of the profile (2*Ns per scale) so trailing
samples are never discarded. Windows that detrend to exactly zero are
excluded from the q-averages; a scale with more than 5% zero windows is
dropped as degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isfinite

import numpy as np

from .errors import (
    AllZeroFluctuations,
    ComplexRoots,
    DegenerateSignal,
    EmptyGrid,
    InsufficientScales,
    NonConcaveSpectrum,
    ScaleTooLarge,
    ScaleTooSmallForOrder,
)
from .signal_io import TimeSeries

#: q grid covering both small- and large-fluctuation scaling, step 0.5.
DEFAULT_Q_VALUES = tuple(k / 2.0 for k in range(-10, 11))

#: Fraction of zero-residual windows beyond which a scale is unusable.
ZERO_WINDOW_LIMIT = 0.05

#: Windows whose residual power is below (this * max|Y|)^2 count as zero.
#: Exact polynomial stretches detrend to residuals of order eps*|Y|, not
#: to literal 0.0, so the cutoff must sit above float rounding noise.
ZERO_FLOOR_FACTOR = 1e-13

#: Minimum number of usable scales for a trustworthy log-log fit.
MIN_USABLE_SCALES = 8

#: Spectra whose alpha values all agree within this span are monofractal.
MONOFRACTAL_ALPHA_SPAN = 1e-12


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs of the fluctuation analysis.

    scale_max=None resolves to N//4 at analysis time, which keeps at least
    four windows per direction. The defaults follow standard MF-DFA
    practice; none of them is forced by the method itself.
    """

    scale_min: int = 16
    scale_max: int | None = None
    n_scales: int = 30
    q_values: tuple[float, ...] = DEFAULT_Q_VALUES
    detrend_order: int = 1
    min_fit_r2: float = 0.97

    def __post_init__(self):
        q = tuple(float(v) for v in self.q_values)
        object.__setattr__(self, "q_values", q)
        if not 1 <= self.detrend_order <= 3:
            raise ValueError("detrend_order must be 1, 2, or 3")
        if self.scale_min < 2 * (self.detrend_order + 2):
            raise ValueError(
                f"scale_min must be at least 2*(detrend_order+2)="
                f"{2 * (self.detrend_order + 2)}"
            )
        if self.scale_max is not None and self.scale_max <= self.scale_min:
            raise ValueError("scale_max must exceed scale_min")
        if self.n_scales < MIN_USABLE_SCALES:
            raise ValueError(f"n_scales must be at least {MIN_USABLE_SCALES}")
        if len(set(q)) < 3:
            raise ValueError("q_values needs at least 3 distinct values")
        if any(b <= a for a, b in zip(q, q[1:])):
            raise ValueError("q_values must be sorted strictly ascending")
        if 2.0 not in q:
            raise ValueError("q_values must contain q=2")
        if not 0.0 <= self.min_fit_r2 <= 1.0:
            raise ValueError("min_fit_r2 must lie in [0, 1]")

    def resolved_scale_max(self, n_samples: int) -> int:
        """Concrete largest scale for a series of n_samples points."""
        limit = n_samples // 4
        smax = limit if self.scale_max is None else self.scale_max
        if smax > limit:
            raise ScaleTooLarge(
                f"scale_max {smax} exceeds N/4 = {limit} for N = {n_samples}"
            )
        if smax <= self.scale_min:
            raise ScaleTooLarge(
                f"series of {n_samples} samples leaves no room between "
                f"scale_min {self.scale_min} and N/4 = {limit}"
            )
        return smax


@dataclass(frozen=True)
class FluctuationSurface:
    """q-order RMS fluctuation F_q(s) over the (q, scale) grid."""

    scales: np.ndarray
    q_values: np.ndarray
    F: np.ndarray  # shape (len(q_values), len(scales))
    segments_used: np.ndarray  # windows per scale, forward + backward
    zero_windows: np.ndarray  # windows excluded from the averages per scale
    dropped_scales: tuple[int, ...] = ()

    def validate(self) -> None:
        """Check positivity and the power-mean ordering of F_q in q."""
        if not np.all(np.isfinite(self.F)) or np.any(self.F <= 0):
            raise ValueError("fluctuation surface must be finite and positive")
        lo, hi = self.F[:-1], self.F[1:]
        if not np.all(hi >= lo * (1.0 - 1e-9)):
            raise ValueError("F_q(s) must be non-decreasing in q at every scale")


@dataclass(frozen=True)
class HurstSpectrum:
    """Generalized Hurst exponents and the derived mass exponents."""

    q_values: np.ndarray
    h: np.ndarray
    fit_r2: np.ndarray
    tau: np.ndarray

    def h_at(self, q: float) -> float:
        idx = np.nonzero(self.q_values == q)[0]
        if idx.size == 0:
            raise KeyError(f"q={q} not on the analysis grid")
        return float(self.h[idx[0]])


@dataclass(frozen=True)
class SingularitySpectrum:
    """Singularity strengths, their dimensions, and width summaries.

    width_W comes from the fitted quadratic's zero crossings and is NaN
    when the fit is invalid (see flags); width_direct = max(alpha) -
    min(alpha) is always available as a fit-free fallback.
    """

    alpha: np.ndarray
    f_alpha: np.ndarray
    alpha0: float
    asymmetry_B: float
    width_W: float
    width_direct: float
    fit_coeffs: tuple[float, float, float]
    flags: tuple[str, ...] = ()


def profile(ts: TimeSeries) -> np.ndarray:
    """Cumulative sum of the mean-subtracted signal.

    Turns a noise-like series into a random-walk-like one whose windowed
    detrended variance carries the scaling information. The final value is
    zero up to rounding because the subtracted mean removes the total sum.
    """
    x = ts.samples
    if x.size < 2:
        raise ValueError("need at least 2 samples")
    if np.all(x == x[0]):
        raise DegenerateSignal("constant signal has no fluctuations to analyze")
    return np.cumsum(x - x.mean())


def scale_grid(scale_min: int, scale_max: int, n_scales: int) -> np.ndarray:
    """Logarithmically spaced integer scales, deduplicated and increasing.

    Raises EmptyGrid when integer rounding collapses the grid below
    min(n_scales, 8) distinct values.
    """
    if scale_min < 2 or scale_max <= scale_min or n_scales < 2:
        raise ValueError("need 2 <= scale_min < scale_max and n_scales >= 2")
    raw = np.geomspace(float(scale_min), float(scale_max), n_scales)
    scales = np.unique(np.rint(raw).astype(np.int64))
    if scales.size < min(n_scales, MIN_USABLE_SCALES):
        raise EmptyGrid(
            f"only {scales.size} distinct integer scales exist between "
            f"{scale_min} and {scale_max}"
        )
    return scales


def local_fluctuations(prof: np.ndarray, scale: int, order: int) -> np.ndarray:
    """Mean squared residual of a per-window polynomial detrend.

    The profile is cut into floor(N/scale) windows from the start and the
    same number from the end, so 2*Ns values are returned and the tail
    beyond Ns*scale is never discarded. Each window is detrended by a
    least-squares polynomial of the given order.
    """
    prof = np.asarray(prof, dtype=np.float64)
    n = prof.size
    if scale > n // 4:
        raise ScaleTooLarge(f"scale {scale} exceeds N/4 = {n // 4}")
    if scale < 2 * (order + 2):
        raise ScaleTooSmallForOrder(
            f"scale {scale} is too short for order-{order} detrending "
            f"(need at least {2 * (order + 2)})"
        )
    ns = n // scale
    # Orthonormal basis of the polynomial space on a [-1, 1] abscissa;
    # residuals are identical to a raw-index fit but far better conditioned.
    x = np.linspace(-1.0, 1.0, scale)
    vand = np.vander(x, order + 1, increasing=True)
    q_basis, _ = np.linalg.qr(vand)

    def residual_power(windows: np.ndarray) -> np.ndarray:
        resid = windows - (windows @ q_basis) @ q_basis.T
        return np.mean(resid * resid, axis=1)

    forward = prof[: ns * scale].reshape(ns, scale)
    backward = prof[n - ns * scale :].reshape(ns, scale)[::-1]
    return np.concatenate([residual_power(forward), residual_power(backward)])


def fluctuation_function(f2: np.ndarray, q: float) -> float:
    """q-order average of squared window fluctuations.

    For q != 0 this is the power mean ( <(F^2)^(q/2)> )^(1/q); q = 0 uses
    its logarithmic limit exp( <ln F^2> / 2 ). Zero-valued windows are
    excluded, since they would pin negative-q averages and break the
    geometric mean.
    """
    f2 = np.asarray(f2, dtype=np.float64)
    if np.any(f2 < 0):
        raise ValueError("squared fluctuations must be non-negative")
    nz = f2[f2 > 0]
    if nz.size == 0:
        raise AllZeroFluctuations("every window detrended to exactly zero")
    log_f2 = np.log(nz)
    if q == 0.0:
        return float(np.exp(0.5 * np.mean(log_f2)))
    # Evaluate through logs so strongly negative q cannot overflow; the
    # expm1/log1p pair keeps precision when q is tiny, where plain exp
    # rounds to 1.0 and would snap the mean to max(F) instead of the
    # geometric-mean limit.
    v = 0.5 * q * log_f2
    vmax = v.max()
    return float(np.exp((vmax + np.log1p(np.mean(np.expm1(v - vmax)))) / q))


def fluctuation_surface(
    prof: np.ndarray,
    scales: np.ndarray,
    q_values: tuple[float, ...] | np.ndarray,
    order: int,
) -> FluctuationSurface:
    """Evaluate F_q(s) over the grid, dropping degenerate scales."""
    q_arr = np.asarray(q_values, dtype=np.float64)
    zero_floor = (ZERO_FLOOR_FACTOR * np.max(np.abs(prof))) ** 2
    kept, dropped = [], []
    columns, used, zeros = [], [], []
    for scale in np.asarray(scales, dtype=np.int64):
        f2 = local_fluctuations(prof, int(scale), order)
        nonzero = f2[f2 > zero_floor]
        n_zero = f2.size - nonzero.size
        if n_zero > ZERO_WINDOW_LIMIT * f2.size:
            dropped.append(int(scale))
            continue
        columns.append([fluctuation_function(nonzero, q) for q in q_arr])
        kept.append(int(scale))
        used.append(f2.size)
        zeros.append(n_zero)
    if not kept:
        raise AllZeroFluctuations("no scale produced usable fluctuations")
    return FluctuationSurface(
        scales=np.asarray(kept, dtype=np.int64),
        q_values=q_arr,
        F=np.asarray(columns, dtype=np.float64).T,
        segments_used=np.asarray(used, dtype=np.int64),
        zero_windows=np.asarray(zeros, dtype=np.int64),
        dropped_scales=tuple(dropped),
    )


def _ols_loglog(log_s: np.ndarray, log_f: np.ndarray) -> tuple[float, float]:
    """Slope and r-squared of an ordinary least-squares line."""
    x = log_s - log_s.mean()
    y = log_f - log_f.mean()
    sxx = float(x @ x)
    slope = float(x @ y) / sxx
    ss_res = float(y @ y) - slope * slope * sxx
    ss_tot = float(y @ y)
    if ss_tot <= 1e-300:
        return slope, 1.0
    return slope, max(0.0, 1.0 - ss_res / ss_tot)


def hurst_spectrum(surface: FluctuationSurface, config: AnalysisConfig) -> HurstSpectrum:
    """Generalized Hurst exponents from log-log scaling of F_q(s).

    h(q) is the slope of ln F_q(s) against ln s over every usable scale;
    the mass exponent follows as tau(q) = q*h(q) - 1.
    """
    if surface.scales.size < MIN_USABLE_SCALES:
        raise InsufficientScales(
            f"only {surface.scales.size} usable scales remain "
            f"(need {MIN_USABLE_SCALES})"
        )
    log_s = np.log(surface.scales.astype(np.float64))
    h = np.empty(surface.q_values.size)
    r2 = np.empty(surface.q_values.size)
    for i in range(surface.q_values.size):
        h[i], r2[i] = _ols_loglog(log_s, np.log(surface.F[i]))
    tau = surface.q_values * h - 1.0
    return HurstSpectrum(q_values=surface.q_values.copy(), h=h, fit_r2=r2, tau=tau)


def quadratic_width(
    alpha: np.ndarray,
    f_alpha: np.ndarray,
    alpha0: float | None = None,
) -> tuple[float, float, float, float]:
    """Fit f(alpha) = A(alpha-alpha0)^2 + B(alpha-alpha0) + C and widen to zero.

    The fit runs over all points with f > 0; the width W is the distance
    between the zero crossings of the fitted parabola. B measures spectrum
    asymmetry (zero for a symmetric spectrum) and C should sit near the
    peak value 1, which makes it a quality diagnostic for the fit.
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    f_alpha = np.asarray(f_alpha, dtype=np.float64)
    keep = f_alpha > 0
    a_pts, f_pts = alpha[keep], f_alpha[keep]
    if np.unique(a_pts).size < 3:
        raise ValueError("need at least 3 distinct alpha points with f > 0")
    if np.all(f_pts == f_pts[0]):
        raise ValueError("f values are all equal; nothing to fit")
    if alpha0 is None:
        peak = np.nonzero(f_pts >= f_pts.max())[0]
        alpha0 = float(a_pts[peak].min())
    x = a_pts - alpha0
    design = np.column_stack([x * x, x, np.ones_like(x)])
    (coef_a, coef_b, coef_c), *_ = np.linalg.lstsq(design, f_pts, rcond=None)
    if coef_a >= 0:
        raise NonConcaveSpectrum(f"fitted quadratic opens upward (A = {coef_a:.4g})")
    disc = coef_b * coef_b - 4.0 * coef_a * coef_c
    if disc < 0:
        raise ComplexRoots("fitted quadratic never reaches zero")
    width = float(np.sqrt(disc) / abs(coef_a))
    return float(coef_a), float(coef_b), float(coef_c), width


def singularity_spectrum(hs: HurstSpectrum) -> SingularitySpectrum:
    """Legendre-transform h(q) into the singularity spectrum.

    h'(q) comes from central finite differences on the q grid (one-sided
    at the ends); then alpha = h + q h' and f = q (alpha - h) + 1. A failed
    quadratic fit is reported through flags with width_W = NaN instead of
    aborting, so the fit-free width_direct is always available.
    """
    q = hs.q_values
    if q.size < 3:
        raise ValueError("need at least 3 q points to differentiate h(q)")
    hprime = np.gradient(hs.h, q, edge_order=2)
    alpha = hs.h + q * hprime
    f_alpha = q * (alpha - hs.h) + 1.0

    peak = np.nonzero(f_alpha >= f_alpha.max())[0]
    alpha0 = float(alpha[peak].min())
    width_direct = float(alpha.max() - alpha.min())

    flags: list[str] = []
    if f_alpha.max() > 1.1:
        flags.append("falpha_peak_excess")

    if width_direct < MONOFRACTAL_ALPHA_SPAN:
        # Constant h(q): the spectrum collapses to a point of width zero.
        return SingularitySpectrum(
            alpha=alpha, f_alpha=f_alpha, alpha0=alpha0, asymmetry_B=float("nan"),
            width_W=0.0, width_direct=width_direct,
            fit_coeffs=(float("nan"), float("nan"), float("nan")),
            flags=tuple(flags + ["degenerate_spectrum"]),
        )

    try:
        coef_a, coef_b, coef_c, width = quadratic_width(alpha, f_alpha, alpha0)
    except NonConcaveSpectrum:
        flags.append("nonconcave_spectrum")
    except ComplexRoots:
        flags.append("complex_roots")
    except ValueError:
        flags.append("quadratic_fit_failed")
    else:
        return SingularitySpectrum(
            alpha=alpha, f_alpha=f_alpha, alpha0=alpha0, asymmetry_B=coef_b,
            width_W=width, width_direct=width_direct,
            fit_coeffs=(coef_a, coef_b, coef_c), flags=tuple(flags),
        )
    return SingularitySpectrum(
        alpha=alpha, f_alpha=f_alpha, alpha0=alpha0, asymmetry_B=float("nan"),
        width_W=float("nan"), width_direct=width_direct,
        fit_coeffs=(float("nan"), float("nan"), float("nan")), flags=tuple(flags),
    )


def analyze(
    ts: TimeSeries, config: AnalysisConfig | None = None
) -> tuple[FluctuationSurface, HurstSpectrum, SingularitySpectrum]:
    """Run the full fluctuation pipeline on one series.

    Deterministic composition: profile, windowed detrending over a
    log-spaced scale grid, q-order fluctuation functions, scaling fits,
    and the singularity spectrum with both width measures.

    Parameters
    ----------
    ts : TimeSeries
        Series to analyze; must be non-constant and long enough that
        scale_min < N//4.
    config : AnalysisConfig, optional
        Analysis knobs; defaults follow standard practice.

    Returns
    -------
    (FluctuationSurface, HurstSpectrum, SingularitySpectrum)
    """
    config = config or AnalysisConfig()
    n = len(ts)
    smax = config.resolved_scale_max(n)
    scales = scale_grid(config.scale_min, smax, config.n_scales)
    prof = profile(ts)
    terminal_tol = 1e-9 * n * np.abs(ts.samples).max()
    if abs(prof[-1]) > terminal_tol:
        raise RuntimeError("profile does not return to zero; accumulation error")
    surface = fluctuation_surface(prof, scales, config.q_values, config.detrend_order)
    surface.validate()
    hs = hurst_spectrum(surface, config)
    spec = singularity_spectrum(hs)
    if isfinite(spec.width_W) and spec.width_W < 0:
        raise RuntimeError("negative spectral width")
    return surface, hs, spec


def quality_flags(
    surface: FluctuationSurface,
    hs: HurstSpectrum,
    spec: SingularitySpectrum,
    config: AnalysisConfig,
) -> set[str]:
    """Collect per-analysis quality annotations.

    Flags expose weak fits instead of aborting, so widths are still
    reported for every segment the way downstream aggregation expects.
    """
    flags = set(spec.flags)
    if np.any(hs.fit_r2 < config.min_fit_r2):
        flags.add("low_fit_r2")
    if surface.dropped_scales:
        flags.add("dropped_scales")
    return flags
