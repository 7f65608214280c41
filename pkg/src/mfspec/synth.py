"""Synthetic series with known scaling behavior.

These generators exist so the fluctuation analysis can be checked against
closed-form answers: white noise and fractional Gaussian noise pin the
generalized Hurst exponent at q=2, the deterministic binomial cascade pins
the whole h(q) curve, and shuffling provides correlation-destroying
surrogates. All randomness goes through ``numpy.random.default_rng`` (PCG64),
so every generator is a pure function of its parameters and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmbeddingFailure
from .signal_io import TimeSeries


@dataclass(frozen=True)
class CascadeParams:
    """Binomial cascade controls: series length 2**levels, weight split a : 1-a."""

    levels: int
    a: float

    def __post_init__(self):
        if not 1 <= self.levels <= 24:
            raise ValueError("levels must be between 1 and 24")
        if not 0.5 < self.a < 1.0:
            raise ValueError("weight a must lie strictly between 0.5 and 1")


def white_noise(n: int, seed: int) -> TimeSeries:
    """n i.i.d. standard Gaussian samples, deterministic per seed."""
    if n < 2:
        raise ValueError("n must be at least 2")
    rng = np.random.default_rng(seed)
    return TimeSeries(samples=rng.standard_normal(n), label=f"white(n={n},seed={seed})")


def fgn_autocovariance(H: float, lags: np.ndarray | int) -> np.ndarray:
    """Exact autocovariance of unit-variance fractional Gaussian noise."""
    k = np.asarray(lags, dtype=np.float64)
    return 0.5 * (
        np.abs(k + 1) ** (2 * H) - 2 * np.abs(k) ** (2 * H) + np.abs(k - 1) ** (2 * H)
    )


def fgn(n: int, H: float, seed: int) -> TimeSeries:
    """Fractional Gaussian noise with Hurst parameter H via circulant embedding.

    The exact autocovariance is embedded in a circulant matrix of order 2n
    whose eigenvalues come from one FFT; sampling in the spectral domain
    then reproduces the target covariance without approximation (the
    Davies-Harte construction).

    Parameters
    ----------
    n : int
        Number of samples; must be a power of two.
    H : float
        Hurst parameter in (0, 1). H=0.5 reduces to white noise.
    seed : int
        Seed for the pinned PCG64 generator.

    Raises
    ------
    EmbeddingFailure
        If the circulant eigenvalue spectrum goes negative, which happens
        for some (n, H) combinations with very small n; retry with a larger
        n in that case.
    """
    if n < 2 or (n & (n - 1)) != 0:
        raise ValueError("n must be a power of two, at least 2")
    if not 0.0 < H < 1.0:
        raise ValueError("H must lie strictly between 0 and 1")

    m = 2 * n
    row = np.empty(m)
    row[: n + 1] = fgn_autocovariance(H, np.arange(n + 1))
    row[n + 1 :] = row[1:n][::-1]
    lam = np.fft.fft(row).real

    tol = 1e-10 * lam.max()
    if lam.min() < -tol:
        raise EmbeddingFailure(
            f"circulant eigenvalues reach {lam.min():.3e} for n={n}, H={H}; "
            "retry with a larger (power-of-two) n"
        )
    lam = np.clip(lam, 0.0, None)

    rng = np.random.default_rng(seed)
    a = rng.standard_normal(n + 1)
    b = rng.standard_normal(n + 1)
    # Hermitian spectral sample: real weights at DC and Nyquist, conjugate
    # pairs elsewhere, so the transform is real with covariance gamma.
    w = np.zeros(m, dtype=np.complex128)
    w[0] = math.sqrt(lam[0] / m) * a[0]
    w[n] = math.sqrt(lam[n] / m) * a[n]
    half = np.sqrt(lam[1:n] / (2 * m))
    w[1:n] = half * (a[1:n] + 1j * b[1:n])
    w[n + 1 :] = np.conj(w[1:n][::-1])
    samples = np.fft.fft(w).real[:n]
    return TimeSeries(samples=samples, label=f"fgn(n={n},H={H},seed={seed})")


def binomial_cascade(params: CascadeParams) -> TimeSeries:
    """Deterministic multiplicative binomial measure of length 2**levels.

    Starting from a single unit cell, each cell x splits into adjacent
    cells (x*a, x*(1-a)) at every level. The result is strictly positive,
    sums to one, and its generalized Hurst exponents equal
    :func:`analytic_cascade_hurst` exactly in the infinite-size limit.
    """
    cells = np.ones(1)
    for _ in range(params.levels):
        nxt = np.empty(cells.size * 2)
        nxt[0::2] = cells * params.a
        nxt[1::2] = cells * (1.0 - params.a)
        cells = nxt
    return TimeSeries(samples=cells, label=f"cascade(k={params.levels},a={params.a})")


def analytic_cascade_hurst(q: float, a: float) -> float:
    """Closed-form generalized Hurst exponent of the binomial cascade.

    h(q) = 1/q - ln(a^q + (1-a)^q) / (q ln 2) for q != 0; the q -> 0
    limit is -[ln a + ln(1-a)] / (2 ln 2).
    """
    if not 0.5 < a < 1.0:
        raise ValueError("weight a must lie strictly between 0.5 and 1")
    b = 1.0 - a
    if q == 0.0:
        return -(math.log(a) + math.log(b)) / (2.0 * math.log(2.0))
    return 1.0 / q - math.log(a**q + b**q) / (q * math.log(2.0))


def shuffle(ts: TimeSeries, seed: int) -> TimeSeries:
    """Uniformly random permutation of the samples, deterministic per seed.

    Preserves the sample multiset while destroying temporal correlation,
    which is the standard surrogate for separating correlation-driven
    multifractality from distribution-driven multifractality.
    """
    rng = np.random.default_rng(seed)
    label = f"shuffle({ts.label},seed={seed})" if ts.label else f"shuffle(seed={seed})"
    return TimeSeries(
        samples=rng.permutation(ts.samples),
        sample_rate=ts.sample_rate,
        label=label,
    )
