"""Slow-time series, STFT spectrograms and micro-Doppler feature extraction."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.signal import windows

from .errors import EmptySpectrogram, NonPositiveInput, NoPeriodicity, SeriesTooShort
from .params import C0

SLOW_TIME_MODES = ("sum_subcarriers", "peak_range_bin")
WINDOWS = ("gaussian", "rectangular", "hann")


@dataclass(frozen=True)
class StftConfig:
    """STFT layout in slow-time samples.

    ``gaussian_std`` is the Gaussian window's standard deviation in samples;
    ``None`` means window_length / 6.
    """

    fft_length: int = 600
    window_length: int = 600
    hop: int = 30
    window: str = "gaussian"
    gaussian_std: float | None = None

    def __post_init__(self):
        if self.window not in WINDOWS:
            raise ValueError(f"unknown window {self.window!r}; expected one of {WINDOWS}")
        if not 1 <= self.window_length <= self.fft_length:
            raise ValueError("need 1 <= window_length <= fft_length")
        if not 1 <= self.hop <= self.window_length:
            raise ValueError("need 1 <= hop <= window_length")
        if self.gaussian_std is not None and not self.gaussian_std > 0:
            raise ValueError("gaussian_std must be positive")

    def taper(self) -> np.ndarray:
        q = self.window_length
        if self.window == "rectangular":
            return np.ones(q)
        if self.window == "hann":
            return windows.hann(q, sym=False) if q > 1 else np.ones(1)
        std = q / 6 if self.gaussian_std is None else self.gaussian_std
        return windows.gaussian(q, std)

    @classmethod
    def from_overlap(cls, fft_length: int, overlap: float, window_length: int | None = None, **kw):
        """Build from a fractional overlap, e.g. 0.95 -> hop of 5 % of the window."""
        q = fft_length if window_length is None else window_length
        hop = max(1, int(round(q * (1 - overlap))))
        return cls(fft_length=fft_length, window_length=q, hop=hop, **kw)


@dataclass(frozen=True, eq=False)
class Spectrogram:
    """Time-Doppler map, rows = Doppler bins (0 Hz centred), columns = frames.

    Row ``i`` is at ``(i - N_D // 2) * doppler_step``; frame ``m`` is centred
    at ``start_time + m * time_step``.
    """

    power: np.ndarray
    time_step: float
    doppler_step: float
    start_time: float = 0.0
    db_scaled: bool = False
    floor_db: float | None = None

    def frequencies(self) -> np.ndarray:
        nd = self.power.shape[0]
        return (np.arange(nd) - nd // 2) * self.doppler_step

    def times(self) -> np.ndarray:
        return self.start_time + np.arange(self.power.shape[1]) * self.time_step

    def in_db(self, floor_db: float = -40.0) -> "Spectrogram":
        return self if self.db_scaled else to_db(self, floor_db)


def range_profile_power(F: np.ndarray, K: int | None = None) -> np.ndarray:
    """IDFT over subcarriers (length K, default N) of every column, as power."""
    F = np.asarray(F)
    K = F.shape[0] if K is None else K
    Y = K * np.fft.ifft(F, n=K, axis=0)
    return Y.real**2 + Y.imag**2


def peak_range_bin(F: np.ndarray, K: int | None = None) -> int:
    """Range bin with the largest power summed over slow time (lowest bin on ties)."""
    return int(np.argmax(range_profile_power(F, K).sum(axis=1)))


def slow_time_series(F: np.ndarray, mode: str = "peak_range_bin", K: int | None = None) -> np.ndarray:
    """Reduce a channel matrix to one complex sample per column.

    ``sum_subcarriers`` sums each column; ``peak_range_bin`` takes the row of
    the range-transformed matrix at :func:`peak_range_bin`.
    """
    F = np.asarray(F)
    if F.size == 0:
        raise ValueError("empty channel matrix")
    if mode == "sum_subcarriers":
        return F.sum(axis=0)
    if mode == "peak_range_bin":
        K = F.shape[0] if K is None else K
        Y = K * np.fft.ifft(F, n=K, axis=0)
        k = int(np.argmax((Y.real**2 + Y.imag**2).sum(axis=1)))
        return Y[k]
    raise ValueError(f"unknown slow-time mode {mode!r}; expected one of {SLOW_TIME_MODES}")


def stft_spectrogram(series: np.ndarray, cfg: StftConfig, sample_rate: float) -> Spectrogram:
    """Short-time Fourier power of a slow-time series.

    Only frames with a full window are kept::

        D[i, m] = |sum_q x[q + m*hop] w(q) exp(-j 2 pi i q / N_D)|^2 / N_D

    The Doppler axis is shifted so 0 Hz sits in row N_D // 2.
    """
    x = np.asarray(series, dtype=np.complex128)
    q = cfg.window_length
    if x.ndim != 1 or x.size < q:
        raise SeriesTooShort(f"series of length {x.size} shorter than window {q}")
    frames = sliding_window_view(x, q)[:: cfg.hop] * cfg.taper()
    spec = np.fft.fft(frames, n=cfg.fft_length, axis=1)
    power = (spec.real**2 + spec.imag**2).T / cfg.fft_length
    return Spectrogram(
        power=np.fft.fftshift(power, axes=0),
        time_step=cfg.hop / sample_rate,
        doppler_step=sample_rate / cfg.fft_length,
        start_time=(q - 1) / (2 * sample_rate),
    )


def to_db(spec: Spectrogram, floor_db: float = -40.0) -> Spectrogram:
    """10 log10(p / p_max), clamped below at `floor_db`."""
    if spec.power.size == 0:
        raise EmptySpectrogram("spectrogram has no cells")
    if spec.db_scaled:
        raise ValueError("spectrogram is already in dB")
    p = spec.power
    pmax = p.max()
    if pmax <= 0:
        db = np.full(p.shape, float(floor_db))
    else:
        with np.errstate(divide="ignore"):
            db = np.maximum(10 * np.log10(p / pmax), floor_db)
    return dataclasses.replace(spec, power=db, db_scaled=True, floor_db=float(floor_db))


def _relative_db(spec: Spectrogram) -> np.ndarray:
    if spec.db_scaled:
        return spec.power - spec.power.max()
    p = spec.power
    pmax = p.max()
    if pmax <= 0:
        return np.full(p.shape, -np.inf)
    with np.errstate(divide="ignore"):
        return 10 * np.log10(p / pmax)


def doppler_envelope(spec: Spectrogram, threshold_db: float = 20.0) -> np.ndarray:
    """Per frame, the largest |Doppler| (Hz) within `threshold_db` of the global peak.

    Frames with no qualifying bin get 0.
    """
    hot = _relative_db(spec) >= -threshold_db
    f = np.abs(spec.frequencies())
    return np.where(hot, f[:, None], 0.0).max(axis=0)


def max_doppler(spec: Spectrogram, threshold_db: float = 20.0) -> float:
    """Largest |Doppler| bin centre exceeding (peak - threshold_db) in any frame."""
    if spec.power.size == 0:
        return 0.0
    env = doppler_envelope(spec, threshold_db)
    return float(env.max()) if env.size else 0.0


def dominant_period(trace: np.ndarray, min_peak: float = 0.3, near_tie: float = 0.1) -> float:
    """Repetition period of `trace` in samples from its autocorrelation.

    Looks at the normalised (biased) autocorrelation after its first dip
    below zero. Among the local maxima there, the smallest lag whose value is
    within `near_tie` of the highest one wins, which keeps the fundamental
    over its multiples. The lag is refined by a parabola through its
    neighbours.
    """
    x = np.asarray(trace, dtype=float)
    x = x - x.mean()
    energy = float(np.dot(x, x))
    scale = float(np.max(np.abs(trace))) if x.size else 0.0
    if x.size < 4 or energy <= 1e-24 * max(scale, 1.0) ** 2 * x.size:
        raise NoPeriodicity("trace has no variation")
    n = x.size
    spec = np.fft.rfft(x, n=2 * n)
    acf = np.fft.irfft(spec.real**2 + spec.imag**2)[:n] / energy
    below = np.flatnonzero(acf < 0)
    if below.size == 0 or below[0] >= n - 2:
        raise NoPeriodicity("autocorrelation never decorrelates")
    seg = acf[below[0] :]
    inner = np.flatnonzero((seg[1:-1] >= seg[:-2]) & (seg[1:-1] >= seg[2:])) + 1
    if inner.size == 0:
        raise NoPeriodicity("no autocorrelation peak after decorrelation")
    best = seg[inner].max()
    if best < min_peak:
        raise NoPeriodicity(f"autocorrelation peak {best:.3f} below {min_peak}")
    lag = int(below[0] + inner[np.flatnonzero(seg[inner] >= best - near_tie)[0]])
    y0, y1, y2 = acf[lag - 1], acf[lag], acf[lag + 1]
    curv = y0 - 2 * y1 + y2
    if curv < 0:
        return lag + 0.5 * (y0 - y2) / curv
    return float(lag)


def estimate_rotation_rate(
    spec: Spectrogram, n_blades: int = 4, threshold_db: float = 20.0, min_peak: float = 0.3
) -> float:
    """Rotation rate (rev/s) from the blade-flash period of the Doppler envelope.

    Each revolution produces `n_blades` flashes, so rate = 1 / (n_blades * T_flash).
    """
    if n_blades < 1:
        raise NonPositiveInput("n_blades must be >= 1")
    env = doppler_envelope(spec, threshold_db)
    period = dominant_period(env, min_peak) * spec.time_step
    return 1.0 / (n_blades * period)


def estimate_blade_length(f_d_max: float, rotation_rate: float, f_c: float) -> float:
    """Blade length from tip Doppler: V_t = f_D,max c0 / (2 f_c), R = V_t / (2 pi b_r)."""
    if f_d_max < 0 or not rotation_rate > 0 or not f_c > 0:
        raise NonPositiveInput("need f_d_max >= 0 and positive rotation rate and carrier")
    tip_speed = f_d_max * C0 / (2 * f_c)
    return tip_speed / (2 * np.pi * rotation_rate)
