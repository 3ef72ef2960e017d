"""Channel matrix recovery, range-Doppler periodogram and peak estimation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadPadLength, DimensionMismatch, ZeroTxSymbol
from .params import C0, WaveformConfig, validate_config


@dataclass(frozen=True, eq=False)
class RangeDopplerMap:
    """Periodogram power, rows = range bins (K), columns = velocity bins (H).

    Velocity bin ``m`` maps to ``m * velocity_scale`` for ``m <= H/2`` and to
    ``(m - H) * velocity_scale`` above, so approaching targets (positive
    velocity) land in the lower half.
    """

    power: np.ndarray
    range_scale: float
    velocity_scale: float

    @property
    def K(self) -> int:
        return self.power.shape[0]

    @property
    def H(self) -> int:
        return self.power.shape[1]

    def ranges(self) -> np.ndarray:
        return np.arange(self.K) * self.range_scale

    def velocity_bins(self) -> np.ndarray:
        m = np.arange(self.H)
        return np.where(m > self.H // 2, m - self.H, m)

    def velocities(self) -> np.ndarray:
        return self.velocity_bins() * self.velocity_scale


@dataclass(frozen=True)
class TargetEstimate:
    range_hat: float
    velocity_hat: float
    peak_power: float
    peak_bin: tuple


def channel_matrix(frx: np.ndarray, ftx: np.ndarray) -> np.ndarray:
    """Element-wise Rx / Tx, removing the modulated data."""
    frx, ftx = np.asarray(frx), np.asarray(ftx)
    if frx.shape != ftx.shape:
        raise DimensionMismatch(f"Rx {frx.shape} and Tx {ftx.shape} differ")
    if np.any(ftx == 0):
        raise ZeroTxSymbol("transmitted frame contains a zero symbol")
    return frx / ftx


def package_series(F: np.ndarray, cfg: WaveformConfig) -> tuple[np.ndarray, float]:
    """Collapse an ``(N, M*L)`` matrix to uniformly spaced slow-time columns.

    Returns the matrix and its column spacing: for L > 1 the M symbols of each
    package are averaged (they span M*T_O << T_F) giving L columns at T_F;
    a single package keeps its M columns at T_O.
    """
    cfg = validate_config(cfg)
    F = np.asarray(F)
    if F.shape != (cfg.subcarriers, cfg.columns):
        raise DimensionMismatch(f"matrix {F.shape} != ({cfg.subcarriers}, {cfg.columns})")
    if cfg.packages == 1:
        return F, cfg.ofdm_duration
    if cfg.symbols_per_frame == 1:
        return F, cfg.package_interval
    M, L = cfg.symbols_per_frame, cfg.packages
    return F.reshape(cfg.subcarriers, L, M).mean(axis=2), cfg.package_interval


def periodogram(
    F: np.ndarray,
    K: int,
    H: int,
    subcarrier_spacing: float,
    carrier_frequency: float,
    slow_time_step: float,
) -> RangeDopplerMap:
    """2-D periodogram of a channel matrix with zero-padding to K x H.

    FFT of length H along each row (slow time), inverse DFT of length K along
    each column (subcarriers), normalised by 1/(N*C) with C the column count::

        P[n, m] = |sum_k (sum_h F[k, h] e^{-j 2 pi h m / H}) e^{+j 2 pi k n / K}|^2 / (N C)
    """
    F = np.asarray(F)
    N, C = F.shape
    if K < N or H < C:
        raise BadPadLength(f"pad lengths K={K}, H={H} smaller than matrix {F.shape}")
    X = np.fft.fft(F, n=H, axis=1)
    Y = K * np.fft.ifft(X, n=K, axis=0)
    power = (Y.real**2 + Y.imag**2) / (N * C)
    return RangeDopplerMap(
        power=power,
        range_scale=C0 / (2 * subcarrier_spacing * K),
        velocity_scale=C0 / (2 * carrier_frequency * slow_time_step * H),
    )


def range_doppler_map(F: np.ndarray, cfg: WaveformConfig, K: int, H: int) -> RangeDopplerMap:
    """Periodogram of `F` with axis scales taken from `cfg`."""
    cfg = validate_config(cfg)
    G, step = package_series(F, cfg)
    return periodogram(G, K, H, cfg.subcarrier_spacing, cfg.carrier_frequency, step)


def estimate_target(rd: RangeDopplerMap) -> TargetEstimate:
    """Global peak of the map; ties go to the lowest range bin, then velocity bin."""
    if rd.power.size == 0:
        raise ValueError("empty range-Doppler map")
    n, m = np.unravel_index(int(np.argmax(rd.power)), rd.power.shape)
    return TargetEstimate(
        range_hat=float(n * rd.range_scale),
        velocity_hat=float(rd.velocity_bins()[m] * rd.velocity_scale),
        peak_power=float(rd.power[n, m]),
        peak_bin=(int(n), int(m)),
    )
