"""Received frame synthesis from slow-time scattering snapshots."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NonPositiveRange, SnapshotTimeMismatch
from .params import C0, WaveformConfig, validate_config
from .scene.snapshot import ScatterSnapshot
from .txgen import column_rng

_TIME_TOL = 1e-12
_NOISE_STREAM = 1


@dataclass(frozen=True)
class NoiseConfig:
    """Complex AWGN at `snr_db` relative to the mean power of the noiseless matrix."""

    snr_db: float = np.inf
    seed: int = 0
    enabled: bool = False

    def __post_init__(self):
        if self.enabled and not np.isfinite(self.snr_db):
            raise ValueError("enabled noise needs a finite snr_db")


def doppler_shift(v, f_c):
    """Doppler shift 2 v f_c / c0 (Hz); positive `v` is a closing target."""
    return 2.0 * np.asarray(v) * f_c / C0


def round_trip_delay(r):
    """Two-way propagation delay 2 r / c0 (s)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise NonPositiveRange("range must be positive")
    return 2.0 * r / C0


def _column(ftx_col, snap: ScatterSnapshot, offsets, f_c, frozen):
    acc = np.zeros(offsets.shape, dtype=np.complex128)
    for p, (r, a) in enumerate(zip(snap.ranges, snap.reflectivities)):
        tau = 2.0 * r / C0
        tau_rng = tau if frozen is None else frozen[p]
        acc += a * np.exp(-2j * np.pi * (tau * f_c + tau_rng * offsets))
    return acc * ftx_col


def synthesize_rx(
    ftx: np.ndarray,
    snapshots: Sequence[ScatterSnapshot],
    cfg: WaveformConfig,
    noise: NoiseConfig | None = None,
    workers: int = 1,
    range_migration: bool = True,
) -> np.ndarray:
    """Received frame matrix for a target frozen within each OFDM symbol.

    Column ``c`` sees snapshot ``c``, taken at ``m*T_O + l*T_F``::

        Rx[n, c] = sum_p a_p * Tx[n, c] * exp(-j 2 pi tau_p (n df + f_c)) + Z[n, c]

    with ``tau_p = 2 r_p / c0``. Motion enters only through the delays, so the
    Doppler progression follows any trajectory, accelerating or not.

    With ``range_migration=False`` the subcarrier term keeps each point's
    delay from the first snapshot while the carrier term still follows
    ``tau_p(t)``. For a constant-velocity point this is exactly the classic
    form ``a exp(j 2 pi f_D t) exp(-j 2 pi tau_0 (n df + f_c))``: no range walk
    across the CPI and Doppler referenced to f_c. Every snapshot must then
    carry the same number of points.

    Columns are independent; ``workers > 1`` spreads them over threads and
    gives bit-identical output. Noise of column ``c`` comes from a substream
    keyed on (noise.seed, c).
    """
    cfg = validate_config(cfg)
    ftx = np.asarray(ftx)
    if ftx.shape != (cfg.subcarriers, cfg.columns):
        raise DimensionMismatch(f"Tx frame {ftx.shape} != ({cfg.subcarriers}, {cfg.columns})")
    if len(snapshots) != cfg.columns:
        raise DimensionMismatch(f"{len(snapshots)} snapshots for {cfg.columns} columns")
    times = cfg.column_times()
    for c, snap in enumerate(snapshots):
        if abs(snap.time - times[c]) > _TIME_TOL:
            raise SnapshotTimeMismatch(
                f"snapshot {c} at t={snap.time!r} s, expected {times[c]!r} s"
            )
    frozen = None
    if not range_migration and cfg.columns:
        frozen = 2.0 * snapshots[0].ranges / C0
        if any(s.n_points != frozen.size for s in snapshots):
            raise DimensionMismatch("range_migration=False needs a fixed point count")
    offsets = np.arange(cfg.subcarriers) * cfg.subcarrier_spacing
    f_c = cfg.carrier_frequency
    out = np.empty(ftx.shape, dtype=np.complex128)

    def fill(cols):
        for c in cols:
            out[:, c] = _column(ftx[:, c], snapshots[c], offsets, f_c, frozen)

    if workers > 1:
        chunks = np.array_split(np.arange(cfg.columns), workers)
        with ThreadPoolExecutor(workers) as pool:
            list(pool.map(fill, chunks))
    else:
        fill(range(cfg.columns))

    if noise is not None and noise.enabled:
        p_sig = float(np.mean(np.abs(out) ** 2))
        std = np.sqrt(p_sig * 10.0 ** (-noise.snr_db / 10.0) / 2.0)
        for c in range(cfg.columns):
            z = column_rng(noise.seed, c, _NOISE_STREAM).standard_normal((2, cfg.subcarriers))
            out[:, c] += std * (z[0] + 1j * z[1])
    return out
