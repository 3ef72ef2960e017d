"""Waveform/system parameters, their consistency checks and resolution limits."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Optional

from .errors import InconsistentTiming, NonPositiveParameter

#: Speed of light used throughout the simulator (m/s). The rounded value keeps
#: Doppler figures such as 2 * 10 m/s * 28 GHz / c0 = 1866.7 Hz reproducible.
C0 = 3.0e8

ALPHABETS = ("qpsk", "bpsk", "16qam")

_REL_TOL = 1e-9


@dataclass(frozen=True)
class WaveformConfig:
    """OFDM frame timing and RF parameters.

    Frequencies in Hz, durations in seconds. ``subcarrier_spacing``,
    ``symbol_duration`` and ``ofdm_duration`` are derived by
    :func:`validate_config` when left as ``None``; ``cp_duration`` defaults to
    a quarter of the useful symbol. ``package_interval`` is the slow-time
    spacing between packages (the inverse of the packet repetition frequency).
    """

    carrier_frequency: float
    bandwidth: float
    subcarriers: int
    package_interval: float
    symbols_per_frame: int = 1
    packages: int = 1
    subcarrier_spacing: Optional[float] = None
    symbol_duration: Optional[float] = None
    cp_duration: Optional[float] = None
    ofdm_duration: Optional[float] = None
    alphabet: str = "qpsk"
    snr_db: Optional[float] = None
    seed: int = 0

    @property
    def columns(self) -> int:
        """Number of slow-time columns M * L of a frame matrix."""
        return self.symbols_per_frame * self.packages

    @property
    def wavelength(self) -> float:
        return C0 / self.carrier_frequency

    def column_times(self):
        """Sampling instants m*T_O + l*T_F ordered by column c = m + l*M."""
        import numpy as np

        m = np.arange(self.symbols_per_frame)
        l = np.arange(self.packages)
        return (m[None, :] * self.ofdm_duration + l[:, None] * self.package_interval).ravel()


@dataclass(frozen=True)
class ResolutionReport:
    range_resolution: float
    velocity_resolution_frame: float
    velocity_resolution_packaged: float
    max_velocity: float
    max_range: float
    max_doppler: float

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= _REL_TOL * max(abs(a), abs(b))


def validate_config(raw: WaveformConfig) -> WaveformConfig:
    """Fill derived timing fields of `raw` and check every invariant.

    Raises
    ------
    NonPositiveParameter
        A count below one or a non-positive frequency/duration.
    InconsistentTiming
        Supplied derived values disagree with B/N, or the M symbols of a
        package do not fit in the package interval.
    """
    for name in ("subcarriers", "symbols_per_frame", "packages"):
        value = getattr(raw, name)
        if int(value) != value or value < 1:
            raise NonPositiveParameter(f"{name} must be an integer >= 1, got {value!r}")
    for name in ("carrier_frequency", "bandwidth", "package_interval"):
        if not getattr(raw, name) > 0:
            raise NonPositiveParameter(f"{name} must be > 0, got {getattr(raw, name)!r}")
    if raw.alphabet not in ALPHABETS:
        raise NonPositiveParameter(f"unknown alphabet {raw.alphabet!r}; expected one of {ALPHABETS}")

    df = raw.bandwidth / raw.subcarriers
    if raw.subcarrier_spacing is not None and not _close(raw.subcarrier_spacing, df):
        raise InconsistentTiming(
            f"subcarrier_spacing {raw.subcarrier_spacing} != bandwidth/subcarriers {df}"
        )
    t_sym = 1.0 / df
    if raw.symbol_duration is not None and not _close(raw.symbol_duration, t_sym):
        raise InconsistentTiming(f"symbol_duration {raw.symbol_duration} != 1/spacing {t_sym}")
    t_cp = t_sym / 4 if raw.cp_duration is None else raw.cp_duration
    if not t_cp > 0:
        raise NonPositiveParameter(f"cp_duration must be > 0, got {t_cp}")
    t_o = t_sym + t_cp
    if raw.ofdm_duration is not None and not _close(raw.ofdm_duration, t_o):
        raise InconsistentTiming(f"ofdm_duration {raw.ofdm_duration} != T + T_G = {t_o}")
    if raw.package_interval < raw.symbols_per_frame * t_o * (1 - _REL_TOL):
        raise InconsistentTiming(
            f"package_interval {raw.package_interval} s cannot hold "
            f"{raw.symbols_per_frame} symbols of {t_o} s"
        )
    return dataclasses.replace(
        raw,
        subcarriers=int(raw.subcarriers),
        symbols_per_frame=int(raw.symbols_per_frame),
        packages=int(raw.packages),
        subcarrier_spacing=df,
        symbol_duration=t_sym,
        cp_duration=t_cp,
        ofdm_duration=t_o,
    )


def resolution_report(cfg: WaveformConfig) -> ResolutionReport:
    """Range/velocity resolution and ambiguity limits of a waveform.

    The maximum range is the cyclic-prefix limit c0*T_G/2; the Doppler span of
    the packaged slow-time axis is +-1/(2*T_F).
    """
    cfg = validate_config(cfg)
    fc, tf = cfg.carrier_frequency, cfg.package_interval
    return ResolutionReport(
        range_resolution=C0 / (2 * cfg.subcarriers * cfg.subcarrier_spacing),
        velocity_resolution_frame=C0 / (2 * fc * cfg.symbols_per_frame * cfg.ofdm_duration),
        velocity_resolution_packaged=C0 / (2 * fc * cfg.packages * tf),
        max_velocity=C0 / (4 * fc * tf),
        max_range=C0 * cfg.cp_duration / 2,
        max_doppler=1.0 / (2 * tf),
    )
