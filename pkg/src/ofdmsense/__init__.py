"""OFDM mmWave micro-Doppler sensing simulator.

The pipeline runs on the post-FFT OFDM symbol grid: random data symbols
(:mod:`txgen`) are scattered by point, fan or articulated human targets
(:mod:`scene`), received through a free-space multi-path channel
(:mod:`channel`), divided back into a channel matrix and turned into
range-Doppler maps (:mod:`estimate`) and micro-Doppler spectrograms
(:mod:`microdoppler`).
"""

from . import channel, estimate, formats, microdoppler, params, scene, txgen
from .channel import NoiseConfig, synthesize_rx
from .errors import ConfigError, OfdmSenseError
from .estimate import RangeDopplerMap, TargetEstimate, channel_matrix, estimate_target, periodogram
from .microdoppler import Spectrogram, StftConfig, stft_spectrogram, to_db
from .params import C0, ResolutionReport, WaveformConfig, resolution_report, validate_config
from .txgen import generate_tx_frame, get_alphabet

__version__ = "0.1.0"

__all__ = [
    "C0",
    "ConfigError",
    "NoiseConfig",
    "OfdmSenseError",
    "RangeDopplerMap",
    "ResolutionReport",
    "Spectrogram",
    "StftConfig",
    "TargetEstimate",
    "WaveformConfig",
    "channel",
    "channel_matrix",
    "estimate",
    "estimate_target",
    "formats",
    "generate_tx_frame",
    "get_alphabet",
    "microdoppler",
    "params",
    "periodogram",
    "resolution_report",
    "scene",
    "stft_spectrogram",
    "synthesize_rx",
    "to_db",
    "txgen",
    "validate_config",
]
