"""Transmitted OFDM frame matrices on the post-FFT symbol grid.

A frame matrix is a complex ``(N, M*L)`` array: rows are subcarriers, column
``c = m + l*M`` is OFDM symbol ``m`` of package ``l``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import WaveformConfig, validate_config


@dataclass(frozen=True, eq=False)
class SymbolAlphabet:
    """Unit-mean-power constellation."""

    name: str
    constellation: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.constellation, dtype=np.complex128)
        if pts.ndim != 1 or pts.size < 2:
            raise ValueError("constellation needs at least two points")
        if np.unique(pts).size != pts.size:
            raise ValueError("constellation has duplicate points")
        if abs(np.mean(np.abs(pts) ** 2) - 1.0) > 1e-12:
            raise ValueError("constellation must have unit mean power")
        object.__setattr__(self, "constellation", pts)

    @property
    def bits_per_symbol(self) -> int:
        return int(np.log2(self.constellation.size))


def _square_qam(order: int) -> np.ndarray:
    side = int(round(np.sqrt(order)))
    levels = np.arange(-(side - 1), side, 2, dtype=float)
    pts = (levels[:, None] + 1j * levels[None, :]).ravel()
    return pts / np.sqrt(np.mean(np.abs(pts) ** 2))


def get_alphabet(name: str) -> SymbolAlphabet:
    """Return one of the built-in alphabets: ``qpsk`` (4-QAM), ``bpsk``, ``16qam``."""
    key = name.lower().replace("-", "")
    if key in ("qpsk", "4qam"):
        return SymbolAlphabet("qpsk", _square_qam(4))
    if key == "bpsk":
        return SymbolAlphabet("bpsk", np.array([1.0 + 0j, -1.0 + 0j]))
    if key == "16qam":
        return SymbolAlphabet("16qam", _square_qam(16))
    raise ValueError(f"unknown alphabet {name!r}")


def column_rng(seed: int, column: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for one slow-time column.

    Keyed on (seed, stream, column) so the draw of any column does not depend
    on which other columns were generated before it.
    """
    return np.random.default_rng([int(seed) & 0xFFFFFFFFFFFFFFFF, stream, column])


def generate_tx_frame(cfg: WaveformConfig, alphabet: SymbolAlphabet, seed: int) -> np.ndarray:
    """Draw an ``(N, M*L)`` frame of uniformly random constellation points."""
    cfg = validate_config(cfg)
    n, cols = cfg.subcarriers, cfg.columns
    pts = alphabet.constellation
    idx = np.empty((n, cols), dtype=np.intp)
    for c in range(cols):
        idx[:, c] = column_rng(seed, c).integers(0, pts.size, size=n)
    return pts[idx]
