from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ScatterSnapshot:
    """Scattering points of a target at one slow-time instant.

    Arrays are indexed by point. ``radial_velocities`` is diagnostic only and
    positive for closing range (range decreasing).
    """

    time: float
    ranges: np.ndarray
    reflectivities: np.ndarray
    radial_velocities: np.ndarray

    def __post_init__(self):
        for name in ("ranges", "reflectivities", "radial_velocities"):
            object.__setattr__(self, name, np.atleast_1d(np.asarray(getattr(self, name), dtype=float)))
        if not (self.ranges.shape == self.reflectivities.shape == self.radial_velocities.shape):
            raise ValueError("snapshot arrays must share one shape")
        if np.any(self.ranges <= 0):
            raise ValueError("scatterer ranges must be positive")
        if np.any(self.reflectivities < 0):
            raise ValueError("reflectivities must be non-negative")

    @property
    def n_points(self) -> int:
        return self.ranges.size

    @classmethod
    def empty(cls, time: float) -> "ScatterSnapshot":
        z = np.zeros(0)
        return cls(time, z, z, z)

    def merged(self, other: "ScatterSnapshot") -> "ScatterSnapshot":
        """Union of two point sets observed at the same instant."""
        if self.time != other.time:
            raise ValueError("cannot merge snapshots taken at different times")
        return ScatterSnapshot(
            self.time,
            np.concatenate([self.ranges, other.ranges]),
            np.concatenate([self.reflectivities, other.reflectivities]),
            np.concatenate([self.radial_velocities, other.radial_velocities]),
        )
