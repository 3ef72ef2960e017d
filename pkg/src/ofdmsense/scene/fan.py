"""Four-blade rotating fan with tip scatterers and a hub."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DegenerateGeometry
from .snapshot import ScatterSnapshot


@dataclass(frozen=True)
class FanTarget:
    """Fan whose rotation plane contains the line of sight.

    `rotation_rate` is in rev/s; `initial_phase` is the phase of blade 0, the
    other blades follow at pi/2 steps. The hub defaults to twice the blade
    reflectivity.
    """

    center: tuple = (5.0, 0.0, 0.0)
    blade_length: float = 0.1
    rotation_rate: float = 10.0
    initial_phase: float = 0.0
    n_blades: int = 4
    blade_reflectivity: float = 1.0
    hub_reflectivity: float | None = None

    def __post_init__(self):
        if not self.blade_length > 0:
            raise ValueError("blade_length must be positive")
        if self.n_blades != 4:
            raise ValueError("the fan model has exactly four blades")

    @property
    def angular_velocity(self) -> float:
        return 2 * np.pi * self.rotation_rate

    @property
    def blade_phases(self) -> np.ndarray:
        return self.initial_phase + np.arange(self.n_blades) * (np.pi / 2)

    @property
    def hub_gain(self) -> float:
        return 2 * self.blade_reflectivity if self.hub_reflectivity is None else self.hub_reflectivity


def fan_snapshot(fan: FanTarget, tx_pos, t: float) -> ScatterSnapshot:
    """Blade-tip and hub scatterers of `fan` seen from `tx_pos` at time `t`.

    Points 0-3 are the blade tips, point 4 is the hub. Amplitudes fall off as
    1/r^2.
    """
    r0 = float(np.linalg.norm(np.subtract(fan.center, tx_pos)))
    R = fan.blade_length
    if r0 <= R:
        raise DegenerateGeometry(f"transceiver at {r0} m lies inside the rotation disc (R={R} m)")
    w = fan.angular_velocity
    arg = w * t + fan.blade_phases
    r_tip = np.sqrt(r0**2 + R**2 + 2 * r0 * R * np.cos(arg))
    v_tip = r0 * R * w * np.sin(arg) / r_tip  # -dr/dt
    ranges = np.append(r_tip, r0)
    refl = np.append(fan.blade_reflectivity / r_tip**2, fan.hub_gain / r0**2)
    return ScatterSnapshot(t, ranges, refl, np.append(v_tip, 0.0))
