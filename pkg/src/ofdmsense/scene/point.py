from __future__ import annotations

from ..errors import NonPositiveRange
from .snapshot import ScatterSnapshot


def point_target_snapshot(r0: float, v: float, t: float, reflectivity: float = 1.0) -> ScatterSnapshot:
    """Single scatterer at initial range `r0` closing at constant speed `v`.

    Positive `v` means the range decreases, r(t) = r0 - v*t, the same sign
    convention as the Doppler shift. `reflectivity` is used as given.
    """
    r = r0 - v * t
    if not r > 0:
        raise NonPositiveRange(f"point target range {r} m at t={t} s is not positive")
    return ScatterSnapshot(t, [r], [reflectivity], [v])
