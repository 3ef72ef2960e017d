"""Sensing targets and their per-instant scattering snapshots."""

from .fan import FanTarget, fan_snapshot
from .human import (
    BODY_PRIMITIVES,
    HumanTarget,
    Primitive,
    default_body,
    human_snapshot,
    read_body,
    standing_track,
)
from .motion import (
    MotionTrack,
    read_track,
    resample_track,
    synthetic_pendulum_track,
    track_spline,
    write_track,
)
from .point import point_target_snapshot
from .rcs import ellipsoid_rcs
from .snapshot import ScatterSnapshot

__all__ = [
    "BODY_PRIMITIVES",
    "FanTarget",
    "HumanTarget",
    "MotionTrack",
    "Primitive",
    "ScatterSnapshot",
    "default_body",
    "ellipsoid_rcs",
    "fan_snapshot",
    "human_snapshot",
    "point_target_snapshot",
    "read_body",
    "read_track",
    "resample_track",
    "standing_track",
    "synthetic_pendulum_track",
    "track_spline",
    "write_track",
]
