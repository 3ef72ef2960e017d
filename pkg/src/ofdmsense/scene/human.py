"""Primitive-shape human: ellipsoids and spheres riding on a joint track."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ..errors import ConfigError, UnboundJoint
from .motion import MotionTrack
from .rcs import ellipsoid_rcs
from .snapshot import ScatterSnapshot

BODY_HEADER = ("name", "kind", "joint_a", "joint_b", "a", "b", "c", "zeta")
BODY_PRIMITIVES = 19

_UP = np.array([0.0, 1.0, 0.0])
_SIDE = np.array([1.0, 0.0, 0.0])

# Upright neutral pose relative to the root joint; y is up, +z is the body's left.
STANDING_POSE = {
    "root": (0.0, 0.0, 0.0),
    "spine": (0.0, 0.18, 0.0),
    "thorax": (0.0, 0.40, 0.0),
    "neck": (0.0, 0.60, 0.0),
    "head": (0.0, 0.75, 0.0),
    "lshoulder": (0.0, 0.55, 0.18),
    "lelbow": (0.0, 0.25, 0.20),
    "lwrist": (0.0, -0.01, 0.20),
    "lhand": (0.0, -0.09, 0.20),
    "rshoulder": (0.0, 0.55, -0.18),
    "relbow": (0.0, 0.25, -0.20),
    "rwrist": (0.0, -0.01, -0.20),
    "rhand": (0.0, -0.09, -0.20),
    "lhip": (0.0, -0.05, 0.10),
    "lknee": (0.0, -0.50, 0.10),
    "lankle": (0.0, -0.92, 0.10),
    "ltoe": (0.15, -0.98, 0.10),
    "rhip": (0.0, -0.05, -0.10),
    "rknee": (0.0, -0.50, -0.10),
    "rankle": (0.0, -0.92, -0.10),
    "rtoe": (0.15, -0.98, -0.10),
}


@dataclass(frozen=True)
class Primitive:
    """Body part scattering from its centre.

    A two-joint primitive is centred on the segment midpoint with its local
    z-axis along joint_a -> joint_b; a single-joint primitive sits on the
    joint with local z along world up. `zeta` scales the reflectivity.
    """

    name: str
    kind: str
    joint_a: str
    joint_b: str | None
    a: float
    b: float
    c: float
    zeta: float = 1.0

    def __post_init__(self):
        if self.kind not in ("ellipsoid", "sphere"):
            raise ValueError(f"{self.name}: unknown primitive kind {self.kind!r}")
        if min(self.a, self.b, self.c) <= 0:
            raise ValueError(f"{self.name}: radii must be positive")
        if self.kind == "sphere" and not (self.a == self.b == self.c):
            raise ValueError(f"{self.name}: a sphere needs a == b == c")


def read_body(path) -> list[Primitive]:
    """Load primitive bindings from a skeleton-binding text file."""
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise ConfigError(f"cannot read skeleton {path}: {exc}") from exc
    with fh:
        return _parse_body(fh, str(path))


def _parse_body(fh, label) -> list[Primitive]:
    reader = csv.reader(fh)
    header = tuple(h.strip() for h in next(reader, ()))
    if header != BODY_HEADER:
        raise ConfigError(f"{label}: bad header {header}, expected {BODY_HEADER}")
    prims = []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            name, kind, ja, jb = (x.strip() for x in row[:4])
            a, b, c, zeta = (float(x) for x in row[4:8])
            prims.append(Primitive(name, kind, ja, jb or None, a, b, c, zeta))
        except (ValueError, IndexError) as exc:
            raise ConfigError(f"{label}:{lineno}: {exc}") from exc
    return prims


def default_body() -> list[Primitive]:
    """The shipped 19-primitive body (head sphere 0.1 m, anthropometric radii)."""
    with resources.files("ofdmsense.data").joinpath("body19.csv").open(newline="") as fh:
        return _parse_body(fh, "body19.csv")


def standing_track(origin=(0.0, 0.0, 0.0), rate: float = 120.0, duration: float = 1.0) -> MotionTrack:
    """Motionless upright skeleton with its root joint at `origin`."""
    names = tuple(STANDING_POSE)
    pose = np.array([STANDING_POSE[n] for n in names]) + np.asarray(origin, dtype=float)
    n = int(np.floor(duration * rate + 1e-9)) + 1
    return MotionTrack(rate, names, np.broadcast_to(pose, (n,) + pose.shape).copy())


@dataclass(frozen=True, eq=False)
class HumanTarget:
    track: MotionTrack
    primitives: list = field(default_factory=default_body)
    tx_position: tuple = (0.0, 3.0, 0.0)

    def __post_init__(self):
        if not self.primitives:
            raise ValueError("a human target needs at least one primitive")
        for p in self.primitives:
            for j in (p.joint_a, p.joint_b):
                if j is not None and j not in self.track.joint_names:
                    raise UnboundJoint(f"primitive {p.name!r} references unknown joint {j!r}")
        ia = np.array([self.track.joint_index(p.joint_a) for p in self.primitives])
        ib = np.array([self.track.joint_index(p.joint_b) if p.joint_b else -1 for p in self.primitives])
        object.__setattr__(self, "_ia", ia)
        object.__setattr__(self, "_ib", ib)
        object.__setattr__(self, "_radii", np.array([[p.a, p.b, p.c] for p in self.primitives]))
        object.__setattr__(self, "_zeta", np.array([p.zeta for p in self.primitives]))


def _geometry(human: HumanTarget, joints: np.ndarray):
    """Centres and unit local z-axes of all primitives for one joint configuration."""
    pa = joints[human._ia]
    pair = human._ib >= 0
    pb = np.where(pair[:, None], joints[np.where(pair, human._ib, 0)], pa)
    centers = np.where(pair[:, None], 0.5 * (pa + pb), pa)
    seg = pb - pa
    norm = np.linalg.norm(seg, axis=1)
    z = np.where((norm > 0)[:, None], seg / np.where(norm > 0, norm, 1.0)[:, None], _UP)
    return centers, z


def line_of_sight_angles(z: np.ndarray, los: np.ndarray):
    """Zenith and aspect angles of unit vectors `los` in frames with z-axes `z`.

    Local x is world up projected onto the plane normal to z (world x when z
    is nearly vertical), local y = z cross x.
    """
    ref = np.where((np.abs(z @ _UP) > 0.99)[:, None], _SIDE, _UP)
    x = ref - np.sum(ref * z, axis=1, keepdims=True) * z
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    y = np.cross(z, x)
    cos_t = np.clip(np.sum(los * z, axis=1), -1.0, 1.0)
    theta = np.arccos(cos_t)
    phi = np.arctan2(np.sum(los * y, axis=1), np.sum(los * x, axis=1))
    return theta, phi


def human_snapshot(human: HumanTarget, t: float) -> ScatterSnapshot:
    """Scattering centres of every primitive at time `t`.

    Reflectivity is zeta * sqrt(sigma) / r^2 with sigma the ellipsoid RCS for
    the current line of sight. Radial velocity is a one-frame backward
    difference of range (forward at t=0), closing positive.
    """
    tx = np.asarray(human.tx_position, dtype=float)
    joints = human.track.position_at(t)
    centers, z = _geometry(human, joints)
    d = tx - centers
    r = np.linalg.norm(d, axis=1)
    theta, phi = line_of_sight_angles(z, d / r[:, None])
    r_ = human._radii
    sigma = ellipsoid_rcs(r_[:, 0], r_[:, 1], r_[:, 2], theta, phi)
    refl = human._zeta * np.sqrt(sigma) / r**2

    dt = 1.0 / human.track.sample_rate
    t_other = t - dt if t - dt >= 0 else min(t + dt, human.track.duration)
    if t_other == t:
        vel = np.zeros_like(r)
    else:
        c2, _ = _geometry(human, human.track.position_at(t_other))
        r2 = np.linalg.norm(tx - c2, axis=1)
        vel = -(r - r2) / (t - t_other)
    return ScatterSnapshot(t, r, refl, vel)
