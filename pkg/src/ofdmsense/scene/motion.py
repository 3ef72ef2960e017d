"""Joint trajectories: container, spline resampling, text interchange, fixtures."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.interpolate import CubicSpline

from ..errors import ConfigError, TimeOutOfRange, TooFewSamples, UnboundJoint

TRACK_HEADER = ("frame_index", "time_s", "joint_name", "x_m", "y_m", "z_m")


@dataclass(frozen=True, eq=False)
class MotionTrack:
    """Uniformly sampled 3-D joint positions.

    ``positions`` has shape ``(frames, joints, 3)`` in metres; frame ``k`` is
    at time ``k / sample_rate``.
    """

    sample_rate: float
    joint_names: tuple
    positions: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=float)
        names = tuple(self.joint_names)
        if pos.ndim != 3 or pos.shape[2] != 3 or pos.shape[1] != len(names):
            raise ValueError(f"positions shape {pos.shape} does not match {len(names)} joints")
        if len(set(names)) != len(names):
            raise ValueError("duplicate joint names")
        if not np.all(np.isfinite(pos)):
            raise ValueError("joint positions must be finite")
        if not self.sample_rate > 0:
            raise ValueError("sample_rate must be positive")
        object.__setattr__(self, "positions", pos)
        object.__setattr__(self, "joint_names", names)

    @property
    def n_frames(self) -> int:
        return self.positions.shape[0]

    @property
    def duration(self) -> float:
        return (self.n_frames - 1) / self.sample_rate

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_frames) / self.sample_rate

    def joint_index(self, name: str) -> int:
        try:
            return self.joint_names.index(name)
        except ValueError:
            raise UnboundJoint(f"joint {name!r} not in track") from None

    def joint(self, name: str) -> np.ndarray:
        return self.positions[:, self.joint_index(name), :]

    def position_at(self, t: float) -> np.ndarray:
        """Joint positions ``(joints, 3)`` at time `t`, linear between frames.

        Exact at frame instants; meant for tracks already resampled to the
        slow-time rate.
        """
        k = t * self.sample_rate
        last = self.n_frames - 1
        if k < -1e-9 or k > last + 1e-6:
            raise TimeOutOfRange(f"t={t} s outside track [0, {self.duration}] s")
        k = min(max(k, 0.0), float(last))
        k0 = int(np.floor(k))
        frac = k - k0
        if k0 >= last or frac < 1e-9:
            return self.positions[min(k0, last)]
        return (1 - frac) * self.positions[k0] + frac * self.positions[k0 + 1]


def track_spline(track: MotionTrack) -> CubicSpline:
    """Natural cubic spline through every frame of `track`, vectorised over joints."""
    if track.n_frames < 4:
        raise TooFewSamples(f"cubic resampling needs >= 4 frames, got {track.n_frames}")
    return CubicSpline(track.times, track.positions, axis=0, bc_type="natural")


def resample_track(track: MotionTrack, target_rate: float) -> MotionTrack:
    """Resample every coordinate with a natural cubic spline.

    The new grid starts at 0 and spans the source duration (the last sample
    lands on the end point whenever duration * target_rate is an integer).
    """
    if target_rate < track.sample_rate:
        raise ValueError("resample_track only upsamples")
    spline = track_spline(track)
    if target_rate == track.sample_rate:
        return MotionTrack(track.sample_rate, track.joint_names, track.positions.copy())
    n = int(np.floor(track.duration * target_rate + 1e-9)) + 1
    t = np.arange(n) / target_rate
    return MotionTrack(target_rate, track.joint_names, spline(t))


def synthetic_pendulum_track(pivot, length, amplitude, period, rate, duration) -> MotionTrack:
    """Two-joint track ("pivot", "bob") of a rigid pendulum swinging in the x-y plane.

    The swing angle is psi(t) = amplitude * sin(2 pi t / period) and the bob
    sits at pivot + length * (sin psi, -cos psi, 0); y is up.
    """
    n = int(np.floor(duration * rate + 1e-9)) + 1
    t = np.arange(n) / rate
    psi = amplitude * np.sin(2 * np.pi * t / period)
    pivot = np.asarray(pivot, dtype=float)
    bob = pivot + length * np.stack([np.sin(psi), -np.cos(psi), np.zeros_like(psi)], axis=1)
    pos = np.stack([np.broadcast_to(pivot, bob.shape), bob], axis=1)
    return MotionTrack(rate, ("pivot", "bob"), pos)


def write_track(track: MotionTrack, path) -> None:
    """Write `track` in the neutral one-row-per-(frame, joint) text format."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACK_HEADER)
        for k, t in enumerate(track.times):
            for j, name in enumerate(track.joint_names):
                x, y, z = track.positions[k, j]
                w.writerow([k, repr(float(t)), name, repr(float(x)), repr(float(y)), repr(float(z))])


def read_track(path) -> MotionTrack:
    """Parse the neutral track format; frames must be uniformly spaced."""
    path = Path(path)
    try:
        fh = open(path, newline="")
    except OSError as exc:
        raise ConfigError(f"cannot read track {path}: {exc}") from exc
    with fh:
        reader = csv.reader(fh)
        header = tuple(h.strip() for h in next(reader, ()))
        if header != TRACK_HEADER:
            raise ConfigError(f"{path}: bad header {header}, expected {TRACK_HEADER}")
        frames: dict[int, dict[str, tuple]] = {}
        times: dict[int, float] = {}
        names: list[str] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                k, t, name = int(row[0]), float(row[1]), row[2].strip()
                xyz = tuple(float(v) for v in row[3:6])
            except (ValueError, IndexError) as exc:
                raise ConfigError(f"{path}:{lineno}: malformed row {row}") from exc
            if name not in names:
                names.append(name)
            frames.setdefault(k, {})[name] = xyz
            times[k] = t
    ks = sorted(frames)
    if not ks or ks != list(range(len(ks))):
        raise ConfigError(f"{path}: frame indices must run 0..n-1")
    pos = np.empty((len(ks), len(names), 3))
    for k in ks:
        if set(frames[k]) != set(names):
            raise ConfigError(f"{path}: frame {k} does not list every joint")
        for j, name in enumerate(names):
            pos[k, j] = frames[k][name]
    t = np.array([times[k] for k in ks])
    if len(t) < 2:
        raise ConfigError(f"{path}: need at least two frames")
    dt = np.diff(t)
    if np.max(np.abs(dt - dt.mean())) > 1e-6 * dt.mean():
        raise ConfigError(f"{path}: frames are not uniformly spaced")
    rate = 1.0 / dt.mean()
    if abs(rate - round(rate)) < 1e-6 * rate:
        rate = float(round(rate))
    return MotionTrack(rate, tuple(names), pos)
