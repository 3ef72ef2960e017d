"""Scenario files and the end-to-end simulate/analyse pipeline.

A scenario is a YAML document::

    name: fan_10rps
    seed: 1
    waveform:            # WaveformConfig fields
      carrier_frequency: 28.0e9
      bandwidth: 1.5e9
      subcarriers: 256
      package_interval: 5.0e-5
      packages: 4000
    target:
      kind: fan          # point | fan | human
      tx_position: [0, 0, 0]
      fan: {center: [5, 0, 0], blade_length: 0.1, rotation_rate: 10}
    channel: {range_migration: true}
    periodogram: {K: 256, H: 4096}
    slow_time_mode: peak_range_bin
    stft: {fft_length: 200, window_length: 200, hop: 4, window: gaussian}
    analysis: {remove_static: true, max_doppler_threshold_db: 2.0}
    outputs: {formats: [bin, pgm], directory: out/fan_10rps}

``point`` takes ``r0``, ``v`` (closing speed) and ``reflectivity``; ``human``
takes ``track_path`` and optional ``skeleton_path`` (default: the shipped
19-primitive body), resolved relative to the scenario file. Waveform
``snr_db`` switches on complex AWGN.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import re

import numpy as np
import yaml

from . import channel, estimate, microdoppler, params, txgen
from .errors import ConfigError, OfdmSenseError
from .scene import (
    FanTarget,
    HumanTarget,
    default_body,
    fan_snapshot,
    human_snapshot,
    point_target_snapshot,
    read_body,
    read_track,
    resample_track,
)

TARGET_KINDS = ("point", "fan", "human")
SECTIONS = (
    "name", "seed", "waveform", "target", "channel", "periodogram",
    "slow_time_mode", "stft", "analysis", "outputs",
)
PRESETS = (
    "point_static",
    "point_moving",
    "fan_10rps",
    "fan_15rps",
    "fan_20rps",
    "fan_wideband",
    "pendulum_human",
    "full_scale_fan_20rps",
)


class _Loader(yaml.SafeLoader):
    """Safe loader that also reads ``28e9``-style floats as numbers."""


_Loader.add_implicit_resolver(
    "tag:yaml.org,2002:float",
    re.compile(
        r"""^(?:[-+]?(?:[0-9][0-9_]*)\.[0-9_]*(?:[eE][-+]?[0-9]+)?
        |[-+]?(?:[0-9][0-9_]*)(?:[eE][-+]?[0-9]+)
        |\.[0-9_]+(?:[eE][-+]?[0-9]+)?
        |[-+]?\.(?:inf|Inf|INF)
        |\.(?:nan|NaN|NAN))$""",
        re.X,
    ),
    list("-+0123456789."),
)


@dataclass(frozen=True)
class AnalysisConfig:
    remove_static: bool = True
    max_doppler_threshold_db: float = 3.0
    rotation_threshold_db: float = 20.0
    floor_db: float = -40.0
    n_blades: int = 4


@dataclass(frozen=True)
class ScenarioConfig:
    name: str
    seed: int
    waveform: params.WaveformConfig
    target_kind: str
    target: object
    tx_position: tuple
    stft: microdoppler.StftConfig
    K: int
    H: int
    slow_time_mode: str = "peak_range_bin"
    range_migration: bool = True
    analysis: AnalysisConfig = AnalysisConfig()
    formats: tuple = ("bin", "pgm")
    directory: Path | None = None


@dataclass(frozen=True)
class PointSpec:
    r0: float
    v: float = 0.0
    reflectivity: float = 1.0


def preset_path(name: str) -> Path:
    """Path of a shipped preset scenario."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}")
    return Path(str(resources.files("ofdmsense.presets").joinpath(f"{name}.yaml")))


def _section(doc: dict, key: str, required: bool = True) -> dict:
    value = doc.get(key)
    if value is None:
        if required:
            raise ConfigError(f"missing section {key!r}")
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"section {key!r} must be a mapping")
    return value


def _build(cls, data: dict, what: str):
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"{what}: unknown keys {sorted(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{what}: {exc}") from exc


def _vec3(value, what) -> tuple:
    try:
        v = tuple(float(x) for x in value)
    except TypeError as exc:
        raise ConfigError(f"{what} must be a 3-vector") from exc
    if len(v) != 3:
        raise ConfigError(f"{what} must be a 3-vector")
    return v


def load_scenario(path, seed: int | None = None) -> ScenarioConfig:
    """Parse and fully validate a scenario file, including referenced tracks.

    Raises :class:`ConfigError` on any problem, before anything is computed.
    """
    path = Path(path)
    try:
        doc = yaml.load(path.read_text(), Loader=_Loader)
    except OSError as exc:
        raise ConfigError(f"cannot read scenario {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    unknown = set(doc) - set(SECTIONS)
    if unknown:
        raise ConfigError(f"{path}: unknown top-level keys {sorted(unknown)}")
    base = path.parent

    run_seed = int(doc.get("seed", 0) if seed is None else seed)
    wf = dict(_section(doc, "waveform"))
    wf["seed"] = run_seed
    try:
        waveform = params.validate_config(_build(params.WaveformConfig, wf, "waveform"))
    except TypeError as exc:
        raise ConfigError(f"waveform: {exc}") from exc

    tgt = _section(doc, "target")
    kind = tgt.get("kind")
    if kind not in TARGET_KINDS:
        raise ConfigError(f"target.kind must be one of {TARGET_KINDS}, got {kind!r}")
    extra = set(tgt) - {"kind", "tx_position", kind}
    if extra:
        raise ConfigError(f"target: unexpected keys {sorted(extra)} for kind {kind!r}")
    tx = _vec3(tgt.get("tx_position", (0.0, 0.0, 0.0)), "target.tx_position")
    spec = _section(tgt, kind)
    if kind == "point":
        target = _build(PointSpec, spec, "target.point")
    elif kind == "fan":
        spec = dict(spec)
        if "center" in spec:
            spec["center"] = _vec3(spec["center"], "target.fan.center")
        target = _build(FanTarget, spec, "target.fan")
    else:
        target = _load_human(spec, base, tx, waveform)

    pg = _section(doc, "periodogram", required=False)
    K = int(pg.get("K", waveform.subcarriers))
    H = int(pg.get("H", 1 << math.ceil(math.log2(max(_slow_columns(waveform), 1)))))
    if K < waveform.subcarriers or H < _slow_columns(waveform):
        raise ConfigError(f"periodogram K={K}, H={H} smaller than the channel matrix")

    stft = _build(microdoppler.StftConfig, _section(doc, "stft", required=False), "stft")
    if stft.window_length > _slow_columns(waveform):
        raise ConfigError("stft.window_length exceeds the slow-time series length")
    analysis = _build(AnalysisConfig, _section(doc, "analysis", required=False), "analysis")
    mode = doc.get("slow_time_mode", "peak_range_bin")
    if mode not in microdoppler.SLOW_TIME_MODES:
        raise ConfigError(f"slow_time_mode must be one of {microdoppler.SLOW_TIME_MODES}")
    ch = _section(doc, "channel", required=False)
    unknown = set(ch) - {"range_migration"}
    if unknown:
        raise ConfigError(f"channel: unknown keys {sorted(unknown)}")

    out = _section(doc, "outputs", required=False)
    unknown = set(out) - {"formats", "directory"}
    if unknown:
        raise ConfigError(f"outputs: unknown keys {sorted(unknown)}")
    formats = tuple(out.get("formats", ("bin", "pgm")))
    from .formats import FORMATS

    bad = [f for f in formats if f not in FORMATS]
    if bad:
        raise ConfigError(f"outputs.formats: unsupported {bad}")
    directory = out.get("directory")

    return ScenarioConfig(
        name=str(doc.get("name", path.stem)),
        seed=run_seed,
        waveform=waveform,
        target_kind=kind,
        target=target,
        tx_position=tx,
        stft=stft,
        K=K,
        H=H,
        slow_time_mode=mode,
        range_migration=bool(ch.get("range_migration", True)),
        analysis=analysis,
        formats=formats,
        directory=None if directory is None else base / directory,
    )


def _load_human(spec: dict, base: Path, tx: tuple, waveform) -> HumanTarget:
    unknown = set(spec) - {"track_path", "skeleton_path"}
    if unknown:
        raise ConfigError(f"target.human: unknown keys {sorted(unknown)}")
    if "track_path" not in spec:
        raise ConfigError("target.human.track_path is required")
    track_file = base / spec["track_path"]
    if not track_file.is_file():
        raise ConfigError(f"track file not found: {track_file}")
    track = read_track(track_file)
    prims = default_body()
    if spec.get("skeleton_path"):
        skel = base / spec["skeleton_path"]
        if not skel.is_file():
            raise ConfigError(f"skeleton file not found: {skel}")
        prims = read_body(skel)
    rate = 1.0 / waveform.package_interval
    try:
        if rate > track.sample_rate:
            track = resample_track(track, rate)
        human = HumanTarget(track, prims, tx)
    except (OfdmSenseError, ValueError) as exc:
        raise ConfigError(f"human target: {exc}") from exc
    last = float(waveform.column_times()[-1])
    if last > track.duration + 1e-9:
        raise ConfigError(f"track lasts {track.duration} s, scenario needs {last} s")
    return human


def _slow_columns(wf: params.WaveformConfig) -> int:
    return wf.packages if wf.packages > 1 else wf.symbols_per_frame


def snapshots(cfg: ScenarioConfig) -> list:
    """Scattering snapshots at every column instant of the scenario."""
    times = cfg.waveform.column_times()
    if cfg.target_kind == "point":
        p = cfg.target
        return [point_target_snapshot(p.r0, p.v, float(t), p.reflectivity) for t in times]
    if cfg.target_kind == "fan":
        return [fan_snapshot(cfg.target, cfg.tx_position, float(t)) for t in times]
    return [human_snapshot(cfg.target, float(t)) for t in times]


@dataclass
class ScenarioResult:
    channel: np.ndarray
    rd_map: estimate.RangeDopplerMap
    target: estimate.TargetEstimate
    series: np.ndarray
    spectrogram: microdoppler.Spectrogram
    spectrogram_db: microdoppler.Spectrogram
    features: dict = field(default_factory=dict)


def simulate(cfg: ScenarioConfig, workers: int = 1) -> ScenarioResult:
    """Transmit, scatter, receive and analyse one scenario."""
    wf = cfg.waveform
    snaps = snapshots(cfg)
    r_max = params.resolution_report(wf).max_range
    far = max((float(s.ranges.max()) for s in snaps if s.n_points), default=0.0)
    if far > r_max:
        warnings.warn(f"scatterer at {far:.3f} m beyond cyclic-prefix range {r_max:.3f} m", stacklevel=2)
    ftx = txgen.generate_tx_frame(wf, txgen.get_alphabet(wf.alphabet), cfg.seed)
    noise = None
    if wf.snr_db is not None:
        noise = channel.NoiseConfig(snr_db=float(wf.snr_db), seed=cfg.seed, enabled=True)
    frx = channel.synthesize_rx(ftx, snaps, wf, noise, workers=workers, range_migration=cfg.range_migration)
    F = estimate.channel_matrix(frx, ftx)
    del frx, ftx
    return analyze(cfg, F)


def analyze(cfg: ScenarioConfig, F: np.ndarray) -> ScenarioResult:
    """Range-Doppler and micro-Doppler analysis of a channel matrix."""
    wf = cfg.waveform
    G, step = estimate.package_series(F, wf)
    rd = estimate.periodogram(G, cfg.K, cfg.H, wf.subcarrier_spacing, wf.carrier_frequency, step)
    est = estimate.estimate_target(rd)
    series = microdoppler.slow_time_series(G, cfg.slow_time_mode)
    if cfg.analysis.remove_static:
        series = series - series.mean()
    spec = microdoppler.stft_spectrogram(series, cfg.stft, 1.0 / step)
    spec_db = microdoppler.to_db(spec, cfg.analysis.floor_db)
    rep = params.resolution_report(wf)

    feats = {
        "scenario": cfg.name,
        "seed": cfg.seed,
        "target": cfg.target_kind,
        "range_hat_m": est.range_hat,
        "velocity_hat_mps": est.velocity_hat,
        "peak_bin": list(est.peak_bin),
        "max_doppler_hz": microdoppler.max_doppler(spec, cfg.analysis.max_doppler_threshold_db),
        "resolution": rep.as_dict(),
    }
    if cfg.target_kind == "fan":
        try:
            rate = microdoppler.estimate_rotation_rate(
                spec, cfg.analysis.n_blades, cfg.analysis.rotation_threshold_db
            )
        except OfdmSenseError:
            rate = None
        feats["rotation_rate_rps"] = rate
        feats["blade_length_m"] = (
            None
            if rate is None
            else microdoppler.estimate_blade_length(feats["max_doppler_hz"], rate, wf.carrier_frequency)
        )
    return ScenarioResult(F, rd, est, series, spec, spec_db, feats)
