"""Command line entry point: ``ofdmsense {run,info,analyze}``.

Exit codes: 0 success, 2 usage error, 3 configuration error, 4 runtime
failure. Scenario arguments accept a file path or a preset name.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import shutil
import sys
import tempfile
from pathlib import Path

from . import formats, params
from .errors import ConfigError, OfdmSenseError
from .scenario import PRESETS, analyze, load_scenario, preset_path, simulate

EXIT_OK, EXIT_USAGE, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3, 4

# The widely circulated 28 GHz parameter set pairs a 1.5 GHz band with a
# 6.7 cm range resolution; c0/(2B) gives 10 cm, so ``info`` flags it.
TABULATED_BANDWIDTH = 1.5e9
TABULATED_RANGE_RESOLUTION = 0.067


def _resolve(config: str) -> Path:
    p = Path(config)
    if p.exists() or config not in PRESETS:
        return p
    return preset_path(config)


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _dump_json(obj, path: Path) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def write_outputs(cfg, result, out_dir: Path, fmts) -> dict:
    """Write every artifact of `result` into `out_dir` and return the manifest.

    Files go to a sibling temporary directory first and are moved in only
    once all of them exist, so a failure leaves no partial output tree.
    """
    out_dir = Path(out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    tmp = Path(tempfile.mkdtemp(prefix=f".{out_dir.name}-", dir=out_dir.parent))
    try:
        tmp.chmod(0o755)
        matrices = {
            "channel_matrix": result.channel,
            "range_doppler": result.rd_map,
            "spectrogram_linear": result.spectrogram,
            "spectrogram_db": result.spectrogram_db,
        }
        for stem, m in matrices.items():
            for fmt in fmts:
                if fmt == "pgm":
                    continue
                if fmt == "csv" and stem == "channel_matrix":
                    continue
                formats.export_matrix(m, tmp / f"{stem}.{fmt}", fmt)
        # analyze always needs the frozen channel matrix
        if "bin" not in fmts:
            formats.export_matrix(result.channel, tmp / "channel_matrix.bin", "bin")
        if "pgm" in fmts:
            formats.export_matrix(result.spectrogram_db, tmp / "spectrogram.pgm", "pgm")
        _dump_json(result.features, tmp / "features.json")
        files = sorted(p.name for p in tmp.iterdir())
        manifest = {
            "scenario": cfg.name,
            "seed": cfg.seed,
            "files": [
                {"path": name, "bytes": (tmp / name).stat().st_size, "sha256": _sha256(tmp / name)}
                for name in files
            ],
        }
        _dump_json(manifest, tmp / "manifest.json")
        if out_dir.exists():
            shutil.rmtree(out_dir)
        tmp.rename(out_dir)
    except BaseException:
        shutil.rmtree(tmp, ignore_errors=True)
        raise
    return manifest


def run_scenario(config, out=None, seed=None, fmts=None, workers: int = 1) -> dict:
    """Load, simulate and write one scenario; returns the manifest."""
    cfg = load_scenario(_resolve(str(config)), seed=seed)
    out_dir = Path(out) if out is not None else cfg.directory or Path("out") / cfg.name
    result = simulate(cfg, workers=workers)
    return write_outputs(cfg, result, out_dir, tuple(fmts or cfg.formats))


def info_lines(cfg) -> list[str]:
    rep = params.resolution_report(cfg.waveform)
    wf = cfg.waveform
    lines = [
        f"scenario: {cfg.name}",
        f"carrier_frequency_hz: {wf.carrier_frequency:.6g}",
        f"bandwidth_hz: {wf.bandwidth:.6g}",
        f"subcarrier_spacing_hz: {wf.subcarrier_spacing:.6g}",
        f"symbol_duration_s: {wf.symbol_duration:.6g}",
        f"ofdm_duration_s: {wf.ofdm_duration:.6g}",
        f"package_interval_s: {wf.package_interval:.6g}",
        f"range_resolution_m: {rep.range_resolution:.6g}",
        f"velocity_resolution_frame_mps: {rep.velocity_resolution_frame:.6g}",
        f"velocity_resolution_packaged_mps: {rep.velocity_resolution_packaged:.6g}",
        f"max_velocity_mps: {rep.max_velocity:.6g}",
        f"max_range_m: {rep.max_range:.6g}",
        f"max_doppler_hz: +-{rep.max_doppler:.6g}",
        f"doppler_at_10mps_hz: {2 * 10.0 * wf.carrier_frequency / params.C0:.5g}",
    ]
    if abs(wf.bandwidth - TABULATED_BANDWIDTH) < 1.0:
        lines.append(
            f"note: range resolution c0/(2B) = {rep.range_resolution:.4g} m; "
            f"the commonly quoted 28 GHz / 1.5 GHz parameter table lists "
            f"{TABULATED_RANGE_RESOLUTION * 100:.1f} cm, which does not follow from B"
        )
    return lines


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ofdmsense", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="scenario YAML file or preset name")
        p.add_argument("--seed", type=int, help="override the scenario seed")
        p.add_argument("--quiet", action="store_true")

    def outputs(p):
        p.add_argument("--out", type=Path, help="output directory")
        p.add_argument("--format", help="comma-separated subset of bin,csv,pgm")
        p.add_argument("--workers", type=int, default=1, help="threads for channel synthesis")

    p_run = sub.add_parser("run", help="simulate a scenario end to end")
    common(p_run)
    outputs(p_run)
    p_info = sub.add_parser("info", help="print resolutions and limits")
    common(p_info)
    p_an = sub.add_parser("analyze", help="re-analyse a saved channel matrix")
    common(p_an)
    outputs(p_an)
    p_an.add_argument("--matrix", type=Path, required=True, help="channel_matrix.bin file")
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    say = (lambda *a: None) if args.quiet else print
    fmts = tuple(args.format.split(",")) if getattr(args, "format", None) else None
    try:
        if fmts and any(f not in formats.FORMATS for f in fmts):
            raise ConfigError(f"--format: expected a subset of {formats.FORMATS}")
        cfg = load_scenario(_resolve(args.config), seed=args.seed)
        if args.command == "info":
            for line in info_lines(cfg):
                print(line)
            return EXIT_OK
        if args.command == "analyze" and not args.matrix.is_file():
            raise ConfigError(f"matrix file not found: {args.matrix}")
    except ConfigError as exc:
        print(f"ofdmsense: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        out_dir = args.out or cfg.directory or Path("out") / cfg.name
        if args.command == "run":
            result = simulate(cfg, workers=args.workers)
        else:
            F = formats.read_bin(args.matrix).astype(complex)
            result = analyze(cfg, F)
        manifest = write_outputs(cfg, result, out_dir, fmts or cfg.formats)
    except (OfdmSenseError, OSError, ValueError) as exc:
        print(f"ofdmsense: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    for key in ("range_hat_m", "velocity_hat_mps", "max_doppler_hz", "rotation_rate_rps", "blade_length_m"):
        if key in result.features:
            say(f"{key}: {result.features[key]}")
    say(f"wrote {len(manifest['files']) + 1} files to {out_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
