import numpy as np
import pytest

from ofdmsense.channel import NoiseConfig, doppler_shift, round_trip_delay, synthesize_rx
from ofdmsense.errors import DimensionMismatch, NonPositiveRange, SnapshotTimeMismatch
from ofdmsense.params import C0
from ofdmsense.scene import ScatterSnapshot, point_target_snapshot
from ofdmsense.txgen import generate_tx_frame, get_alphabet


def frame(cfg, seed=3):
    return generate_tx_frame(cfg, get_alphabet("qpsk"), seed)


def point_snaps(cfg, r0, v, refl=1.0):
    return [point_target_snapshot(r0, v, float(t), refl) for t in cfg.column_times()]


def test_doppler_shift_values():
    assert doppler_shift(10.0, 28e9) == pytest.approx(1866.67, abs=0.01)
    assert doppler_shift(0.0, 28e9) == 0.0
    assert doppler_shift(-5.357, 28e9) == pytest.approx(-1000.0, abs=0.1)
    np.testing.assert_allclose(doppler_shift(np.array([1.0, -1.0]), 1.5e8), [1.0, -1.0])


def test_round_trip_delay_values():
    assert round_trip_delay(5.0) == pytest.approx(33.333e-9, abs=1e-12)
    assert round_trip_delay(C0 / 2) == 1.0
    t_g = 0.17e-6
    assert round_trip_delay(C0 * t_g / 2) == pytest.approx(t_g, rel=1e-15)
    with pytest.raises(NonPositiveRange):
        round_trip_delay(0.0)


def test_static_point_has_identical_columns(small_cfg):
    ftx = frame(small_cfg)
    h = synthesize_rx(ftx, point_snaps(small_cfg, 5.0, 0.0), small_cfg) / ftx
    n = np.arange(small_cfg.subcarriers)
    tau = 2 * 5.0 / C0
    expected = np.exp(-2j * np.pi * tau * (n * small_cfg.subcarrier_spacing + small_cfg.carrier_frequency))
    np.testing.assert_allclose(h, np.repeat(expected[:, None], small_cfg.columns, axis=1), atol=1e-12)


def test_moving_point_column_rotation(small_cfg):
    ftx = frame(small_cfg)
    h = synthesize_rx(ftx, point_snaps(small_cfg, 5.0, 10.0), small_cfg) / ftx
    rot = np.angle(h[0, 1:] / h[0, :-1])
    f_d = doppler_shift(10.0, small_cfg.carrier_frequency)
    expected = np.angle(np.exp(2j * np.pi * f_d * small_cfg.package_interval))
    np.testing.assert_allclose(rot, expected, atol=1e-9)


def test_frozen_range_matches_classic_form(small_cfg):
    ftx = frame(small_cfg)
    h = synthesize_rx(ftx, point_snaps(small_cfg, 5.0, 2.0), small_cfg, range_migration=False) / ftx
    n = np.arange(small_cfg.subcarriers)[:, None]
    t = small_cfg.column_times()[None, :]
    f_d = doppler_shift(2.0, small_cfg.carrier_frequency)
    tau0 = 2 * 5.0 / C0
    oracle = np.exp(2j * np.pi * f_d * t) * np.exp(
        -2j * np.pi * tau0 * (n * small_cfg.subcarrier_spacing + small_cfg.carrier_frequency)
    )
    np.testing.assert_allclose(h, oracle, rtol=0, atol=1e-9)


def test_no_scatterers_gives_zero(small_cfg):
    ftx = frame(small_cfg)
    snaps = [ScatterSnapshot.empty(float(t)) for t in small_cfg.column_times()]
    assert not np.any(synthesize_rx(ftx, snaps, small_cfg))


def test_superposition_and_scaling(small_cfg):
    ftx = frame(small_cfg)
    a = point_snaps(small_cfg, 4.0, 1.0)
    b = point_snaps(small_cfg, 5.5, -0.5, refl=0.3)
    both = [x.merged(y) for x, y in zip(a, b)]
    ra, rb = synthesize_rx(ftx, a, small_cfg), synthesize_rx(ftx, b, small_cfg)
    np.testing.assert_allclose(synthesize_rx(ftx, both, small_cfg), ra + rb, atol=1e-12)
    scaled = synthesize_rx(ftx, point_snaps(small_cfg, 4.0, 1.0, refl=2.5), small_cfg)
    np.testing.assert_allclose(scaled, 2.5 * ra, atol=1e-12)


def test_workers_bitwise_equal(small_cfg):
    ftx = frame(small_cfg)
    snaps = point_snaps(small_cfg, 5.0, 1.3)
    noise = NoiseConfig(snr_db=10.0, seed=9, enabled=True)
    serial = synthesize_rx(ftx, snaps, small_cfg, noise)
    parallel = synthesize_rx(ftx, snaps, small_cfg, noise, workers=4)
    assert np.array_equal(serial, parallel)


def test_noise_level_and_determinism(small_cfg):
    ftx = frame(small_cfg)
    snaps = point_snaps(small_cfg, 5.0, 0.0)
    clean = synthesize_rx(ftx, snaps, small_cfg)
    noisy = synthesize_rx(ftx, snaps, small_cfg, NoiseConfig(snr_db=6.0, seed=1, enabled=True))
    again = synthesize_rx(ftx, snaps, small_cfg, NoiseConfig(snr_db=6.0, seed=1, enabled=True))
    other = synthesize_rx(ftx, snaps, small_cfg, NoiseConfig(snr_db=6.0, seed=2, enabled=True))
    assert np.array_equal(noisy, again)
    assert not np.array_equal(noisy, other)
    z = noisy - clean
    snr = 10 * np.log10(np.mean(np.abs(clean) ** 2) / np.mean(np.abs(z) ** 2))
    assert snr == pytest.approx(6.0, abs=0.5)
    assert np.mean(z.real**2) == pytest.approx(np.mean(z.imag**2), rel=0.2)
    # disabled noise leaves the signal untouched
    assert np.array_equal(synthesize_rx(ftx, snaps, small_cfg, NoiseConfig(snr_db=6.0)), clean)


def test_shape_and_time_checks(small_cfg):
    ftx = frame(small_cfg)
    snaps = point_snaps(small_cfg, 5.0, 0.0)
    with pytest.raises(DimensionMismatch):
        synthesize_rx(ftx[:, :-1], snaps, small_cfg)
    with pytest.raises(DimensionMismatch):
        synthesize_rx(ftx, snaps[:-1], small_cfg)
    shifted = snaps[:3] + [point_target_snapshot(5.0, 0.0, 1.0)] + snaps[4:]
    with pytest.raises(SnapshotTimeMismatch):
        synthesize_rx(ftx, shifted, small_cfg)
    with pytest.raises(ValueError):
        NoiseConfig(enabled=True)
