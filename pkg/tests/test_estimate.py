import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofdmsense.channel import synthesize_rx
from ofdmsense.errors import BadPadLength, DimensionMismatch, ZeroTxSymbol
from ofdmsense.estimate import (
    RangeDopplerMap,
    channel_matrix,
    estimate_target,
    package_series,
    periodogram,
    range_doppler_map,
)
from ofdmsense.params import C0, WaveformConfig, resolution_report, validate_config
from ofdmsense.scene import point_target_snapshot
from ofdmsense.txgen import generate_tx_frame, get_alphabet


def brute_periodogram(F, K, H):
    N, C = F.shape
    P = np.zeros((K, H))
    for n in range(K):
        for m in range(H):
            acc = 0j
            for k in range(N):
                for h in range(C):
                    acc += F[k, h] * np.exp(-2j * np.pi * h * m / H) * np.exp(2j * np.pi * k * n / K)
            P[n, m] = abs(acc) ** 2 / (N * C)
    return P


def test_channel_matrix_basic_cases(rng):
    ftx = np.exp(2j * np.pi * rng.random((8, 5)))
    np.testing.assert_allclose(channel_matrix(ftx, ftx), 1.0)
    np.testing.assert_allclose(channel_matrix(2 * ftx, ftx), 2.0 + 0j)
    with pytest.raises(DimensionMismatch):
        channel_matrix(ftx[:, :4], ftx)
    bad = ftx.copy()
    bad[2, 3] = 0
    with pytest.raises(ZeroTxSymbol):
        channel_matrix(ftx, bad)


def test_channel_matrix_removes_data(small_cfg):
    snaps = [point_target_snapshot(5.0, 0.0, float(t)) for t in small_cfg.column_times()]
    n = np.arange(small_cfg.subcarriers)
    tau = 2 * 5.0 / C0
    assert tau == pytest.approx(33.333e-9, abs=1e-12)
    expected = np.exp(-2j * np.pi * tau * (n * small_cfg.subcarrier_spacing + small_cfg.carrier_frequency))
    for seed, name in [(1, "qpsk"), (2, "16qam")]:
        ftx = generate_tx_frame(small_cfg, get_alphabet(name), seed)
        F = channel_matrix(synthesize_rx(ftx, snaps, small_cfg), ftx)
        np.testing.assert_allclose(F, np.repeat(expected[:, None], small_cfg.columns, 1), atol=1e-12)


def test_dc_input_single_bin():
    rd = periodogram(np.ones((8, 6)), 8, 6, 1.0, 1.0, 1.0)
    assert rd.power[0, 0] == pytest.approx(48.0)
    rest = rd.power.copy()
    rest[0, 0] = 0
    assert rest.max() < 1e-20


def test_pure_tone_velocity_bin():
    H = 16
    F = np.tile(np.exp(2j * np.pi * np.arange(H) * 3 / H), (4, 1))
    est = estimate_target(periodogram(F, 4, H, 1.0, 1.0, 1.0))
    assert est.peak_bin == (0, 3)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(1, 8), c=st.integers(1, 8), pk=st.integers(0, 8), ph=st.integers(0, 8),
       seed=st.integers(0, 2**32 - 1))
def test_matches_double_loop_dft_and_parseval(n, c, pk, ph, seed):
    r = np.random.default_rng(seed)
    F = r.standard_normal((n, c)) + 1j * r.standard_normal((n, c))
    K, H = n + pk, c + ph
    P = periodogram(F, K, H, 1.0, 1.0, 1.0).power
    ref = brute_periodogram(F, K, H)
    np.testing.assert_allclose(P, ref, rtol=1e-9, atol=1e-9 * ref.max())
    assert P.sum() == pytest.approx(K * H * np.sum(np.abs(F) ** 2) / (n * c), rel=1e-9)


def test_pad_length_checks():
    with pytest.raises(BadPadLength):
        periodogram(np.ones((4, 4)), 3, 4, 1.0, 1.0, 1.0)
    with pytest.raises(BadPadLength):
        periodogram(np.ones((4, 4)), 4, 2, 1.0, 1.0, 1.0)


def test_axis_scales_and_velocity_bins():
    rd = periodogram(np.ones((4, 8)), 16, 8, 2.0, 3.0, 0.5)
    assert rd.range_scale == pytest.approx(C0 / (2 * 2.0 * 16))
    assert rd.velocity_scale == pytest.approx(C0 / (2 * 3.0 * 0.5 * 8))
    assert list(rd.velocity_bins()) == [0, 1, 2, 3, 4, -3, -2, -1]


def test_estimate_constructed_maps():
    p = np.zeros((32, 16))
    p[10, 4] = 1.0
    est = estimate_target(RangeDopplerMap(p, 0.05, 0.2))
    assert est.peak_bin == (10, 4)
    assert est.range_hat == pytest.approx(0.5)
    assert est.velocity_hat == pytest.approx(0.8)
    assert estimate_target(RangeDopplerMap(np.ones((5, 5)), 1.0, 1.0)).peak_bin == (0, 0)


def test_static_point_range_bin_wideband():
    cfg = validate_config(WaveformConfig(28e9, 1.5e9, 1024, package_interval=5e-4, packages=8))
    snaps = [point_target_snapshot(5.0, 0.0, float(t)) for t in cfg.column_times()]
    ftx = generate_tx_frame(cfg, get_alphabet("qpsk"), 0)
    rd = range_doppler_map(channel_matrix(synthesize_rx(ftx, snaps, cfg), ftx), cfg, 4096, 8)
    est = estimate_target(rd)
    assert est.peak_bin[0] == round(5 * 2 * cfg.subcarrier_spacing * 4096 / C0)
    assert abs(est.range_hat - 5.0) <= resolution_report(cfg).range_resolution / 2


def test_package_series_modes():
    base = dict(carrier_frequency=28e9, bandwidth=1e9, subcarriers=2, package_interval=1e-3)
    one_pkg = validate_config(WaveformConfig(**base, symbols_per_frame=4))
    F = np.arange(8.0).reshape(2, 4)
    G, step = package_series(F, one_pkg)
    assert G is F and step == one_pkg.ofdm_duration
    multi = validate_config(WaveformConfig(**base, symbols_per_frame=2, packages=2))
    G, step = package_series(F, multi)
    np.testing.assert_allclose(G, [[0.5, 2.5], [4.5, 6.5]])
    assert step == 1e-3
    with pytest.raises(DimensionMismatch):
        package_series(F[:, :3], multi)


def _point_matrix(r0, v):
    cfg = validate_config(WaveformConfig(28e9, 1.5e9, 64, package_interval=5e-4, packages=128))
    snaps = [point_target_snapshot(r0, v, float(t)) for t in cfg.column_times()]
    ftx = generate_tx_frame(cfg, get_alphabet("qpsk"), 0)
    return cfg, channel_matrix(synthesize_rx(ftx, snaps, cfg, range_migration=False), ftx)


@pytest.mark.parametrize("scale", [3.0, -0.5j, 1e-6 * np.exp(1j)])
def test_peak_invariant_to_complex_scaling(scale):
    cfg, F = _point_matrix(3.33, 1.2)
    a = estimate_target(range_doppler_map(F, cfg, 256, 512))
    b = estimate_target(range_doppler_map(scale * F, cfg, 256, 512))
    assert a.peak_bin == b.peak_bin


@pytest.mark.parametrize("r0", [1.0, 2.37, 4.91])
def test_zero_padding_refines_range(r0):
    cfg, F = _point_matrix(r0, 0.0)
    dr = resolution_report(cfg).range_resolution
    coarse = estimate_target(range_doppler_map(F, cfg, 128, 128)).range_hat
    fine = estimate_target(range_doppler_map(F, cfg, 256, 128)).range_hat
    assert abs(fine - coarse) <= dr / 2
    assert abs(fine - r0) <= abs(coarse - r0) + 1e-12


@pytest.mark.parametrize("delta", [0.1, 0.5, 1.0, 2.0])
def test_velocity_aliasing(delta):
    cfg, F = _point_matrix(4.0, 0.0)
    rep = resolution_report(cfg)
    cfg, F = _point_matrix(4.0, rep.max_velocity + delta)
    est = estimate_target(range_doppler_map(F, cfg, 64, 1024))
    assert abs(est.velocity_hat - (-rep.max_velocity + delta)) <= rep.velocity_resolution_packaged / 2
