import dataclasses
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ofdmsense.errors import InconsistentTiming, NonPositiveParameter
from ofdmsense.params import C0, WaveformConfig, resolution_report, validate_config


def make(**kw):
    base = dict(carrier_frequency=28e9, bandwidth=1.5e9, subcarriers=1024, package_interval=5e-4)
    base.update(kw)
    return WaveformConfig(**base)


def test_derived_timing_for_1p5ghz_1024():
    cfg = validate_config(make())
    assert cfg.subcarrier_spacing == pytest.approx(1.46484375e6, rel=1e-12)
    assert cfg.symbol_duration == pytest.approx(0.6827e-6, rel=1e-4)
    assert cfg.cp_duration == pytest.approx(cfg.symbol_duration / 4)
    assert cfg.ofdm_duration == pytest.approx(cfg.symbol_duration + cfg.cp_duration)


def test_unit_identity_case():
    cfg = validate_config(make(bandwidth=1.0, subcarriers=1, carrier_frequency=10.0, package_interval=2.0))
    assert cfg.subcarrier_spacing == 1.0
    assert cfg.symbol_duration == 1.0


def test_package_must_hold_its_symbols():
    t_o = validate_config(make()).ofdm_duration
    with pytest.raises(InconsistentTiming):
        validate_config(make(symbols_per_frame=16, package_interval=0.5 * 16 * t_o))
    # exactly M * T_O is accepted
    validate_config(make(symbols_per_frame=16, package_interval=16 * t_o))


@pytest.mark.parametrize(
    "field, value",
    [("subcarriers", 0), ("packages", 0), ("symbols_per_frame", -1), ("bandwidth", 0.0),
     ("carrier_frequency", -1.0), ("package_interval", 0.0), ("alphabet", "8psk"), ("cp_duration", 0.0)],
)
def test_non_positive_parameters_rejected(field, value):
    with pytest.raises(NonPositiveParameter):
        validate_config(make(**{field: value}))


def test_inconsistent_supplied_spacing_rejected():
    with pytest.raises(InconsistentTiming):
        validate_config(make(subcarrier_spacing=1.5e6))
    with pytest.raises(InconsistentTiming):
        validate_config(make(symbol_duration=0.68e-6))
    ok = validate_config(make(subcarrier_spacing=1.5e9 / 1024))
    assert ok.subcarrier_spacing == pytest.approx(1.5e9 / 1024)


def test_range_resolution_is_ten_cm_at_1p5ghz():
    assert resolution_report(make()).range_resolution == pytest.approx(0.1, rel=1e-12)


def test_velocity_limits_at_2khz_packets():
    rep = resolution_report(make())
    assert rep.max_velocity == pytest.approx(5.357, abs=5e-4)
    assert rep.max_doppler == pytest.approx(1000.0)


def test_frame_velocity_resolution_with_0p85us_symbols():
    t = 1024 / 1.5e9
    cfg = make(symbols_per_frame=16, cp_duration=0.85e-6 - t, package_interval=1e-3)
    rep = resolution_report(cfg)
    assert rep.velocity_resolution_frame == pytest.approx(393.9, abs=0.05)


def test_max_range_is_cyclic_prefix_limit():
    cfg = validate_config(make())
    assert resolution_report(cfg).max_range == pytest.approx(C0 * cfg.cp_duration / 2)


def test_column_times_order():
    cfg = validate_config(make(subcarriers=4, symbols_per_frame=3, packages=2))
    t = cfg.column_times()
    t_o, t_f = cfg.ofdm_duration, cfg.package_interval
    expected = [0, t_o, 2 * t_o, t_f, t_f + t_o, t_f + 2 * t_o]
    assert t == pytest.approx(expected, rel=1e-12, abs=1e-18)


pos_int = st.integers(min_value=1, max_value=4096)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 2048).map(lambda k: 2 * k), packages=pos_int,
       fc=st.floats(1e9, 1e11), tf=st.floats(1e-5, 1e-2))
def test_reciprocal_scalings(n, packages, fc, tf):
    df = 1e6
    cfg = make(bandwidth=n * df, subcarriers=n, carrier_frequency=fc, package_interval=tf, packages=packages)
    half = dataclasses.replace(cfg, bandwidth=n // 2 * df, subcarriers=n // 2)
    double_l = dataclasses.replace(cfg, packages=2 * packages)
    r, rh, rl = resolution_report(cfg), resolution_report(half), resolution_report(double_l)
    assert rh.range_resolution == pytest.approx(2 * r.range_resolution, rel=1e-12)
    assert rl.velocity_resolution_packaged == pytest.approx(r.velocity_resolution_packaged / 2, rel=1e-12)
    assert 2 * r.max_velocity / r.velocity_resolution_packaged == pytest.approx(packages, rel=1e-12)
    assert r.max_velocity == pytest.approx(r.max_doppler * C0 / (2 * fc), rel=1e-12)
    assert all(v > 0 for v in r.as_dict().values())


def test_report_is_pure():
    a, b = resolution_report(make()), resolution_report(make())
    assert a == b
    assert all(math.isfinite(v) for v in a.as_dict().values())
