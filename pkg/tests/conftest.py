import numpy as np
import pytest

from ofdmsense.params import WaveformConfig, validate_config


@pytest.fixture
def small_cfg():
    """A tiny waveform: 16 subcarriers over 1.5 GHz, 32 packages at 2 kHz."""
    return validate_config(
        WaveformConfig(
            carrier_frequency=28e9,
            bandwidth=1.5e9,
            subcarriers=16,
            package_interval=5e-4,
            packages=32,
        )
    )


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def pytest_terminal_summary(terminalreporter):
    """Print one PASS/FAIL line per acceptance criterion that ran."""
    import sys

    mod = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")), None)
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
