import numpy as np
import pytest

from rsp_coherence.coherence import witness
from rsp_coherence.protocol import rsp_output_closed_form, u_target
from rsp_coherence.qmat import H, partial_trace_A
from rsp_coherence.sampling import (
    ShotConfig,
    estimate_fidelity,
    estimate_witness,
    sample_counts,
    witness_settings,
)


def test_sample_counts_edges():
    cfg = ShotConfig(1000, 1)
    assert sample_counts(0.0, cfg) == 0
    assert sample_counts(1.0, cfg) == 1000
    assert sample_counts(-1e-15, cfg) == 0
    with pytest.raises(ValueError):
        sample_counts(1.1, cfg)


def test_fair_coin_within_three_sigma():
    hits = 0
    for seed in range(100):
        k = sample_counts(0.5, ShotConfig(100_000, seed))
        hits += abs(k - 50_000) <= 3 * np.sqrt(0.25 * 100_000)
    assert hits >= 95


def test_substreams_reproducible_and_distinct():
    cfg = ShotConfig(10_000, 7)
    a = [sample_counts(0.3, cfg, cfg.rng(i)) for i in range(4)]
    b = [sample_counts(0.3, cfg, cfg.rng(i)) for i in range(4)]
    assert a == b
    assert len(set(a)) > 1


def test_shot_config_validation():
    for bad in ((0, 1), (1.5, 1), (10, -1)):
        with pytest.raises(ValueError):
            ShotConfig(*bad)


def test_witness_settings_reconstruct_exact(noisy):
    rho = rsp_output_closed_form(noisy, 0.4)
    ch = u_target(0.4)
    p, d0, o0, o1 = witness_settings(rho, ch, 0)
    assert p - (d0 * o0 + (1 - d0) * o1) == pytest.approx(witness(rho, ch, 0).value, abs=1e-15)


def test_exact_mode(noisy):
    rho = rsp_output_closed_form(noisy, 0.0)
    est = estimate_witness(rho, H, 0)
    assert est.stderr == 0 and est.value == witness(rho, H, 0).value
    assert estimate_fidelity(rho, 0.0).value == pytest.approx(0.85)


def test_estimate_close_at_many_shots(noisy):
    rho = partial_trace_A(noisy)
    cfg = ShotConfig(1_000_000, 3)
    est = estimate_witness(rho, u_target(1.0), 1, cfg)
    assert abs(est.value - witness(rho, u_target(1.0), 1).value) <= 5 * est.stderr
    assert 0 < est.stderr < 2e-3


def test_stderr_scales_with_shots(noisy):
    rho = rsp_output_closed_form(noisy, 0.0)
    scaled = []
    for n in (10**3, 10**4, 10**5, 10**6):
        cfg = ShotConfig(n, 11)
        scaled.append(estimate_witness(rho, u_target(0.0), 0, cfg).stderr * np.sqrt(n))
    assert max(scaled) / min(scaled) <= 1.5
