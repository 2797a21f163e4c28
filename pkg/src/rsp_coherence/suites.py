"""Property suites run by the ``verify`` subcommand.

Each suite returns a :class:`SuiteResult`; the report passes only if every
suite does.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .coherence import (
    ESTABLISHED_TOL,
    cqb,
    enhancement_avg,
    geometric_discord,
    payoff,
    payoff_avg,
    payoff_avg_numeric,
    payoff_entries,
    witness,
)
from .noise import NoiseParams, grid, payoff_surface, rho_noise, rho_p
from .optics import (
    equal_up_to_global_phase,
    global_phase_factor,
    qhq_phase_shifter,
    u_dagger_optical,
    verifier_optical,
)
from .oracles import discord_by_direction_search
from .protocol import (
    RspChannelSpec,
    epr_psi_minus,
    ideal_spec,
    rsp_output_closed_form,
    rsp_output_operational,
    u_dagger,
    u_target,
)
from .qmat import H, I4, Z, fidelity_with_target, frobenius_distance, partial_trace_A, random_density
from .sampling import GENERATOR, ShotConfig, estimate_witness

FAULTS = ("wrong-correction-rule",)


@dataclass
class SuiteResult:
    name: str
    samples: int
    max_deviation: float
    tolerance: float
    passed: bool


def _result(name, devs, tol):
    devs = np.asarray(devs, dtype=float)
    worst = float(devs.max()) if devs.size else 0.0
    return SuiteResult(name, int(devs.size), worst, tol, bool(worst <= tol))


def _ensemble(seed, n):
    rng = np.random.default_rng([seed, n])
    return [(random_density(rng), float(rng.uniform(0, 2 * np.pi))) for _ in range(n)]


def _spec(phi, fault):
    if fault == "wrong-correction-rule":
        return RspChannelSpec(u_dagger(phi), Z, correction_rule=1)
    return ideal_spec(phi)


def suite_equivalence(seed, n=1000, fault=None):
    """Payoff (fidelity route) against enhancement measured on the operational output."""
    devs = []
    for rho, phi in _ensemble(seed, n):
        u = u_target(phi)
        rho_b = partial_trace_A(rho)
        rho_tilde = rsp_output_operational(rho, _spec(phi, fault))
        dw = witness(rho_tilde, u, 0).value - witness(rho_b, u, 0).value
        devs.append(abs(payoff(rho, phi) - dw))
    return _result("equivalence", devs, 1e-10)


def suite_fidelity_witness(seed, n=1000):
    devs = []
    for rho, phi in _ensemble(seed, n):
        u = u_target(phi)
        for state in (rsp_output_closed_form(rho, phi), partial_trace_A(rho)):
            devs.append(abs(fidelity_with_target(state, phi) - witness(state, u, 0).value - 0.5))
    return _result("fidelity_witness", devs, 1e-10)


def suite_payoff_entries(seed, n=200):
    devs = [abs(payoff(r, p) - payoff_entries(r, p)) for r, p in _ensemble(seed, n)]
    return _result("payoff_entry_formula", devs, 1e-10)


def suite_operational(seed, n=500, fault=None):
    devs = [
        frobenius_distance(rsp_output_operational(r, _spec(p, fault)), rsp_output_closed_form(r, p))
        for r, p in _ensemble(seed, n)
    ]
    return _result("operational_closed_form", devs, 1e-10)


def suite_averages(seed, n=100):
    states = [epr_psi_minus(), rho_noise()] + [r for r, _ in _ensemble(seed, n)]
    devs = []
    for r in states:
        devs.append(abs(payoff_avg(r) - payoff_avg_numeric(r)))
        # both averages are the same entry formula, so they must agree bit for bit
        devs.append(0.0 if payoff_avg(r) == enhancement_avg(r) else np.inf)
    return _result("averages", devs, 1e-9)


def suite_optics(n=64):
    devs = []
    for theta in 2 * np.pi * np.arange(n) / n:
        for got, want in (
            (qhq_phase_shifter(theta), np.diag([1, np.exp(1j * theta)])),
            (u_dagger_optical(theta), u_dagger(theta)),
        ):
            c = global_phase_factor(got, want)
            devs.append(np.inf if c is None else np.linalg.norm(got - c * want))
    devs.append(0.0 if equal_up_to_global_phase(verifier_optical(0.0), H) else np.inf)
    return _result("optics_realization", devs, 1e-10)


def suite_noise_surface(step=0.05):
    axis = grid(step)
    devs = [abs(pt.delta_w - pt.closed_form) for pt in payoff_surface(axis, axis) if pt.admissible]
    return _result("noise_surface", devs, 1e-12)


def suite_discord(seed, n=20):
    states = [r for r, _ in _ensemble(seed, n)]
    states += [rho_p(NoiseParams(p, p)) for p in (0.05, 0.1, 0.15, 0.25, 0.4)]
    devs = [abs(geometric_discord(r) - discord_by_direction_search(r)) for r in states]
    devs.append(abs(geometric_discord(epr_psi_minus()) - 0.5))
    devs.append(abs(geometric_discord(I4 / 4)))
    return _result("geometric_discord", devs, 1e-3)


def suite_witness_balance(seed, n=200):
    rng = np.random.default_rng([seed, 7])
    devs = []
    for rho, phi in _ensemble(seed, n):
        state = partial_trace_A(rho)
        for ch in (H, u_target(phi), u_target(rng.uniform(0, 2 * np.pi)).T):
            devs.append(abs(witness(state, ch, 0).value + witness(state, ch, 1).value))
    return _result("witness_balance", devs, 1e-10)


def suite_cqb_zeros():
    rho = rho_noise()
    rho_b = partial_trace_A(rho)
    devs = []
    for deg in (90, 270):
        v = cqb(rsp_output_closed_form(rho, np.deg2rad(deg)), rho_b, H, 0)
        devs.append(abs(v.w_tilde) if not v.established else np.inf)
    return _result("cqb_not_established", devs, 1e-12)


def suite_sampling(cfg: ShotConfig, z=4.0):
    """Sampled witnesses against exact values, deviation measured in standard errors."""
    rho = rho_noise()
    rho_b = partial_trace_A(rho)
    devs = []
    k = 0
    for deg in (0, 45, 135, 180):
        phi = np.deg2rad(deg)
        rho_ba = rsp_output_closed_form(rho, phi)
        for state in (rho_ba, rho_b):
            for ch in (u_target(phi), H):
                exact = witness(state, ch, 0).value
                est = estimate_witness(state, ch, 0, cfg, cfg.rng(1000 + k))
                k += 1
                devs.append(abs(est.value - exact) / est.stderr if est.stderr > 0 else 0.0)
    return _result("sampled_consistency_sigma", devs, z)


def run_all(seed=0, shots=1_000_000, fault=None):
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    cfg = ShotConfig(shots, seed)
    results = [
        suite_equivalence(seed, fault=fault),
        suite_fidelity_witness(seed),
        suite_payoff_entries(seed),
        suite_operational(seed, fault=fault),
        suite_averages(seed),
        suite_optics(),
        suite_noise_surface(),
        suite_discord(seed),
        suite_witness_balance(seed),
        suite_cqb_zeros(),
        suite_sampling(cfg),
    ]
    return {
        "metadata": {"command": "verify", "version": __version__, "generator": GENERATOR,
                     "seed": seed, "shots": shots, "fault": fault,
                     "established_tol": ESTABLISHED_TOL},
        "suites": [asdict(r) for r in results],
        "passed": all(r.passed for r in results),
    }
