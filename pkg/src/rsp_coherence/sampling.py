"""Finite photon-counting statistics.

Every measurement setting is an independent binomial experiment with
``shots`` detected pairs. Randomness comes from numpy's PCG64 generator;
row-level substreams are derived from ``(seed, row)`` so results do not
depend on evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .coherence import check_channel, check_q, reference_populations, witness
from .optics import identity_setting
from .qmat import check_density, fidelity_with_target

GENERATOR = "PCG64"
DEFAULT_SHOTS = 10_000


@dataclass(frozen=True)
class ShotConfig:
    shots: int = DEFAULT_SHOTS
    seed: int = 0

    def __post_init__(self):
        if int(self.shots) != self.shots or self.shots < 1:
            raise ValueError("shots must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    def rng(self, *stream):
        """Generator for substream ``stream`` (e.g. a row index)."""
        return np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, *stream])))


class Estimate(NamedTuple):
    value: float
    stderr: float


def sample_counts(probability, cfg: ShotConfig, rng=None) -> int:
    """Number of detections out of ``cfg.shots`` for a setting with success ``probability``."""
    p = float(probability)
    # rounding can leave exact-arithmetic probabilities a hair outside [0, 1]
    if -1e-12 < p < 0:
        p = 0.0
    elif 1 < p < 1 + 1e-12:
        p = 1.0
    if not 0 <= p <= 1:
        raise ValueError(f"probability {probability} outside [0, 1]")
    if rng is None:
        rng = cfg.rng()
    return int(rng.binomial(cfg.shots, p))


def estimate_population(probability, cfg: ShotConfig, rng) -> Estimate:
    n = cfg.shots
    f = sample_counts(probability, cfg, rng) / n
    return Estimate(f, float(np.sqrt(f * (1 - f) / n)))


def witness_settings(rho, channel, q):
    """Detection probabilities of the three settings used to measure the witness.

    1. population of ``|q>`` after the verifier acts on ``rho``;
    2. population of ``|0>`` with Bob's stack set to identity (gives the diagonal);
    3. population of ``|q>`` after the verifier acts on ``|0>`` and on ``|1>``.
    """
    m = check_density(rho, 2)
    c = check_channel(channel)
    col = c[:, q]
    coherent = float((col.conj() @ m @ col).real)
    ident = identity_setting()
    diag0 = float((ident @ m @ ident.conj().T)[0, 0].real)
    omega = reference_populations(c, q)
    return coherent, diag0, float(omega[0]), float(omega[1])


def estimate_witness(rho, channel, q=0, cfg: Optional[ShotConfig] = None, rng=None) -> Estimate:
    """Witness estimated from sampled counts, with its propagated standard error.

    With ``cfg=None`` the exact witness is returned with zero error.
    """
    check_q(q)
    if cfg is None:
        return Estimate(witness(rho, channel, q).value, 0.0)
    if rng is None:
        rng = cfg.rng()
    coherent, diag0, om0, om1 = witness_settings(rho, channel, q)
    n = cfg.shots
    pq = estimate_population(coherent, cfg, rng).value
    d0 = estimate_population(diag0, cfg, rng).value
    o0 = estimate_population(om0, cfg, rng).value
    o1 = estimate_population(om1, cfg, rng).value
    d1 = 1 - d0
    value = pq - (d0 * o0 + d1 * o1)
    var = (
        pq * (1 - pq)
        + (o0 - o1) ** 2 * d0 * d1
        + d0**2 * o0 * (1 - o0)
        + d1**2 * o1 * (1 - o1)
    ) / n
    return Estimate(value, float(np.sqrt(var)))


def estimate_fidelity(rho, phi, cfg: Optional[ShotConfig] = None, rng=None) -> Estimate:
    """Target fidelity from one analyzer setting projecting onto ``|s>``."""
    f = fidelity_with_target(rho, phi)
    if cfg is None:
        return Estimate(f, 0.0)
    if rng is None:
        rng = cfg.rng()
    return estimate_population(f, cfg, rng)
