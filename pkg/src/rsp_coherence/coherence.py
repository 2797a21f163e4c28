"""Coherence witness, RSP payoff, coherence enhancement and the one-sided
coherence-quantum-benefit criteria.

A verifier ``channel`` is given as the matrix ``C`` with
``E(rho) = C^dagger rho C``; pass ``u_target(phi)`` for the target-adapted
verifier and the Hadamard for the fixed one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .protocol import rsp_output_closed_form, u_target
from .qmat import (
    PAULIS,
    check_density,
    check_unitary,
    fidelity_with_target,
    partial_trace_A,
)

ESTABLISHED_TOL = 1e-9
INCOHERENT_TOL = 1e-12
DEFAULT_GRID = 360


class IncoherentChannelError(ValueError):
    """The verifier maps basis states to basis states, so every witness vanishes."""


@dataclass(frozen=True)
class WitnessReport:
    value: float
    coherent_term: float
    incoherent_term: float
    q_index: int


@dataclass(frozen=True)
class CqbVerdict:
    """Outcome of the one-sided criteria for a received state.

    ``delta_gt`` is set when ``W(rho_tilde) > 0`` and ``delta_lt`` when
    ``W(rho_tilde) < 0``; ``established`` additionally needs that difference
    to be positive.
    """

    w_tilde: float
    w_b: float
    delta_gt: Optional[float]
    delta_lt: Optional[float]
    established: bool

    @property
    def magnitude(self) -> float:
        if not self.established:
            return 0.0
        return self.delta_gt if self.delta_gt is not None else self.delta_lt


def check_channel(channel):
    c = check_unitary(channel, 2)
    mags = np.abs(c)
    if np.all((mags < INCOHERENT_TOL) | (mags > 1 - INCOHERENT_TOL)):
        raise IncoherentChannelError("channel maps every basis state to a basis state")
    return c


def check_q(q):
    if q not in (0, 1):
        raise ValueError("q must be 0 or 1")


def reference_populations(channel, q):
    """``Omega_qj = <q|E(|j><j|)|q>`` for ``j = 0, 1``."""
    c = np.asarray(channel)
    return np.abs(c[:, q]) ** 2


def witness(rho, channel, q=0) -> WitnessReport:
    """Population of ``|q>`` after the verifier minus what the diagonal part alone gives."""
    m = check_density(rho, 2)
    c = check_channel(channel)
    check_q(q)
    col = c[:, q]
    coherent = float((col.conj() @ m @ col).real)
    incoherent = float(np.dot(np.diag(m).real, reference_populations(c, q)))
    return WitnessReport(coherent - incoherent, coherent, incoherent, q)


def payoff(rho_ab, phi) -> float:
    """Fidelity gain of Bob's state from running the protocol over ignoring Alice."""
    rho_ba = rsp_output_closed_form(rho_ab, phi)
    rho_b = partial_trace_A(rho_ab)
    return fidelity_with_target(rho_ba, phi) - fidelity_with_target(rho_b, phi)


def payoff_entries(rho_ab, phi) -> float:
    """The payoff written out in entries of ``rho_AB`` (cross-check of :func:`payoff`)."""
    r = check_density(rho_ab, 4)
    e1, e2 = np.exp(1j * phi), np.exp(2j * phi)
    val = -0.5 * (
        r[2, 1] + r[1, 2] + e2 * r[0, 3] + np.conj(e2) * r[3, 0]
        + e1 * (r[0, 1] + r[2, 3]) + np.conj(e1) * (r[1, 0] + r[3, 2])
    )
    return float(val.real)


def _entry_average(rho_ab) -> float:
    r = check_density(rho_ab, 4)
    return float(-(r[1, 2] + r[2, 1]).real / 2)


def payoff_avg(rho_ab) -> float:
    """Payoff averaged over the equator, ``-(r23 + r32)/2``."""
    return _entry_average(rho_ab)


def enhancement_avg(rho_ab) -> float:
    return _entry_average(rho_ab)


def phase_grid(n=DEFAULT_GRID):
    """``n`` equally spaced phases on ``[0, 2 pi)``."""
    return 2 * np.pi * np.arange(n) / n


def equator_average(f, n=DEFAULT_GRID) -> float:
    """Trapezoid rule for ``(1/2pi) int_0^{2pi} f(phi) dphi`` on ``n`` intervals."""
    phis = np.linspace(0, 2 * np.pi, n + 1)
    vals = np.array([f(p) for p in phis])
    return float(np.trapezoid(vals, phis) / (2 * np.pi))


def payoff_avg_numeric(rho_ab, n=DEFAULT_GRID) -> float:
    return equator_average(lambda p: payoff(rho_ab, p), n)


def coherence_enhancement(rho_ab, phi):
    """``W(rho_B|A) - W(rho_B)`` under the target-adapted verifier with ``q = 0``.

    Returns ``(value, valid)``; ``valid`` is the side condition ``W(rho_B|A) > 0``.
    """
    u = u_target(phi)
    w_ba = witness(rsp_output_closed_form(rho_ab, phi), u, 0).value
    w_b = witness(partial_trace_A(rho_ab), u, 0).value
    return w_ba - w_b, w_ba > ESTABLISHED_TOL


def enhancement_avg_numeric(rho_ab, n=DEFAULT_GRID) -> float:
    return equator_average(lambda p: coherence_enhancement(rho_ab, p)[0], n)


def cqb(rho_tilde, rho_b, channel, q=0, tol=ESTABLISHED_TOL) -> CqbVerdict:
    w_t = witness(rho_tilde, channel, q).value
    w_b = witness(rho_b, channel, q).value
    gt = lt = None
    if w_t > tol:
        gt = w_t - w_b
        established = gt > tol
    elif w_t < -tol:
        lt = w_b - w_t
        established = lt > tol
    else:
        established = False
    return CqbVerdict(w_t, w_b, gt, lt, established)


def cqb_equator_average(rho_ab, channel, q=0, n_samples=DEFAULT_GRID) -> float:
    """Mean established benefit over ``n_samples`` equally spaced target phases."""
    if n_samples < 8:
        raise ValueError("n_samples must be at least 8")
    rho_b = partial_trace_A(rho_ab)
    total = 0.0
    for phi in phase_grid(n_samples):
        total += cqb(rsp_output_closed_form(rho_ab, phi), rho_b, channel, q).magnitude
    return total / n_samples


def correlation_data(rho_ab):
    """Alice's Bloch vector and the correlation matrix ``T_ij = tr(rho s_i (x) s_j)``."""
    r = check_density(rho_ab, 4)
    x = np.array([np.trace(r @ np.kron(s, np.eye(2))).real for s in PAULIS])
    t = np.array([[np.trace(r @ np.kron(si, sj)).real for sj in PAULIS] for si in PAULIS])
    return x, t


def geometric_discord(rho_ab) -> float:
    """Hilbert-Schmidt distance squared to the nearest classical-quantum state
    (classical on Alice's side), ``(|x|^2 + |T|^2 - k_max)/4``."""
    x, t = correlation_data(rho_ab)
    k = np.outer(x, x) + t @ t.T
    k_max = np.linalg.eigvalsh(k)[-1]
    return max(0.0, float((x @ x + np.sum(t * t) - k_max) / 4))
