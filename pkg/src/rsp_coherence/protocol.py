"""Remote state preparation: Alice rotates and measures her half of the
shared pair, sends one bit, and Bob conditionally applies a pi rotation.

Two routes to Bob's final state are provided. :func:`rsp_output_operational`
simulates the protocol step by step for arbitrary (possibly imperfect)
implementations; :func:`rsp_output_closed_form` writes the ideal result
directly in terms of the entries of ``rho_AB``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .qmat import I2, Z, check_density, check_unitary, projector

ZERO_PROB = 1e-14


def u_target(phi):
    """Coherence-creating unitary with ``U|0>`` equal to the equatorial target."""
    e = np.exp(1j * phi)
    return np.array([[1, 1], [e, -e]], dtype=np.complex128) / np.sqrt(2)


def u_dagger(phi):
    return u_target(phi).conj().T


_PSI_MINUS = np.array([0, 1, -1, 0], dtype=np.complex128) / np.sqrt(2)


def epr_psi_minus():
    """Singlet ``(|01> - |10>)/sqrt(2)`` as a density matrix."""
    return projector(_PSI_MINUS)


@dataclass(frozen=True)
class RspChannelSpec:
    """How Alice and Bob actually implement their operations.

    ``u_dagger_impl`` is applied to Alice's qubit before her computational
    basis measurement; ``correction_impl`` is applied by Bob when Alice
    reports ``correction_rule``.
    """

    u_dagger_impl: np.ndarray
    correction_impl: np.ndarray
    correction_rule: int = 0

    def __post_init__(self):
        object.__setattr__(self, "u_dagger_impl", check_unitary(self.u_dagger_impl, 2))
        object.__setattr__(self, "correction_impl", check_unitary(self.correction_impl, 2))
        if self.correction_rule not in (0, 1):
            raise ValueError("correction_rule must be 0 or 1")


def ideal_spec(phi, correction_rule=0):
    return RspChannelSpec(u_dagger(phi), Z, correction_rule)


@dataclass(frozen=True)
class RspOutcome:
    alice_bit: int
    probability: float
    bob_state: Optional[np.ndarray]  # None when the branch has zero probability

    @property
    def occurred(self) -> bool:
        return self.bob_state is not None


def alice_measure(rho_ab, spec: RspChannelSpec):
    """Both measurement branches with Born probabilities and Bob's
    normalised conditional state (before correction)."""
    rho = check_density(rho_ab, 4)
    v = np.kron(spec.u_dagger_impl, I2)
    rotated = v @ rho @ v.conj().T
    blocks = rotated.reshape(2, 2, 2, 2)
    outcomes = []
    for a in (0, 1):
        unnorm = blocks[a, :, a, :]
        p = float(np.trace(unnorm).real)
        if p <= ZERO_PROB:
            outcomes.append(RspOutcome(a, 0.0, None))
        else:
            outcomes.append(RspOutcome(a, p, unnorm / p))
    return outcomes


def bob_correct(outcome: RspOutcome, spec: RspChannelSpec):
    if not outcome.occurred:
        raise ValueError(f"branch {outcome.alice_bit} has zero probability")
    if outcome.alice_bit == spec.correction_rule:
        c = spec.correction_impl
        return c @ outcome.bob_state @ c.conj().T
    return outcome.bob_state


def rsp_output_operational(rho_ab, spec: RspChannelSpec):
    """Bob's state averaged over Alice's outcomes after the conditional correction."""
    out = np.zeros((2, 2), dtype=np.complex128)
    for o in alice_measure(rho_ab, spec):
        if o.occurred:
            out += o.probability * bob_correct(o, spec)
    return out


def rsp_output_closed_form(rho_ab, phi):
    """Ideal-protocol output built from entries of ``rho_AB``.

    With 1-based entries ``r_mn``::

        [[r11 + r33,                          -e^{-i phi} r32 - e^{i phi} r14],
         [-e^{i phi} r23 - e^{-i phi} r41,    r22 + r44                      ]]
    """
    r = check_density(rho_ab, 4)
    ep, em = np.exp(1j * phi), np.exp(-1j * phi)
    off = -em * r[2, 1] - ep * r[0, 3]
    return np.array(
        [
            [r[0, 0] + r[2, 2], off],
            [np.conj(off), r[1, 1] + r[3, 3]],
        ],
        dtype=np.complex128,
    )
