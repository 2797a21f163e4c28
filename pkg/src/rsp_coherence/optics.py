"""Jones-calculus model of the waveplate stacks used for U-dagger, the
Z correction, and the verifier's coherence-creating operation.

Angles are fast-axis angles from horizontal, in radians, all measured in
one lab frame. A plate at ``angle`` has Jones matrix ``R(-angle) J0 R(angle)``
with ``J0 = diag(1, -1)`` (half-wave) or ``diag(1, i)`` (quarter-wave).

The phase shifter is the stack QWP(+45 deg), HWP(a), QWP(+45 deg), which
acts as ``diag(1, e^{i(4a - pi)})``. The stack with the exit QWP at -45 deg
in the same frame is a reflection, ``X diag(1, e^{i(4a - pi)})``; see
:func:`crossed_qhq`.
"""

from __future__ import annotations

from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from .qmat import check_unitary


class Plate(Enum):
    HWP = "HWP"
    QWP = "QWP"


class WaveplateSetting(NamedTuple):
    kind: Plate
    angle: float

    @classmethod
    def make(cls, kind, angle):
        return cls(Plate(kind), float(np.mod(angle, np.pi)))

    def jones(self):
        return jones_hwp(self.angle) if self.kind is Plate.HWP else jones_qwp(self.angle)


def _rotation(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def _plate(retarder, angle):
    if not np.isfinite(angle):
        raise ValueError("waveplate angle must be finite")
    return _rotation(-angle) @ retarder @ _rotation(angle)


def jones_hwp(angle):
    """Half-wave plate, ``[[cos 2a, sin 2a], [sin 2a, -cos 2a]]``."""
    return _plate(np.diag([1, -1]).astype(np.complex128), angle)


def jones_qwp(angle):
    return _plate(np.diag([1, 1j]), angle)


def compose(ops: Sequence):
    """Product of operators in application order (``ops[0]`` acts first)."""
    if len(ops) == 0:
        raise ValueError("compose needs at least one operator")
    out = np.eye(2, dtype=np.complex128)
    for op in ops:
        op = np.asarray(op, dtype=np.complex128)
        if op.shape != (2, 2):
            raise ValueError("compose only handles single-qubit operators")
        out = op @ out
    return out


def global_phase_factor(a, b):
    """Unit-modulus ``c`` minimising ``|a - c b|``, taken from the largest entry of ``b``."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(a[k]) == 0:
        return None
    r = a[k] / b[k]
    return r / abs(r)


def equal_up_to_global_phase(a, b, tol=1e-10) -> bool:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    c = global_phase_factor(a, b)
    if c is None:
        return False
    return float(np.linalg.norm(a - c * b)) <= tol


def qhq_mount_angle(theta) -> float:
    """Middle-HWP mount angle producing relative phase ``theta``.

    Convention-dependent: with both QWPs at +45 deg the stack's phase is
    ``4a - pi``, so ``a = (theta + pi)/4`` reduced to ``[0, pi)``.
    """
    return float(np.mod((theta + np.pi) / 4, np.pi))


def qhq_settings(theta):
    return (
        WaveplateSetting.make(Plate.QWP, np.pi / 4),
        WaveplateSetting.make(Plate.HWP, qhq_mount_angle(theta)),
        WaveplateSetting.make(Plate.QWP, np.pi / 4),
    )


def qhq_phase_shifter(theta):
    """QWP-HWP-QWP stack equal to ``diag(1, e^{i theta})`` up to global phase."""
    if not np.isfinite(theta):
        raise ValueError("theta must be finite")
    return compose([s.jones() for s in qhq_settings(theta)])


def crossed_qhq(theta):
    """QWP(+45 deg), HWP, QWP(-45 deg) with the same middle-plate angle as
    :func:`qhq_phase_shifter`.

    Equals ``X diag(1, e^{i theta})`` up to global phase. Followed by the
    analyzer HWP at 22.5 deg it gives ``Z H diag(1, e^{i theta})``, which has
    the same H/V detection populations as ``H diag(1, e^{i theta})``.
    """
    a = qhq_mount_angle(theta)
    return compose([jones_qwp(np.pi / 4), jones_hwp(a), jones_qwp(-np.pi / 4)])


def identity_setting():
    """Bob's populations-only setting: QWPs at 0, HWP at 0."""
    return compose([jones_qwp(0.0), jones_hwp(0.0), jones_qwp(0.0)])


def analyzer_hwp():
    """The polarization analyzer's HWP at 22.5 deg (a Hadamard up to phase)."""
    return jones_hwp(np.pi / 8)


def u_dagger_optical(phi):
    """Jones realization of ``U(phi)^dagger``: phase shifter at ``-phi`` then the analyzer HWP."""
    return check_unitary(compose([qhq_phase_shifter(-phi), analyzer_hwp()]))


def correction_optical():
    """Bob's pi rotation about z, realized by the phase shifter at ``pi``."""
    return qhq_phase_shifter(np.pi)


def verifier_optical(theta):
    """Verifier operation built from phase shifter and analyzer HWP; Hadamard at ``theta = 0``."""
    return compose([qhq_phase_shifter(theta), analyzer_hwp()])

