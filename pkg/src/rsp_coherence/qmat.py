"""Dense complex matrix primitives for one- and two-qubit states.

States are plain ``numpy`` arrays. Two-qubit operators use the basis
``|m_A m_B>`` with Bob's index varying fastest, so ``rho[1, 2]`` is
``<01|rho|10>``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
UNITARY_TOL = 1e-10

MAX_DIM = 4


class InvalidStateError(ValueError):
    """Raised when a matrix violates a density-operator invariant."""


class BlochVector(NamedTuple):
    x: float
    y: float
    z: float

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.x**2 + self.y**2 + self.z**2))


def _frozen(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


I2 = _frozen(np.eye(2))
I4 = _frozen(np.eye(4))
X = _frozen([[0, 1], [1, 0]])
Y = _frozen([[0, -1j], [1j, 0]])
Z = _frozen([[1, 0], [0, -1]])
H = _frozen(np.array([[1, 1], [1, -1]]) / np.sqrt(2))
PAULIS = (X, Y, Z)

KET0 = _frozen([1, 0])
KET1 = _frozen([0, 1])


def as_matrix(a, dim=None):
    """Coerce ``a`` to a square complex matrix with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise ValueError(f"expected dimension {dim}, got {m.shape[0]}")
    if m.shape[0] not in (2, 4):
        raise ValueError(f"only dimensions 2 and 4 are supported, got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has NaN or infinite entries")
    return m


def min_eigenvalue(m) -> float:
    """Smallest eigenvalue of a Hermitian matrix of dimension 2 or 4."""
    if m.shape[0] == 2:
        a, d = m[0, 0].real, m[1, 1].real
        b = m[0, 1]
        return float((a + d) / 2 - np.sqrt(((a - d) / 2) ** 2 + abs(b) ** 2))
    return float(np.linalg.eigvalsh(m)[0])


def check_density(rho, dim=None):
    """Validate ``rho`` as a density operator and return it as an array.

    Raises
    ------
    InvalidStateError
        If ``rho`` is not Hermitian, not unit trace, or has an eigenvalue
        below ``-PSD_TOL``.
    """
    try:
        m = as_matrix(rho, dim)
    except ValueError as exc:
        raise InvalidStateError(str(exc)) from None
    if np.max(np.abs(m - m.conj().T)) > HERMITIAN_TOL:
        raise InvalidStateError("matrix is not Hermitian")
    tr = np.trace(m)
    if abs(tr - 1) > TRACE_TOL:
        raise InvalidStateError(f"trace is {tr.real:.12g}, expected 1")
    lam = min_eigenvalue(m)
    if lam < -PSD_TOL:
        raise InvalidStateError(f"matrix has negative eigenvalue {lam:.3g}")
    return m


def is_density(rho, dim=None) -> bool:
    try:
        check_density(rho, dim)
    except InvalidStateError:
        return False
    return True


def check_unitary(u, dim=None):
    m = as_matrix(u, dim)
    eye = np.eye(m.shape[0])
    if np.max(np.abs(m.conj().T @ m - eye)) > UNITARY_TOL:
        raise ValueError("matrix is not unitary")
    return m


def ket(amps):
    """Normalised ket; raises if the amplitudes are not unit norm."""
    v = np.asarray(amps, dtype=np.complex128).ravel()
    if abs(np.linalg.norm(v) - 1) > 1e-10:
        raise ValueError("ket is not normalised")
    return v


def projector(v):
    v = np.asarray(v, dtype=np.complex128).ravel()
    return np.outer(v, v.conj())


def target_ket(phi):
    """Equatorial target ``(|0> + e^{i phi}|1>)/sqrt(2)``."""
    return np.array([1, np.exp(1j * phi)]) / np.sqrt(2)


def target_state(phi):
    return projector(target_ket(phi))


def tensor(a, b):
    """Kronecker product with the second factor's index varying fastest."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.ndim != 2 or b.ndim != 2 or a.shape[0] != a.shape[1] or b.shape[0] != b.shape[1]:
        raise ValueError("tensor expects square matrices")
    if a.shape[0] * b.shape[0] > MAX_DIM:
        raise ValueError(f"tensor product dimension {a.shape[0] * b.shape[0]} exceeds {MAX_DIM}")
    return np.kron(a, b)


def partial_trace_A(rho_ab):
    """Bob's marginal ``tr_A(rho_AB)``."""
    m = check_density(rho_ab, 4)
    return np.einsum("ajak->jk", m.reshape(2, 2, 2, 2))


def partial_trace_B(rho_ab):
    m = check_density(rho_ab, 4)
    return np.einsum("ajbj->ab", m.reshape(2, 2, 2, 2))


def fidelity_with_target(rho, phi) -> float:
    """``tr(rho |s><s|)`` for the equatorial target at phase ``phi``."""
    m = check_density(rho, 2)
    s = target_ket(phi)
    return float((s.conj() @ m @ s).real)


def decompose_diag_coh(rho):
    """Split ``rho`` into its diagonal part and its zero-diagonal coherence part.

    ``rho_d + rho_c`` reproduces ``rho`` exactly: the coherence part is built
    by zeroing the diagonal rather than by subtraction.
    """
    m = check_density(rho)
    rho_d = np.diag(np.diag(m))
    rho_c = m.copy()
    np.fill_diagonal(rho_c, 0)
    return rho_d, rho_c


def bloch_vector(rho) -> BlochVector:
    m = check_density(rho, 2)
    return BlochVector(*(float(np.trace(m @ p).real) for p in PAULIS))


def purity(rho) -> float:
    m = as_matrix(rho)
    return float(np.trace(m @ m).real)


def frobenius_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.sqrt(np.sum(np.abs(a - b) ** 2)))


def random_pure_ket(rng, dim=4):
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(rng, dim=4, max_rank=4):
    """Mixture of 1..max_rank random pure states with random weights."""
    rank = int(rng.integers(1, max_rank + 1))
    w = rng.random(rank)
    w /= w.sum()
    rho = sum(wk * projector(random_pure_ket(rng, dim)) for wk in w)
    # exact Hermiticity and unit trace, removing rounding from the sum
    rho = (rho + rho.conj().T) / 2
    return rho / np.trace(rho).real
