"""Brute-force reference computations used to cross-check the main routines.

These deliberately avoid the code paths they check: the RSP oracle projects
the untouched 4x4 state with explicit loops, and the discord oracle searches
measurement directions instead of using the eigenvalue formula.
"""

from __future__ import annotations

import numpy as np

from .qmat import PAULIS, Z

_ID2 = np.eye(2)


def rsp_by_projectors(rho_ab, phi):
    """Ideal-protocol output from projectors ``|u_a><u_a| (x) I`` on ``rho_AB``.

    Alice's outcome ``a`` after rotating by U-dagger is a projection onto
    ``U|a>``: ``u_0 = (|0> + e^{i phi}|1>)/sqrt(2)`` (Bob corrects) and
    ``u_1 = (|0> - e^{i phi}|1>)/sqrt(2)``.
    """
    rho = np.asarray(rho_ab, dtype=np.complex128)
    e = np.exp(1j * phi)
    kets = {0: np.array([1, e]) / np.sqrt(2), 1: np.array([1, -e]) / np.sqrt(2)}
    out = np.zeros((2, 2), dtype=np.complex128)
    for bit, u in kets.items():
        proj = np.kron(np.outer(u, u.conj()), _ID2)
        post = proj @ rho @ proj
        bob = np.zeros((2, 2), dtype=np.complex128)
        for i in range(2):
            for j in range(2):
                bob[i, j] = post[i, j] + post[2 + i, 2 + j]
        if bit == 0:
            bob = Z @ bob @ Z
        out += bob
    return out


def _direction_grid(step_deg):
    """Unit vectors on the upper hemisphere; antipodal directions define the same measurement."""
    polar = np.deg2rad(np.arange(0, 90 + step_deg / 2, step_deg))
    azim = np.deg2rad(np.arange(0, 360, step_deg))
    t, a = np.meshgrid(polar, azim, indexing="ij")
    return np.stack([np.sin(t) * np.cos(a), np.sin(t) * np.sin(a), np.cos(t)], axis=-1).reshape(-1, 3)


def discord_by_direction_search(rho_ab, step_deg=1.0):
    """Minimum over Alice's projective measurements of ``||rho - Pi(rho)||_HS^2``,
    where ``Pi`` dephases Alice's qubit in the measured basis."""
    rho = np.asarray(rho_ab, dtype=np.complex128)
    dirs = _direction_grid(step_deg)
    sig = np.stack(PAULIS)
    n_dot_sigma = np.einsum("ni,ijk->njk", dirs, sig)
    eye = np.broadcast_to(_ID2, n_dot_sigma.shape)
    best = np.inf
    for chunk in np.array_split(np.arange(len(dirs)), max(1, len(dirs) // 4096)):
        plus = (eye[chunk] + n_dot_sigma[chunk]) / 2
        minus = (eye[chunk] - n_dot_sigma[chunk]) / 2
        kp = np.einsum("nab,cd->nacbd", plus, _ID2).reshape(-1, 4, 4)
        km = np.einsum("nab,cd->nacbd", minus, _ID2).reshape(-1, 4, 4)
        dephased = kp @ rho @ kp + km @ rho @ km
        dist = np.sum(np.abs(rho - dephased) ** 2, axis=(1, 2))
        best = min(best, float(dist.min()))
    return best
