"""Shared-state families: the singlet mixed with |00> and |11> noise, and
general weighted mixtures (the duration-ratio recipe)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .coherence import coherence_enhancement
from .protocol import epr_psi_minus
from .qmat import check_density, projector

KET00 = np.array([1, 0, 0, 0], dtype=np.complex128)
KET11 = np.array([0, 0, 0, 1], dtype=np.complex128)


@dataclass(frozen=True)
class NoiseParams:
    p1: float
    p2: float

    def __post_init__(self):
        if not (self.p1 >= 0 and self.p2 >= 0 and self.p1 + self.p2 <= 1):
            raise ValueError(f"need p1, p2 >= 0 and p1 + p2 <= 1, got ({self.p1}, {self.p2})")

    @property
    def singlet_weight(self) -> float:
        return 1 - self.p1 - self.p2


def mixture(components: Sequence[tuple]):
    """Convex combination of ``(rho, weight)`` pairs; weights are normalised."""
    if len(components) == 0:
        raise ValueError("mixture needs at least one component")
    weights = np.array([float(w) for _, w in components])
    if np.any(weights < 0):
        raise ValueError("mixture weights must be non-negative")
    total = weights.sum()
    if total <= 0:
        raise ValueError("mixture weights must not all be zero")
    if total != 1.0:
        weights = weights / total
    out = np.zeros((4, 4), dtype=np.complex128)
    for (rho, _), w in zip(components, weights):
        out += w * check_density(rho, 4)
    return out


def rho_p(params: NoiseParams):
    """``(1 - p1 - p2) |psi-><psi-| + p1 |00><00| + p2 |11><11|``."""
    if not isinstance(params, NoiseParams):
        params = NoiseParams(*params)
    return mixture(
        [
            (epr_psi_minus(), params.singlet_weight),
            (projector(KET00), params.p1),
            (projector(KET11), params.p2),
        ]
    )


def rho_noise():
    """The working noisy state, singlet:|00>:|11> = 7:1:2."""
    return rho_p(NoiseParams(0.1, 0.2))


def enhancement_closed_form(p1, p2) -> float:
    """Coherence enhancement of ``rho_p`` at ``phi = 0``."""
    return (1 - p1 - p2) / 2


class SurfacePoint(NamedTuple):
    p1: float
    p2: float
    admissible: bool
    delta_w: Optional[float]
    valid: Optional[bool]
    closed_form: Optional[float]


def grid(step, upper=1.0):
    """``0, step, 2 step, ... <= upper`` with values rounded to kill drift."""
    n = int(np.floor(upper / step + 1e-9))
    return [round(k * step, 12) for k in range(n + 1)]


def payoff_surface(p1_grid, p2_grid, phi=0.0):
    """Coherence enhancement of ``rho_p`` over a rectangular grid.

    Pairs with ``p1 + p2 > 1`` are kept as inadmissible points with no values.
    """
    rows = []
    for p1 in p1_grid:
        for p2 in p2_grid:
            if p1 < 0 or p2 < 0 or p1 + p2 > 1 + 1e-12:
                rows.append(SurfacePoint(p1, p2, False, None, None, None))
                continue
            # clamp the boundary so p1 + p2 == 1 within rounding is admissible
            p2c = min(p2, 1 - p1)
            dw, valid = coherence_enhancement(rho_p(NoiseParams(p1, p2c)), phi)
            closed = enhancement_closed_form(p1, p2c) if phi == 0 else None
            rows.append(SurfacePoint(p1, p2, True, dw, valid, closed))
    return rows
