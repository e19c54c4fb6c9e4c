"""Quantum-volume capability metric and its closed-form power correlation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import (
    CoolingPlant,
    DomainError,
    OperatingPoint,
    _require_finite,
    _validate_n_qubits,
    _validate_phi,
    effective_cop,
)


@dataclass(frozen=True)
class QvResult:
    """Best achievable quantum volume on a machine of fixed size.

    ``n_argmax`` is the circuit width achieving it (smallest on ties);
    ``n_peak`` is the width beyond which more qubits stop helping.
    """

    volume: float
    n_argmax: int
    n_peak: float


def _validate_eps(eps_eff: float) -> None:
    _require_finite("eps_eff", eps_eff)
    if not 0.0 < eps_eff < 1.0:
        raise DomainError(f"eps_eff must be in (0, 1), got {eps_eff}")


def _objective(n: int, eps_eff: float) -> float:
    # Effective circuit size at width n: the width itself, capped by the
    # depth 1/(n*eps) sustainable at error rate eps.
    return min(float(n), 1.0 / (n * eps_eff)) ** 2


def quantum_volume(n_qubits: int, eps_eff: float) -> QvResult:
    """Maximize min(n, 1/(n*eps))^2 over integer widths n in [1, n_qubits].

    The objective grows as n^2 while depth is not limiting and falls once it
    is, so the search reduces to locating the crossover width; the result is
    identical to an exhaustive scan, ties resolved toward smaller n.
    """
    _validate_n_qubits(n_qubits)
    _validate_eps(eps_eff)

    # Largest width still on the rising branch (n <= 1/(n*eps), the same
    # float comparison the objective makes; true at n=1 for any valid eps).
    # The objective is n^2 up to there and nonincreasing after, so only the
    # branch boundary and its successor can win.
    lo, hi = 1, n_qubits
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid <= 1.0 / (mid * eps_eff):
            lo = mid
        else:
            hi = mid - 1
    rising_end = lo

    best_n = min(n_qubits, rising_end)
    best_v = _objective(best_n, eps_eff)
    if rising_end < n_qubits:
        over = _objective(rising_end + 1, eps_eff)
        if over > best_v:
            best_n, best_v = rising_end + 1, over
    return QvResult(volume=best_v, n_argmax=best_n, n_peak=n_peak(eps_eff))


def n_peak(eps_eff: float) -> float:
    """Width beyond which added qubits no longer raise the volume: sqrt(1/eps)."""
    _validate_eps(eps_eff)
    return float(np.sqrt(1.0 / eps_eff))


def power_vs_qv(
    q_volume: float,
    phi: float,
    beta: float,
    op: OperatingPoint,
    plant: CoolingPlant,
) -> float:
    """Scaled facility power as a function of quantum volume.

    Valid below the volume ceiling 1/eps, where volume grows as the square
    of the machine size; there the electronics and fixed-ratio cooling terms
    carry sqrt(V) and the vessel leak term carries V^(1/3).  At a square
    volume this equals the size-based scaled power exactly.
    """
    _require_finite("q_volume", q_volume)
    if q_volume <= 0.0:
        raise DomainError(f"q_volume must be > 0, got {q_volume}")
    _validate_phi(phi)
    _require_finite("beta", beta)
    if beta < 0.0:
        raise DomainError(f"beta must be >= 0, got {beta}")
    cop = effective_cop(op, plant)
    base = 1.0 + phi / cop + (1.0 - phi) / plant.fom
    leak = phi * beta / cop
    return float(np.sqrt(q_volume)) * base + float(np.cbrt(q_volume)) * leak
