"""Brute-force verifiers built on direct integration of the stationary wave
equation phi'' = -q^2(x) phi, where q^2(x) = (E - V_t(x))^2 - (1 + V_s(x))^2.

These solvers see the potential only through its pointwise values; they never
reuse the closed-form interior solution, so they provide an independent check
of the matched-amplitude results. Interface nodes at x = +-a take the
interior value of the potential (closed-interval convention), which keeps the
fixed-step integration free of half-jump boundary errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DomainError, NumericalError, Parity, PotentialConfig

E_MARGIN = 1e-9  # bound-state scans stay this far inside (-1, 1)
N_SCAN = 8192  # energy samples for the bound-state scan
_BISECT_TOL = 1e-10  # bound-energy bisection width


class OracleFailure(NumericalError):
    """The integrator produced non-finite values."""


@dataclass(frozen=True, slots=True)
class OracleConfig:
    """Fixed-step integrator settings.

    ``step_count`` is the number of RK4 steps across the full interaction
    region [-a, +a]; determinism comes from the fixed step, accuracy from
    its size.
    """

    step_count: int = 20000
    tolerance: float = 1e-8

    def __post_init__(self) -> None:
        if self.step_count < 1000:
            raise DomainError(f"step_count must be >= 1000, got {self.step_count}")
        if not self.tolerance > 0.0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance}")


def _q2_at(x: np.ndarray, energy_e: np.ndarray, v0: np.ndarray, g_t: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Local squared wavenumber from pointwise potential values."""
    v = np.where(np.abs(x) <= a, v0, 0.0)
    return (energy_e - g_t * v) ** 2 - (1.0 + (1.0 - g_t) * v) ** 2


def _transmission_batch(
    energy_e: np.ndarray,
    v0: np.ndarray,
    g_t: np.ndarray,
    a: np.ndarray,
    step_count: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized backward RK4 from a pure transmitted wave at x = +a down to
    x = -a; returns (R, T) per sample."""
    n = step_count
    k = np.sqrt(energy_e * energy_e - 1.0)
    h = -2.0 * a / n
    # Start from phi = e^{ikx} at x = +a (unit transmitted amplitude).
    phi = np.exp(1j * k * a)
    dphi = 1j * k * phi
    minus_a = -a
    for t in range(n):
        # Node positions as fractions of a, with the two boundary nodes pinned
        # to exactly +-a: rounding in a*n/n can land 1 ulp outside the well,
        # where the node would wrongly see the exterior potential and degrade
        # the scheme to first order.
        x0 = a if t == 0 else a * (n - 2 * t) / n
        xm = a * (n - 2 * t - 1) / n
        x1 = minus_a if t == n - 1 else a * (n - 2 * t - 2) / n
        c0 = -_q2_at(x0, energy_e, v0, g_t, a)
        cm = -_q2_at(xm, energy_e, v0, g_t, a)
        c1 = -_q2_at(x1, energy_e, v0, g_t, a)
        k1p = dphi
        k1d = c0 * phi
        p2 = phi + 0.5 * h * k1p
        d2 = dphi + 0.5 * h * k1d
        k2p = d2
        k2d = cm * p2
        p3 = phi + 0.5 * h * k2p
        d3 = dphi + 0.5 * h * k2d
        k3p = d3
        k3d = cm * p3
        p4 = phi + h * k3p
        d4 = dphi + h * k3d
        k4p = d4
        k4d = c1 * p4
        phi = phi + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        dphi = dphi + (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
    # Project onto incoming/reflected plane waves at x = -a.
    exp_ika = np.exp(1j * k * a)
    a_plus = 0.5 * (phi + dphi / (1j * k)) * exp_ika
    a_minus = 0.5 * (phi - dphi / (1j * k)) / exp_ika
    if not (np.all(np.isfinite(a_plus)) and np.all(np.isfinite(a_minus))):
        raise OracleFailure("transmission integration produced non-finite amplitudes")
    r = np.abs(a_minus / a_plus) ** 2
    t_coeff = 1.0 / np.abs(a_plus) ** 2
    return r, t_coeff


def oracle_transmission(
    energy_e: float,
    cfg: PotentialConfig,
    ocfg: OracleConfig = OracleConfig(),
) -> tuple[float, float]:
    """(R, T) by direct integration; requires an incident propagating wave."""
    if not energy_e > 1.0:
        raise DomainError(f"no incident propagating wave: requires E > 1, got {energy_e}")
    r, t = _transmission_batch(
        np.asarray([energy_e], dtype=float),
        np.asarray([cfg.v0], dtype=float),
        np.asarray([cfg.g_t], dtype=float),
        np.asarray([cfg.half_width_a], dtype=float),
        ocfg.step_count,
    )
    return float(r[0]), float(t[0])


def _shoot_mismatch(
    energy_e: np.ndarray,
    cfg: PotentialConfig,
    parity: Parity,
    step_count: int,
) -> np.ndarray:
    """Integrate from the center with even/odd initial data and return the
    decaying-tail mismatch M(E) = phi'(a) + kappa phi(a)."""
    a = cfg.half_width_a
    m = max(step_count // 2, 500)  # steps on [0, a], matching the [-a, a] step size
    h = a / m
    if parity == "even":
        phi = np.ones_like(energy_e)
        dphi = np.zeros_like(energy_e)
    else:
        phi = np.zeros_like(energy_e)
        dphi = np.ones_like(energy_e)
    av = np.asarray(a, dtype=float)
    v0 = np.asarray(cfg.v0, dtype=float)
    g_t = np.asarray(cfg.g_t, dtype=float)
    for t in range(m):
        # Same endpoint pinning as the transmission integrator: a*m/m can
        # round 1 ulp outside the well.
        x0 = a * t / m
        xm = a * (2 * t + 1) / (2 * m)
        x1 = a if t == m - 1 else a * (t + 1) / m
        c0 = -_q2_at(np.asarray(x0), energy_e, v0, g_t, av)
        cm = -_q2_at(np.asarray(xm), energy_e, v0, g_t, av)
        c1 = -_q2_at(np.asarray(x1), energy_e, v0, g_t, av)
        k1p = dphi
        k1d = c0 * phi
        p2 = phi + 0.5 * h * k1p
        d2 = dphi + 0.5 * h * k1d
        k2p = d2
        k2d = cm * p2
        p3 = phi + 0.5 * h * k2p
        d3 = dphi + 0.5 * h * k2d
        k3p = d3
        k3d = cm * p3
        p4 = phi + h * k3p
        d4 = dphi + h * k3d
        k4p = d4
        k4d = c1 * p4
        phi = phi + (h / 6.0) * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        dphi = dphi + (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d)
    if not (np.all(np.isfinite(phi)) and np.all(np.isfinite(dphi))):
        raise OracleFailure("shooting integration produced non-finite values")
    kappa = np.sqrt(1.0 - energy_e * energy_e)
    return dphi + kappa * phi


def oracle_bound_states(
    cfg: PotentialConfig,
    ocfg: OracleConfig = OracleConfig(),
) -> list[tuple[float, Parity]]:
    """Bound energies by parity shooting: scan the mismatch on N_SCAN energies
    in (-1 + E_MARGIN, 1 - E_MARGIN) and bisect each sign change."""
    e_grid = np.linspace(-1.0 + E_MARGIN, 1.0 - E_MARGIN, N_SCAN)
    found: list[tuple[float, Parity]] = []
    for parity in ("even", "odd"):
        mm = _shoot_mismatch(e_grid, cfg, parity, ocfg.step_count)
        sign = np.sign(mm)
        change = sign[:-1] != sign[1:]
        lo = e_grid[:-1][change].copy()
        hi = e_grid[1:][change].copy()
        flo = mm[:-1][change].copy()
        if lo.size:
            iterations = max(1, math.ceil(math.log2((hi - lo).max() / _BISECT_TOL)))
            for _ in range(iterations):
                mid = 0.5 * (lo + hi)
                fmid = _shoot_mismatch(mid, cfg, parity, ocfg.step_count)
                go_up = (fmid > 0.0) == (flo > 0.0)
                lo = np.where(go_up, mid, lo)
                flo = np.where(go_up, fmid, flo)
                hi = np.where(go_up, hi, mid)
        for e_root in 0.5 * (lo + hi):
            if not any(p == parity and abs(e_root - e) < 1e-9 for e, p in found):
                found.append((float(e_root), parity))
    return sorted(found)
