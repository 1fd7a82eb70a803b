"""Single-excitation cavity-magnon blocks and Rabi readout.

A microwave cavity drive couples the photon to each hybridized magnon
with strength Delta_k = lambda (u + v*); within the one-excitation
sector the dynamics splits into two independent 2x2 blocks (alpha-like
and beta-like), each a detuned Rabi problem.  The observed oscillation
frequency f obeys (pi f)^2 = detuning^2 + |Delta_k|^2, so an observed f
hands back |Delta_k|^2 and with it the ground-state EPR variance

    Delta0 = |u + v*|^2 = ((pi f)^2 - detuning^2) / lambda^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "CavityBlock",
    "RabiParams",
    "ALPHA_BLOCK",
    "BETA_BLOCK",
    "coupling_strength",
    "lambda_from_cavity",
    "evolve_block",
    "transition_probabilities",
    "rabi",
    "epr_from_frequency",
]

ALPHA_BLOCK = "alpha_block"
BETA_BLOCK = "beta_block"


@dataclass
class CavityBlock:
    """One 2x2 sector of the one-excitation cavity-magnon Hamiltonian.

    Basis (|magnon>, |photon>); the alpha block couples with -Delta_k,
    the beta block with +Delta_k (the sign never enters populations).
    """

    omega_magnon: float
    omega_photon: float
    delta_k: complex
    sign: str

    def __post_init__(self):
        if self.sign not in (ALPHA_BLOCK, BETA_BLOCK):
            raise ValueError(f"sign must be {ALPHA_BLOCK!r} or {BETA_BLOCK!r}, "
                             f"got {self.sign!r}")

    @property
    def detuning(self):
        """Half the magnon-photon frequency difference."""
        return 0.5 * (self.omega_magnon - self.omega_photon)

    def matrix(self):
        """The 2x2 Hamiltonian block."""
        c = -self.delta_k if self.sign == ALPHA_BLOCK else self.delta_k
        return np.array([[self.omega_magnon, np.conj(c)],
                         [c, self.omega_photon]], dtype=complex)


@dataclass
class RabiParams:
    """Rabi frequency f (cycles per unit time), period 1/f, and visibility."""

    f: float
    period: float
    visibility: float


def coupling_strength(lambda_k, factors):
    """Cavity-magnon coupling Delta_k = lambda (u + v*).

    The squeezing factors both renormalize the bare optomagnonic
    coupling lambda and encode Delta0 = |u + v*|^2, which is what makes
    the Rabi frequency an EPR probe.
    """
    if lambda_k < 0:
        raise ValueError(f"lambda_k must be >= 0, got {lambda_k}")
    return complex(lambda_k * (factors.u + np.conj(factors.v)))


def lambda_from_cavity(A0, k_scalar, S):
    """Bare coupling lambda = A0 k sqrt(S) from the drive amplitude."""
    if A0 < 0 or k_scalar < 0:
        raise ValueError("A0 and k_scalar must be >= 0")
    if not S > 0:
        raise ValueError(f"S must be > 0, got {S}")
    return float(A0 * k_scalar * math.sqrt(S))


def _half_splitting(block):
    d = block.detuning
    return math.sqrt(d * d + abs(block.delta_k) ** 2)


def evolve_block(block, t):
    """Exact propagator exp(-i H t) of the 2x2 block.

    Global phase e^{-i t (omega_m + omega)/2} times a rotation by angle
    t pi f about the axis set by (detuning, Delta_k).
    """
    h = block.matrix()
    mu = 0.5 * (block.omega_magnon + block.omega_photon)
    v = h - mu * np.eye(2)
    omega = _half_splitting(block)
    phase = cmath.exp(-1j * mu * t)
    if omega == 0.0:
        return phase * np.eye(2, dtype=complex)
    return phase * (math.cos(omega * t) * np.eye(2) - 1j * math.sin(omega * t) / omega * v)


def transition_probabilities(block, t):
    """Closed-form (stay, transfer) populations at time t.

    stay     = cos^2(t pi f) + detuning^2/(detuning^2 + |Delta|^2) sin^2(t pi f)
    transfer = |Delta|^2/(detuning^2 + |Delta|^2) sin^2(t pi f)

    They sum to 1; a block with zero splitting is stationary, (1, 0).
    """
    d2 = block.detuning ** 2
    c2 = abs(block.delta_k) ** 2
    total = d2 + c2
    if total == 0.0:
        return 1.0, 0.0
    s = math.sin(_half_splitting(block) * t) ** 2
    transfer = c2 / total * s
    stay = math.cos(_half_splitting(block) * t) ** 2 + d2 / total * s
    return float(stay), float(transfer)


def rabi(block):
    """Rabi parameters of the block: pi f = sqrt(detuning^2 + |Delta_k|^2).

    Raises
    ------
    ValueError
        For a stationary block (zero detuning and zero coupling).
    """
    omega = _half_splitting(block)
    if omega == 0.0:
        raise ValueError("no oscillation: zero Rabi frequency")
    f = omega / math.pi
    c2 = abs(block.delta_k) ** 2
    visibility = c2 / (block.detuning ** 2 + c2)
    return RabiParams(f=float(f), period=float(1.0 / f), visibility=float(visibility))


def epr_from_frequency(f, detuning, lambda_k):
    """Invert the Rabi relation for the EPR variance.

    Delta0 = ((pi f)^2 - detuning^2) / lambda^2.  Valid for either
    block: both share |Delta_k|, so alpha- and beta-derived values agree
    identically.
    """
    if lambda_k == 0.0:
        raise ValueError("unknown coupling scale: lambda_k = 0")
    if lambda_k < 0:
        raise ValueError(f"lambda_k must be > 0, got {lambda_k}")
    num = (math.pi * f) ** 2 - detuning ** 2
    if num < 0:
        raise ValueError(
            f"inconsistent frequency/detuning pair: (pi f)^2 = {(math.pi * f) ** 2:.6g} "
            f"< detuning^2 = {detuning ** 2:.6g}"
        )
    return float(num / lambda_k ** 2)
