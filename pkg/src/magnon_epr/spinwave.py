"""Linear spin-wave theory of a two-sublattice easy-axis antiferromagnet.

The model carries an antiferromagnetic nearest-neighbor exchange J1
between the sublattices, a ferromagnetic next-nearest-neighbor exchange
J2 within each sublattice, Dzyaloshinskii-Moriya components D1/D2 along
the anisotropy axis, a single-ion easy-axis constant K_aniso and a
longitudinal field B_field.  Holstein-Primakoff bosons on the two
sublattices give one pair of degenerate-at-B=0 bare modes coupled by a
pairing amplitude; an SU(1,1) Bogoliubov rotation diagonalizes each k
sector and doubles as the two-mode squeezing transformation studied in
:mod:`magnon_epr.squeezed`.

Energies are in the same units as the exchange constants (hbar = 1, so
energies and angular frequencies coincide).
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .lattice import structure_factor

__all__ = [
    "ModelParams",
    "BareModes",
    "BogoliubovFactors",
    "HybridModes",
    "MagnonInstabilityError",
    "bare_modes",
    "coupling_ratio",
    "bogoliubov",
    "hybrid_modes",
]


class MagnonInstabilityError(ValueError):
    """Raised when |Gamma| >= 1 and the Bogoliubov rotation diverges.

    The sublattice-symmetric ground state is not a valid vacuum at such
    k-points; sweeps treat them as flagged data rather than fatal.
    """

    def __init__(self, message, gamma_abs=None):
        super().__init__(message)
        self.gamma_abs = gamma_abs


@dataclass
class ModelParams:
    """Couplings of the spin-wave model.

    J1 >= 0 (antiferromagnetic inter-sublattice; 0 decouples the
    sublattices), J2 >= 0 (ferromagnetic intra-sublattice), K_aniso > 0
    (easy axis, keeps the bare modes gapped), S > 0.  D1, D2 and B_field
    are unconstrained reals.
    """

    J1: float
    K_aniso: float
    S: float
    J2: float = 0.0
    D1: float = 0.0
    D2: float = 0.0
    B_field: float = 0.0

    def __post_init__(self):
        for name in ("J1", "J2", "D1", "D2", "K_aniso", "B_field", "S"):
            value = getattr(self, name)
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            setattr(self, name, float(value))
        if self.J1 < 0:
            raise ValueError(f"J1 must be >= 0 (antiferromagnetic), got {self.J1}")
        if self.J2 < 0:
            raise ValueError(f"J2 must be >= 0 (ferromagnetic), got {self.J2}")
        if not self.K_aniso > 0:
            raise ValueError(f"K_aniso must be > 0, got {self.K_aniso}")
        if not self.S > 0:
            raise ValueError(f"S must be > 0, got {self.S}")


@dataclass
class BareModes:
    """Sublattice magnon sector at one wavevector.

    ``epsilon`` is the common diagonal energy, ``g`` the complex pairing
    amplitude between a_k and b_-k, and ``omega_a/omega_b`` the bare
    frequencies split by the field: epsilon -/+ B.
    """

    epsilon: float
    g: complex
    omega_a: float
    omega_b: float


@dataclass
class BogoliubovFactors:
    """SU(1,1) factors (u, v) = (cosh r, sinh r e^{i phi}).

    ``Gamma`` is the pairing-to-diagonal ratio g/epsilon that generated
    them; |u|^2 - |v|^2 = 1 identically.
    """

    r: float
    phi: float
    u: float
    v: complex
    Gamma: complex


@dataclass
class HybridModes:
    """Hybridized (squeezed-vacuum) magnon dispersion at one k.

    ``soft`` flags omega_alpha <= 0; entanglement quantities remain
    well defined there, so it is a warning rather than an error.
    """

    epsilon_tilde: float
    omega_alpha: float
    omega_beta: float
    soft: bool = field(default=False)


def bare_modes(params, spec, k):
    """Bare sublattice modes at wavevector ``k``.

    Computes

        epsilon = S [ z1 J1 + 2 K + z2 ( J2 - 2 Re[(J2 - i D2) gamma2] ) ]
        g       = S z1 gamma1 (J1 + i D1)

    with gamma1/gamma2 the normalized neighbor sums of the two shells.
    Note the J2 shell *reduces* epsilon near the zone center (gamma2 ->
    1), which is what drives |g/epsilon| toward instability for strong
    ferromagnetic J2.

    Raises
    ------
    ValueError
        If either bare frequency epsilon -/+ B is nonpositive.
    """
    gamma1 = structure_factor(spec, 1, k)
    gamma2 = structure_factor(spec, 2, k)
    S = params.S
    eps = S * (
        spec.z1 * params.J1
        + 2.0 * params.K_aniso
        + spec.z2 * (params.J2 - 2.0 * ((params.J2 - 1j * params.D2) * gamma2).real)
    )
    g = S * spec.z1 * gamma1 * complex(params.J1, params.D1)
    omega_a = eps - params.B_field
    omega_b = eps + params.B_field
    if omega_a <= 0 or omega_b <= 0:
        raise ValueError(
            "negative bare mode frequency: "
            f"omega_a = {omega_a:.6g}, omega_b = {omega_b:.6g} "
            f"(epsilon = {eps:.6g}, B = {params.B_field:.6g})"
        )
    return BareModes(epsilon=float(eps), g=complex(g), omega_a=float(omega_a),
                     omega_b=float(omega_b))


def coupling_ratio(bare):
    """Pairing-to-diagonal ratio Gamma = g / epsilon."""
    if bare.epsilon <= 0:
        raise ValueError(f"nonpositive epsilon: {bare.epsilon:.6g}")
    return complex(bare.g / bare.epsilon)


def bogoliubov(Gamma):
    """SU(1,1) rotation that removes the pairing term.

    The squeezing amplitude solves tanh r = (1 - sqrt(1 - |Gamma|^2)) / |Gamma|
    (evaluated in the cancellation-free form |Gamma| / (1 + sqrt(1 - |Gamma|^2)))
    and the phase is phi = pi - arg Gamma, with arg(0) := 0 so that the
    decoupled limit lands on phi = pi continuously from Gamma -> 0+.

    Raises
    ------
    MagnonInstabilityError
        If |Gamma| >= 1.
    """
    Gamma = complex(Gamma)
    mod = abs(Gamma)
    if mod >= 1.0:
        raise MagnonInstabilityError(
            f"magnon instability: |Gamma| = {mod:.6g} >= 1", gamma_abs=mod
        )
    root = math.sqrt(1.0 - mod * mod)
    r = math.atanh(mod / (1.0 + root)) if mod > 0 else 0.0
    arg = cmath.phase(Gamma) if Gamma != 0 else 0.0
    phi = (math.pi - arg) % (2.0 * math.pi)
    u = math.cosh(r)
    v = math.sinh(r) * cmath.exp(1j * phi)
    return BogoliubovFactors(r=r, phi=phi, u=u, v=complex(v), Gamma=Gamma)


def hybrid_modes(bare, factors, B_field):
    """Hybridized dispersion after the Bogoliubov rotation.

    Implements the literal combination

        epsilon_tilde = cosh(2r) epsilon + sinh(2r) Re[g e^{i phi}]

    which collapses algebraically to epsilon sqrt(1 - |Gamma|^2); the
    test suite checks that identity rather than assuming it.  The field
    splits the pair as omega_alpha/beta = epsilon_tilde -/+ B.
    """
    two_r = 2.0 * factors.r
    eps_t = (
        math.cosh(two_r) * bare.epsilon
        + math.sinh(two_r) * (bare.g * cmath.exp(1j * factors.phi)).real
    )
    omega_alpha = eps_t - B_field
    omega_beta = eps_t + B_field
    soft = omega_alpha <= 0
    if soft:
        warnings.warn(
            f"soft hybridized mode: omega_alpha = {omega_alpha:.6g} <= 0",
            stacklevel=2,
        )
    return HybridModes(
        epsilon_tilde=float(eps_t),
        omega_alpha=float(omega_alpha),
        omega_beta=float(omega_beta),
        soft=bool(soft),
    )
