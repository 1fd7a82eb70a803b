"""Lattice geometry for two-sublattice antiferromagnets.

This module is pure geometry: neighbor shells, structure factors and
k-paths.  It knows nothing about spins or couplings, so the same
:class:`LatticeSpec` feeds both the dispersion code and the cavity
protocol.  Wavevectors are plain ``(3,)`` float arrays in radians per
the unit the lattice constant is expressed in.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LatticeSpec",
    "build_preset",
    "from_vectors",
    "structure_factor",
    "kpath",
    "PRESET_NAMES",
]


@dataclass(frozen=True, eq=False)
class LatticeSpec:
    """Neighbor geometry of a bipartite magnet.

    Attributes
    ----------
    name : str
        Label used in configs and reports.
    lattice_constant : float
        Nearest-neighbor distance unit ``a``; all vectors scale with it.
    nn_vectors : (z1, 3) ndarray
        Inter-sublattice (nearest-neighbor) bond vectors.
    nnn_vectors : (z2, 3) ndarray
        Intra-sublattice (next-nearest-neighbor) bond vectors.
    z1, z2 : int
        Coordination numbers, ``len(nn_vectors)`` / ``len(nnn_vectors)``.
    """

    name: str
    lattice_constant: float
    nn_vectors: np.ndarray
    nnn_vectors: np.ndarray
    z1: int
    z2: int


def _cubic_nn(a):
    ### 6 nearest neighbors of the G-type simple cubic cell: +/- a along each axis
    eye = np.eye(3)
    return a * np.concatenate([eye, -eye], axis=0)


def _cubic_nnn(a):
    ### 12 face-diagonal next-nearest neighbors: (+/-a, +/-a, 0) and permutations
    vecs = []
    for i in range(3):
        for j in range(i + 1, 3):
            for si in (1.0, -1.0):
                for sj in (1.0, -1.0):
                    v = np.zeros(3)
                    v[i] = si * a
                    v[j] = sj * a
                    vecs.append(v)
    return np.array(vecs)


PRESET_NAMES = ("g_type_simple_cubic",)


def build_preset(name, lattice_constant=1.0):
    """Construct a named preset geometry.

    Parameters
    ----------
    name : str
        Currently only ``"g_type_simple_cubic"``: simple cubic with
        z1 = 6 axial nearest neighbors and z2 = 12 face-diagonal
        next-nearest neighbors.
    lattice_constant : float
        Nearest-neighbor distance, > 0.

    Returns
    -------
    LatticeSpec
    """
    if name not in PRESET_NAMES:
        raise ValueError(
            f"unknown lattice preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        )
    if not lattice_constant > 0:
        raise ValueError(f"lattice_constant must be > 0, got {lattice_constant}")
    a = float(lattice_constant)
    return from_vectors(name, a, _cubic_nn(a), _cubic_nnn(a))


def from_vectors(name, lattice_constant, nn_vectors, nnn_vectors):
    """Build a :class:`LatticeSpec` from explicit neighbor vectors.

    Both shells must be non-empty and free of zero vectors.  Shells that
    are closed under negation (every preset is) give real structure
    factors; other shells are accepted but produce complex factors, and
    a warning is emitted so the asymmetry is a conscious choice.
    """
    if not lattice_constant > 0:
        raise ValueError(f"lattice_constant must be > 0, got {lattice_constant}")
    nn = np.atleast_2d(np.asarray(nn_vectors, dtype=float))
    nnn = np.atleast_2d(np.asarray(nnn_vectors, dtype=float))
    for label, vecs in (("nn_vectors", nn), ("nnn_vectors", nnn)):
        if vecs.ndim != 2 or vecs.shape[1] != 3 or vecs.shape[0] == 0:
            raise ValueError(f"{label} must be a non-empty (z, 3) array")
        if not np.all(np.isfinite(vecs)):
            raise ValueError(f"{label} contains non-finite entries")
        if np.any(np.linalg.norm(vecs, axis=1) == 0.0):
            raise ValueError(f"{label} contains a zero vector")
        if not _closed_under_negation(vecs):
            warnings.warn(
                f"{label} is not closed under negation; structure factors "
                "will be complex",
                stacklevel=2,
            )
    return LatticeSpec(
        name=str(name),
        lattice_constant=float(lattice_constant),
        nn_vectors=nn,
        nnn_vectors=nnn,
        z1=nn.shape[0],
        z2=nnn.shape[0],
    )


def _closed_under_negation(vecs, tol=1e-12):
    for v in vecs:
        diff = np.linalg.norm(vecs + v, axis=1)
        if not np.any(diff < tol * max(1.0, np.linalg.norm(v))):
            return False
    return True


def structure_factor(spec, order, k):
    """Normalized neighbor sum ``(1/z) sum_delta exp(i k . delta)``.

    Parameters
    ----------
    spec : LatticeSpec
    order : int
        1 for the nearest-neighbor shell, 2 for the next-nearest shell.
    k : (3,) array_like
        Wavevector in radians per lattice-constant unit.

    Returns
    -------
    complex
        Lies in the closed unit disk; equals 1 at k = 0.  Real whenever
        the shell is closed under negation.
    """
    if order == 1:
        vecs = spec.nn_vectors
    elif order == 2:
        vecs = spec.nnn_vectors
    else:
        raise ValueError(f"order must be 1 or 2, got {order}")
    k = np.asarray(k, dtype=float).reshape(3)
    phases = vecs @ k
    return complex(np.exp(1j * phases).mean())


def kpath(spec, direction, k_max, n_points):
    """Uniform k-path from the zone center along ``direction``.

    Returns an ``(n_points, 3)`` array whose rows run from 0 to
    ``k_max * direction/|direction|`` inclusive.  ``spec`` only pins the
    unit convention (radians per lattice-constant unit); the path itself
    is lattice-independent.
    """
    del spec  # present for interface symmetry; the path is pure reciprocal space
    direction = np.asarray(direction, dtype=float).reshape(3)
    norm = np.linalg.norm(direction)
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("degenerate k-path: direction must be a nonzero vector")
    if int(n_points) < 2:
        raise ValueError(f"n_points must be >= 2, got {n_points}")
    if not k_max > 0:
        raise ValueError(f"k_max must be > 0, got {k_max}")
    unit = direction / norm
    scal = np.linspace(0.0, float(k_max), int(n_points))
    return scal[:, None] * unit[None, :]
