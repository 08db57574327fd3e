"""Model parameters, phase-region classification, semiclassical critical
points, and fixed-sector bookkeeping.

The system is N identical two-level atoms coupled to a single quantized
field mode under the rotating-wave approximation.  Working in units of the
field frequency, the intensive Hamiltonian is

    H = Lambda/N - (Delta/N) J_z + gamma N^(-3/2) (a^dag J_- + a J_+),

where Lambda = a^dag a + J_z commutes with H, Delta = 1 - omega_a is the
detuning, and gamma the collective coupling.  Each eigenvalue lam of Lambda
labels a finite sector spanned by |nu> (x) |j, lam - nu> with j = N/2.

The semiclassical energy surface over product coherent states has three
minimum regions separated by the curves |omega_a| = gamma^2: the two pole
product states (zero photons, all atoms in one level) and the Parallels
region, where the minimum carries a finite photon displacement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "ModelParams",
    "PhaseRegion",
    "CriticalPoint",
    "SectorBasis",
    "SectorState",
    "DegenerateCornerError",
    "ZeroCouplingError",
    "classify_region",
    "critical_point",
    "photon_displacement",
    "photon_displacement_sq",
    "sector_basis",
    "two_lambda",
]


class ZeroCouplingError(ValueError):
    """Raised where a quantity is undefined at gamma = 0."""


class DegenerateCornerError(ValueError):
    """Raised at the corner gamma = 0, omega_a = 0, where the constant of
    motion selected by the energy surface is undefined."""


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs: atom count N, coupling gamma, detuning Delta.

    The atomic frequency omega_a = 1 - Delta and the collective spin
    j = N/2 are derived, never stored, so omega_a + detuning = 1 by
    construction.
    """

    n_atoms: int
    coupling: float
    detuning: float

    def __post_init__(self):
        if not isinstance(self.n_atoms, (int, np.integer)) or self.n_atoms < 1:
            raise ValueError(f"n_atoms must be a positive integer, got {self.n_atoms!r}")
        if not math.isfinite(self.coupling):
            raise ValueError("coupling must be finite")
        if not math.isfinite(self.detuning):
            raise ValueError("detuning must be finite")

    @classmethod
    def from_omega_a(cls, n_atoms: int, coupling: float, omega_a: float) -> "ModelParams":
        return cls(n_atoms=n_atoms, coupling=coupling, detuning=1.0 - omega_a)

    @property
    def j(self) -> float:
        return self.n_atoms / 2.0

    @property
    def two_j(self) -> int:
        return self.n_atoms

    @property
    def omega_a(self) -> float:
        return 1.0 - self.detuning


class PhaseRegion(Enum):
    NORTH_POLE = "north_pole"
    SOUTH_POLE = "south_pole"
    PARALLELS = "parallels"


@dataclass(frozen=True)
class CriticalPoint:
    """Minimum of the semiclassical energy surface.

    ``lam_c`` is the classical value of the constant of motion, not yet
    rounded to the sector grid; ``energy_per_particle`` is the surface value
    at the minimum in units of the field frequency.
    """

    theta: float
    phi: float
    q: float
    p: float
    energy_per_particle: float
    lam_c: float


def classify_region(params: ModelParams) -> PhaseRegion:
    """Phase region of (omega_a, gamma); the separatrix |omega_a| = gamma^2
    is assigned to Parallels (inclusive inequality), which keeps the
    projected state continuous across the boundary."""
    w = params.omega_a
    g2 = params.coupling * params.coupling
    if w > g2:
        return PhaseRegion.NORTH_POLE
    if w < -g2:
        return PhaseRegion.SOUTH_POLE
    return PhaseRegion.PARALLELS


def critical_point(params: ModelParams) -> CriticalPoint:
    """Location, energy, and constant of motion of the energy-surface
    minimum.  The surface is flat in phi, so phi is fixed to 0 throughout.

    Raises DegenerateCornerError at gamma = 0, omega_a = 0, where the
    Parallels expressions are singular and no minimum selects a sector;
    callers fall back to lam = -j there.
    """
    w = params.omega_a
    g = params.coupling
    j = params.j
    region = classify_region(params)
    if region is PhaseRegion.NORTH_POLE:
        theta = 0.0
        energy = -w / 2.0
        lam_c = -j
    elif region is PhaseRegion.SOUTH_POLE:
        theta = math.pi
        energy = w / 2.0
        lam_c = j
    else:
        if g == 0.0:
            raise DegenerateCornerError(
                "gamma = 0 with omega_a = 0: constant of motion undefined"
            )
        g2 = g * g
        theta = math.acos(w / g2)
        energy = -(w * w + g2 * g2) / (4.0 * g2)
        lam_c = j * (-w * (w + 2.0) + g2 * g2) / (2.0 * g2)
    phi = 0.0
    q = -math.sqrt(j) * g * math.sin(theta) * math.cos(phi)
    p = math.sqrt(j) * g * math.sin(theta) * math.sin(phi)
    return CriticalPoint(theta=theta, phi=phi, q=q, p=p,
                         energy_per_particle=energy, lam_c=lam_c)


def photon_displacement(params: ModelParams) -> float:
    """Effective amplitude zeta weighting the photon ladder of the projected
    expansion: zeta = -(sqrt(N) gamma / 2)(1 + omega_a / gamma^2).

    Vanishes on the south separatrix omega_a = -gamma^2 and is negative
    everywhere else in the Parallels region for gamma > 0.
    """
    g = params.coupling
    if g == 0.0:
        raise ZeroCouplingError("photon displacement undefined at gamma = 0")
    return -(math.sqrt(params.n_atoms) * g / 2.0) * (1.0 + params.omega_a / (g * g))


def photon_displacement_sq(params: ModelParams) -> float:
    """eta = zeta^2, the argument of every Laguerre evaluation."""
    z = photon_displacement(params)
    return z * z


def two_lambda(params: ModelParams, lam: float) -> int:
    """Validate lam as a sector label and return it doubled as an exact int.

    Sector labels live on the grid lam = -j, -j+1, ..., so 2*lam must be an
    integer with the same parity as N; storing the doubled value makes the
    parity and range checks exact instead of float comparisons.
    """
    t = round(2.0 * lam)
    if abs(2.0 * lam - t) > 1e-9:
        raise ValueError(f"lam = {lam!r} is not a half-integer")
    if (t - params.n_atoms) % 2 != 0:
        raise ValueError(
            f"lam = {lam!r} has wrong parity for N = {params.n_atoms} "
            "(lam - j must be an integer)"
        )
    if t < -params.n_atoms:
        raise ValueError(f"lam = {lam!r} lies below the lowest sector -j = {-params.j}")
    return int(t)


@dataclass(frozen=True)
class SectorBasis:
    """Photon-number basis of one fixed-lam sector.

    Element k represents |nu> (x) |j, lam - nu> with nu = nu_min + k; the
    label is stored doubled (``two_lam``) so half-integer checks stay exact.
    """

    two_lam: int
    nu_min: int
    nu_max: int

    @property
    def lam(self) -> float:
        return self.two_lam / 2.0

    @property
    def dimension(self) -> int:
        return self.nu_max - self.nu_min + 1

    def nu_values(self) -> np.ndarray:
        return np.arange(self.nu_min, self.nu_max + 1)

    def m_values(self) -> np.ndarray:
        return self.lam - self.nu_values()


def sector_basis(params: ModelParams, lam: float) -> SectorBasis:
    """Basis descriptor for the sector with constant of motion lam: the
    photon number runs over [max(0, lam - j), lam + j]."""
    t = two_lambda(params, lam)
    n = params.n_atoms
    nu_min = max(0, (t - n) // 2)
    nu_max = (t + n) // 2
    return SectorBasis(two_lam=t, nu_min=nu_min, nu_max=int(nu_max))


@dataclass(frozen=True)
class SectorState:
    """Normalized coefficient vector over the photon-number basis of one
    sector; the common representation shared by the projected and the exact
    ground states.  ``coefficients[k]`` multiplies |nu_min + k> in the
    sector's basis (nu_min is determined by lam)."""

    lam: float
    coefficients: np.ndarray
