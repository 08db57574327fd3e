"""Exact quantum ground state by symmetric tridiagonal diagonalization, one
constant-of-motion sector at a time.

Inside a sector the Hamiltonian is real symmetric tridiagonal in the
photon-number basis: the diagonal carries the sector label and detuning
terms, the off-diagonal the single photon-exchange matrix element.  The
global ground state is found by scanning sectors upward from lam = -j with
an adaptive window, since for strong coupling the minimizing sector can sit
far above the classical estimate's ten-unit neighborhood.

Observables, entanglement entropy, and fidelities are computed from the
coefficient vectors alone, so the same routines serve both the exact
eigenvectors and the projected states.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .model import (
    ModelParams,
    DegenerateCornerError,
    SectorBasis,
    classify_region,
    critical_point,
    sector_basis,
)
from .projected import ObservableSet

__all__ = [
    "SectorHamiltonian",
    "QuantumGroundState",
    "SolverError",
    "ScanWindowError",
    "NormalizationError",
    "build_sector_hamiltonian",
    "lowest_eigenpair",
    "sector_eigenvalues",
    "ground_state",
    "observables_from_state",
    "entanglement_entropy",
    "fidelity",
    "spectrum",
]

_RESIDUAL_TOL = 1e-10
_MAX_WINDOW_EXTENSIONS = 200


class SolverError(RuntimeError):
    """Eigensolver failed to converge; carries the offending matrix."""

    def __init__(self, message: str, hamiltonian: "SectorHamiltonian | None" = None):
        super().__init__(message)
        self.hamiltonian = hamiltonian


class ScanWindowError(SolverError):
    """The sector scan exhausted its window without bracketing the minimum."""


class NormalizationError(ValueError):
    """State coefficients are not normalized to within tolerance."""


@dataclass(frozen=True)
class SectorHamiltonian:
    """Tridiagonal Hamiltonian of one sector, per particle.

    diagonal[k] = [lam - Delta (lam - nu)] / N at nu = nu_min + k, and
    offdiagonal[k] = gamma N^(-3/2) sqrt(nu+1) sqrt(j(j+1) - m(m-1)) couples
    (nu, m) to (nu+1, m-1) with m = lam - nu.
    """

    basis: SectorBasis
    diagonal: np.ndarray
    offdiagonal: np.ndarray


@dataclass(frozen=True)
class QuantumGroundState:
    """Global ground state: sector label, energy per particle, and the
    normalized coefficient vector (first nonzero entry positive)."""

    lam: float
    energy_per_particle: float
    coefficients: np.ndarray


def build_sector_hamiltonian(params: ModelParams, lam: float) -> SectorHamiltonian:
    basis = sector_basis(params, lam)
    n = params.n_atoms
    j = params.j
    nus = basis.nu_values()
    ms = basis.m_values()
    diagonal = (basis.lam - params.detuning * ms) / n
    pre = params.coupling / (n * math.sqrt(n))
    offdiagonal = pre * np.sqrt(nus[:-1] + 1.0) * np.sqrt(
        j * (j + 1.0) - ms[:-1] * (ms[:-1] - 1.0)
    )
    return SectorHamiltonian(basis=basis, diagonal=diagonal, offdiagonal=offdiagonal)


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    for x in vec:
        if x != 0.0:
            return -vec if x < 0.0 else vec
    return vec


def lowest_eigenpair(h: SectorHamiltonian) -> tuple[float, np.ndarray]:
    """Smallest eigenvalue and its normalized eigenvector.

    Uses bisection on Sturm sequence counts plus inverse iteration (LAPACK
    stebz/stein), which is deterministic; an unreduced symmetric tridiagonal
    has simple eigenvalues, so the pair is unique up to the sign convention.
    """
    d = h.diagonal
    if len(d) == 1:
        return float(d[0]), np.ones(1)
    try:
        w, v = scipy.linalg.eigh_tridiagonal(
            d, h.offdiagonal, select="i", select_range=(0, 0),
            lapack_driver="stebz",
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise SolverError(f"tridiagonal eigensolver failed: {exc}", h) from exc
    energy = float(w[0])
    vec = _fix_sign(v[:, 0].copy())
    resid = _residual(h, energy, vec)
    if resid > _RESIDUAL_TOL:  # pragma: no cover - defensive
        raise SolverError(
            f"eigenpair residual {resid:.3e} exceeds {_RESIDUAL_TOL:.0e}", h
        )
    return energy, vec


def _residual(h: SectorHamiltonian, energy: float, vec: np.ndarray) -> float:
    hv = h.diagonal * vec
    hv[:-1] += h.offdiagonal * vec[1:]
    hv[1:] += h.offdiagonal * vec[:-1]
    return float(np.max(np.abs(hv - energy * vec)))


def sector_eigenvalues(h: SectorHamiltonian) -> np.ndarray:
    """All eigenvalues of one sector, ascending."""
    if len(h.diagonal) == 1:
        return h.diagonal.copy()
    return scipy.linalg.eigvalsh_tridiagonal(h.diagonal, h.offdiagonal)


def _classical_lambda(params: ModelParams) -> float:
    try:
        return critical_point(params).lam_c
    except DegenerateCornerError:
        return -params.j


def _scan_lambdas(params: ModelParams):
    """Initial sector labels -j, -j+1, ..., max(ceil(lam_c)+10, -j+10)."""
    j = params.j
    hi = max(math.ceil(_classical_lambda(params)) + 10.0, -j + 10.0)
    count = int(math.floor(hi + j)) + 1
    return [-j + k for k in range(count)]


def ground_state(params: ModelParams) -> QuantumGroundState:
    """Scan sectors upward from lam = -j for the global minimum eigenpair.

    The window starts ten units above the classical sector estimate and is
    extended by ten sectors while the per-sector minimum is still
    decreasing at the edge; the returned minimizer is always interior to
    the final window.  Energy ties (degenerate couplings) resolve to the
    smallest sector label.
    """
    lams = _scan_lambdas(params)
    pairs = [lowest_eigenpair(build_sector_hamiltonian(params, lam)) for lam in lams]
    energies = [p[0] for p in pairs]
    extensions = 0
    while energies[-1] < energies[-2]:
        if extensions >= _MAX_WINDOW_EXTENSIONS:
            raise ScanWindowError(
                f"sector minimum still decreasing at lam = {lams[-1]} after "
                f"{extensions} window extensions"
            )
        extensions += 1
        for _ in range(10):
            lam = lams[-1] + 1.0
            lams.append(lam)
            e, v = lowest_eigenpair(build_sector_hamiltonian(params, lam))
            pairs.append((e, v))
            energies.append(e)
    best = int(np.argmin(energies))
    if best == len(lams) - 1:
        raise ScanWindowError(
            f"sector scan minimum sits at the window edge lam = {lams[best]}"
        )
    energy, vec = pairs[best]
    return QuantumGroundState(lam=lams[best], energy_per_particle=energy,
                              coefficients=vec)


def _check_normalized(coefficients: np.ndarray) -> None:
    norm2 = float(np.dot(coefficients, coefficients))
    if abs(norm2 - 1.0) > 1e-9:
        raise NormalizationError(f"|c|^2 = {norm2!r} is not 1 within 1e-9")


def entanglement_entropy(state, params: ModelParams) -> float:
    """Matter-field entanglement entropy of a sector state, natural log.

    Both reduced density matrices are diagonal in the sector basis with the
    same nonzero spectrum {c_nu^2}, so S_E = -sum c^2 ln c^2.
    """
    _check_normalized(state.coefficients)
    p = np.asarray(state.coefficients) ** 2
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log(nz))) + 0.0


def observables_from_state(state, params: ModelParams) -> ObservableSet:
    """Moment-based observables of any sector state (projected or exact).

    Works on the coefficient vector alone: photon moments against the
    sector's nu values, the inversion through jz = lam - n, the transition
    amplitude through the one-photon-exchange matrix elements, and the
    energy as the tridiagonal quadratic form.
    """
    _check_normalized(state.coefficients)
    c = np.asarray(state.coefficients, dtype=float)
    lam = state.lam
    basis = sector_basis(params, lam)
    j = params.j
    nus = basis.nu_values()[: len(c)]
    ms = lam - nus
    p = c * c
    n_mean = float(np.dot(nus, p))
    n_var = float(np.dot((nus - n_mean) ** 2, p))
    jz_mean = lam - n_mean
    jz_var = n_var
    jz2 = jz_var + jz_mean * jz_mean
    jx2 = 0.5 * (j * (j + 1.0) - jz2)
    q2 = n_mean + 0.5
    xi = math.sqrt(2.0 * jx2 / j)
    coupling_elems = np.sqrt(nus[:-1] + 1.0) * np.sqrt(
        j * (j + 1.0) - ms[:-1] * (ms[:-1] - 1.0)
    )
    adag_jminus = float(np.dot(c[1:] * c[:-1], coupling_elems))
    h = build_sector_hamiltonian(params, lam)
    energy = float(np.dot(c, h.diagonal[: len(c)] * c))
    if len(c) > 1:
        energy += 2.0 * float(np.dot(c[1:] * c[:-1], h.offdiagonal[: len(c) - 1]))
    p_nz = p[p > 0.0]
    entropy = float(-np.sum(p_nz * np.log(p_nz)))
    return ObservableSet(
        energy_per_particle=energy,
        n_mean=n_mean,
        n_var=n_var,
        jz_mean=jz_mean,
        jz_var=jz_var,
        jx2=jx2,
        q2=q2,
        adag_jminus=adag_jminus,
        xi=xi,
        entropy=entropy,
        lam=lam,
        region=classify_region(params),
    )


def fidelity(a, b) -> float:
    """Squared overlap |<a|b>|^2 of two normalized sector states.

    States in different sectors are orthogonal (sharp constant of motion),
    giving exactly 0.  Within one sector both coefficient vectors start at
    the same photon number, so the overlap runs over the shared prefix;
    this also covers pole states stored with their single occupied entry.
    """
    if round(2.0 * a.lam) != round(2.0 * b.lam):
        return 0.0
    ca = np.asarray(a.coefficients, dtype=float)
    cb = np.asarray(b.coefficients, dtype=float)
    k = min(len(ca), len(cb))
    s = float(np.dot(ca[:k], cb[:k]))
    return s * s


def spectrum(params: ModelParams, k: int) -> list[tuple[float, float]]:
    """The k lowest eigenvalues across sectors, as ascending (energy, lam).

    Full per-sector spectra are computed over the ground-state window, which
    is then extended one sector at a time until freshly added sectors open
    well above the running k-th level; ties order by sector label.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    pool: list[tuple[float, float]] = []
    lams = _scan_lambdas(params)
    for lam in lams:
        for w in sector_eigenvalues(build_sector_hamiltonian(params, lam)):
            pool.append((float(w), lam))
    pool.sort()
    clear = 0
    extensions = 0
    lam = lams[-1]
    while clear < 5:
        if extensions >= 10000:
            raise ScanWindowError(
                f"spectrum scan not closed after {extensions} extra sectors"
            )
        extensions += 1
        lam += 1.0
        ws = sector_eigenvalues(build_sector_hamiltonian(params, lam))
        kth = pool[k - 1][0] if len(pool) >= k else math.inf
        if len(pool) >= k and float(ws.min()) > kth:
            clear += 1
        else:
            clear = 0
        for w in ws:
            pool.append((float(w), lam))
        pool.sort()
    return pool[:k]
