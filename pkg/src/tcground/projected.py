"""The projected coherent-state approximation and its closed-form
observables.

The semiclassical minimum over product coherent states mixes every
eigenvalue of the constant of motion Lambda.  Restricting (projecting) that
minimizer to a single sector lam and renormalizing yields a state whose
photon-number amplitudes are

    c_nu  ~  C(2j, j + lam - nu)^(1/2) zeta^nu / sqrt(nu!),

with zeta the photon displacement of the model.  In the pole regions the
minimizer is already the product state |0> (x) |j, -+j> and carries a single
sector.  The normalization Y = sum_nu C(2j, j+lam-nu) eta^nu / nu!
(eta = zeta^2) resums to associated Laguerre polynomials, which makes every
moment of the photon distribution, the energy, the squeezing coefficient,
and the entanglement entropy available in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    ModelParams,
    PhaseRegion,
    SectorBasis,
    DegenerateCornerError,
    ZeroCouplingError,
    classify_region,
    critical_point,
    photon_displacement,
    sector_basis,
    two_lambda,
)
from .specfun import log_binomial, log_factorial, log_laguerre_neg

__all__ = [
    "ProjectedState",
    "ObservableSet",
    "log_overlap",
    "photon_distribution",
    "excited_atom_distribution",
    "mean_photon",
    "photon_variance",
    "observables",
    "energy_surface",
    "select_lambda",
    "build_state",
]


@dataclass(frozen=True)
class ProjectedState:
    """Normalized projected state in one sector.

    ``coefficients[k]`` multiplies |nu_min + k> (x) |j, lam - nu_min - k>.
    In the pole regions the occupied component is the single product state
    at nu = 0; the vector is still laid out over the full sector basis so
    that overlaps against exact eigenvectors align index by index.
    ``log_overlap`` stores ln Y of the unnormalized expansion (0 at the
    poles, where the expansion is already normalized).
    """

    params: ModelParams
    lam: float
    zeta: float
    phi: float
    basis: SectorBasis
    coefficients: np.ndarray
    log_overlap: float


@dataclass(frozen=True)
class ObservableSet:
    """Scalar ground-state observables of one sector state.

    ``jz_var == n_var``, ``q2 == n_mean + 1/2`` and ``jz_mean == lam -
    n_mean`` hold exactly by construction: inside a fixed sector the photon
    number and the collective inversion differ by the constant lam, and the
    quadrature variances are set by the photon number.  ``entropy`` is the
    matter-field entanglement entropy in natural log units.
    """

    energy_per_particle: float
    n_mean: float
    n_var: float
    jz_mean: float
    jz_var: float
    jx2: float
    q2: float
    adag_jminus: float
    xi: float
    entropy: float
    lam: float
    region: PhaseRegion


def _log_laguerre_or_zero(n: int, alpha: int, eta: float) -> float:
    """ln L_n^alpha(-eta) with the convention L_{-1} == 0 (log -inf)."""
    if n < 0:
        return -math.inf
    return log_laguerre_neg(n, alpha, eta)


def _eta(params: ModelParams) -> float:
    z = photon_displacement(params)
    return z * z


def log_overlap(params: ModelParams, lam: float) -> float:
    """ln Y for sector lam, where Y normalizes the projected expansion.

    For |lam| <= j this is ln L_{j+lam}^{j-lam}(-eta); for lam >= j the
    series starts at nu = lam - j and resums instead to
    (2j)!/(j+lam)! eta^(lam-j) L_{2j}^{lam-j}(-eta).  Both branches agree at
    lam = j.  Y = 1 identically for lam = -j (one-dimensional sector).
    """
    t = two_lambda(params, lam)
    n = params.n_atoms
    if t == -n:
        return 0.0
    eta = _eta(params)
    if t <= n:
        return log_laguerre_neg((t + n) // 2, (n - t) // 2, eta)
    head = log_factorial(n) - log_factorial((t + n) // 2)
    power = ((t - n) // 2) * (math.log(eta) if eta > 0.0 else -math.inf)
    return head + power + log_laguerre_neg(n, (t - n) // 2, eta)


def _log_weights(params: ModelParams, basis: SectorBasis, eta: float) -> np.ndarray:
    """ln of the unnormalized sector weights eta^nu / nu! * C(2j, j+lam-nu)."""
    n = params.n_atoms
    nus = basis.nu_values()
    ks = (basis.two_lam + n) // 2 - nus  # j + lam - nu, exact integers
    logs = np.empty(basis.dimension)
    for i, (nu, k) in enumerate(zip(nus, ks)):
        lb = log_binomial(n, int(k))
        if lb == -math.inf:
            logs[i] = -math.inf
        elif eta == 0.0:
            logs[i] = lb if nu == 0 else -math.inf
        else:
            logs[i] = lb + nu * math.log(eta) - log_factorial(int(nu))
    return logs


def photon_distribution(params: ModelParams, lam: float) -> np.ndarray:
    """Probabilities P_nu of finding nu photons, over the sector's nu range.

    In the Parallels region P_nu = (1/Y) eta^nu / nu! C(2j, j+lam-nu),
    assembled in log space so that the normalization survives large eta.
    Outside it the state is a pole product state and the distribution is a
    delta at nu = 0.
    """
    basis = sector_basis(params, lam)
    region = classify_region(params)
    if region is not PhaseRegion.PARALLELS:
        if basis.nu_min != 0:
            raise ValueError(
                "pole-region photon distribution is a delta at nu = 0, which "
                f"lies outside the sector lam = {lam}"
            )
        p = np.zeros(basis.dimension)
        p[0] = 1.0
        return p
    logs = _log_weights(params, basis, _eta(params))
    shift = float(logs.max())
    if shift == -math.inf:
        raise ValueError(f"sector lam = {lam} has zero weight at zero displacement")
    w = np.exp(logs - shift)
    return w / math.fsum(w)


def excited_atom_distribution(params: ModelParams, lam: float) -> np.ndarray:
    """Probabilities of finding n_e excited atoms, n_e = 0, 1, ...

    An atom excitation trades against a photon inside a sector,
    n_e = lam + j - nu, so this is the photon distribution reversed.
    """
    return photon_distribution(params, lam)[::-1].copy()


def mean_photon(params: ModelParams, lam: float) -> float:
    """<n> of the projected state in closed form.

    Equals eta d/d(eta) ln Y, which telescopes into a ratio of neighboring
    Laguerre polynomials.  At the poles Y = 1 identically so <n> = 0, and
    the lam = -j sector contains no photons for any parameters.
    """
    t = two_lambda(params, lam)
    n = params.n_atoms
    j = params.j
    if t == -n:
        return 0.0
    if classify_region(params) is not PhaseRegion.PARALLELS:
        return 0.0
    eta = _eta(params)
    lamf = t / 2.0
    if t <= n:
        nn = (t + n) // 2
        a = (n - t) // 2
        ratio = math.exp(_log_laguerre_or_zero(nn - 1, a, eta)
                         - log_laguerre_neg(nn, a, eta))
        return (j + lamf) - n * ratio
    a = (t - n) // 2
    ratio = math.exp(log_laguerre_neg(n - 1, a, eta) - log_laguerre_neg(n, a, eta))
    return (lamf + j) * (1.0 - ratio)


def photon_variance(params: ModelParams, lam: float) -> float:
    """(Delta n)^2 of the projected state in closed form.

    Equals (eta d/d(eta))^2 ln Y, a combination of three Laguerre ratios;
    zero at the poles and in the one-dimensional lam = -j sector.
    """
    t = two_lambda(params, lam)
    n = params.n_atoms
    if t == -n:
        return 0.0
    if classify_region(params) is not PhaseRegion.PARALLELS:
        return 0.0
    eta = _eta(params)
    lamf = t / 2.0
    j = params.j
    if t <= n:
        nn = (t + n) // 2
        a = (n - t) // 2
        lden = log_laguerre_neg(nn, a, eta)
        r1 = math.exp(_log_laguerre_or_zero(nn - 1, a, eta) - lden)
        r2 = math.exp(_log_laguerre_or_zero(nn - 2, a, eta) - lden)
        return n * (r1 + (n - 1) * r2 - n * r1 * r1)
    a = (t - n) // 2
    lden = log_laguerre_neg(n, a, eta)
    r1 = math.exp(log_laguerre_neg(n - 1, a, eta) - lden)
    r2 = math.exp(log_laguerre_neg(n - 2, a, eta) - lden)
    s = lamf + j
    return s * (r1 + (s - 1.0) * r2 - s * r1 * r1)


def energy_surface(params: ModelParams, lam: float) -> float:
    """Energy per particle of the projected state in sector lam.

    In the Parallels region

        H(lam) = (lam + j Delta)/(2j) - [Delta - 2 gamma zeta / sqrt(2j)] R,

    with R the Laguerre ratio carrying <n>; the lam = -j sector reduces to
    -(1 - Delta)/2.  In the pole regions the state is the product state and
    the energy is -+omega_a/2 independent of lam.
    """
    t = two_lambda(params, lam)
    n = params.n_atoms
    j = params.j
    delta = params.detuning
    region = classify_region(params)
    if region is PhaseRegion.NORTH_POLE:
        return -params.omega_a / 2.0
    if region is PhaseRegion.SOUTH_POLE:
        return params.omega_a / 2.0
    if t == -n:
        return -(1.0 - delta) / 2.0
    if params.coupling == 0.0:
        # Degenerate corner: the only reachable sector is lam = -j.
        raise DegenerateCornerError(
            "energy surface undefined for lam > -j at gamma = 0, omega_a = 0"
        )
    z = photon_displacement(params)
    eta = z * z
    lamf = t / 2.0
    coef = delta - (2.0 * params.coupling / math.sqrt(n)) * z
    if t <= n:
        nn = (t + n) // 2
        a = (n - t) // 2
        ratio = math.exp(_log_laguerre_or_zero(nn - 1, a, eta)
                         - log_laguerre_neg(nn, a, eta))
    else:
        a = (t - n) // 2
        ratio = ((lamf + j) / n) * math.exp(
            log_laguerre_neg(n - 1, a, eta) - log_laguerre_neg(n, a, eta)
        )
    return (lamf + j * delta) / n - coef * ratio


def select_lambda(params: ModelParams) -> float:
    """Sector label of the minimum-energy projected state.

    The pole regions carry lam = -+j.  In the Parallels region the classical
    value lam_c is rounded onto the sector grid by testing every grid value
    within one unit of lam_c (clipped at -j) and keeping the energy
    minimizer; ties break toward the smaller label.  The degenerate corner
    gamma = 0, omega_a = 0 falls back to lam = -j.
    """
    j = params.j
    region = classify_region(params)
    if region is PhaseRegion.NORTH_POLE:
        return -j
    if region is PhaseRegion.SOUTH_POLE:
        return j
    try:
        lam_c = critical_point(params).lam_c
    except DegenerateCornerError:
        return -j
    # Grid values lam = -j + k inside [lam_c - 1, lam_c + 1], clipped at -j.
    k_lo = max(0, math.ceil(lam_c - 1.0 + j))
    k_hi = math.floor(lam_c + 1.0 + j)
    best = None
    best_energy = math.inf
    for k in range(k_lo, k_hi + 1):
        lam = -j + k
        e = energy_surface(params, lam)
        if e < best_energy:
            best, best_energy = lam, e
    return best


def build_state(params: ModelParams, lam: float) -> ProjectedState:
    """Materialize the normalized projected state of sector lam.

    Parallels coefficients are sign(zeta)^nu exp((ln C + nu ln eta -
    ln nu! - ln Y)/2); carrying the literal zeta^nu sign keeps overlaps
    against exact eigenvectors sign-consistent without any phase fixing.
    Pole regions return the product state: weight 1 on nu = 0.
    """
    basis = sector_basis(params, lam)
    region = classify_region(params)
    c = np.zeros(basis.dimension)
    if region is not PhaseRegion.PARALLELS:
        if basis.nu_min != 0:
            raise ValueError(
                f"pole-region state occupies nu = 0, outside sector lam = {lam}"
            )
        c[0] = 1.0
        try:
            z = photon_displacement(params)
        except ZeroCouplingError:
            z = 0.0
        return ProjectedState(params=params, lam=basis.lam, zeta=z, phi=0.0,
                              basis=basis, coefficients=c, log_overlap=0.0)
    try:
        z = photon_displacement(params)
    except ZeroCouplingError:
        # Degenerate corner: only the one-dimensional lam = -j sector exists.
        if basis.dimension != 1:
            raise
        c[0] = 1.0
        return ProjectedState(params=params, lam=basis.lam, zeta=0.0, phi=0.0,
                              basis=basis, coefficients=c, log_overlap=0.0)
    eta = z * z
    ly = log_overlap(params, lam)
    logs = _log_weights(params, basis, eta)
    for i, nu in enumerate(basis.nu_values()):
        if logs[i] == -math.inf:
            continue
        sign = -1.0 if (z < 0.0 and nu % 2 == 1) else 1.0
        c[i] = sign * math.exp(0.5 * (logs[i] - ly))
    return ProjectedState(params=params, lam=basis.lam, zeta=z, phi=0.0,
                          basis=basis, coefficients=c, log_overlap=ly)


def observables(params: ModelParams, lam: float, *,
                jx2_literal_form: bool = False) -> ObservableSet:
    """All scalar observables of the projected state in sector lam.

    <J_x> = <J_y> = <q> = <p> = 0 because those operators move the state out
    of its sector; they are not stored.  <J_x^2> uses the fixed-sector
    identity (j(j+1) - <J_z^2>)/2, exact for any state with sharp Lambda.
    ``jx2_literal_form`` instead drops the inversion variance and evaluates
    (j(j+1) - <J_z>^2)/2, retained for comparison; the two differ by
    (Delta n)^2 / 2 whenever the photon number fluctuates.
    """
    t = two_lambda(params, lam)
    lamf = t / 2.0
    j = params.j
    region = classify_region(params)
    n_mean = mean_photon(params, lam)
    n_var = photon_variance(params, lam)
    jz_mean = lamf - n_mean
    jz_var = n_var
    jz2 = jz_var + jz_mean * jz_mean
    if jx2_literal_form:
        jx2 = 0.5 * (j * (j + 1.0) - jz_mean * jz_mean)
    else:
        jx2 = 0.5 * (j * (j + 1.0) - jz2)
    q2 = n_mean + 0.5
    if region is PhaseRegion.PARALLELS and params.coupling != 0.0:
        adag_jminus = photon_displacement(params) * (j + lamf - n_mean)
        p = photon_distribution(params, lam)
        nz = p[p > 0.0]
        entropy = float(-np.sum(nz * np.log(nz)))
        energy = energy_surface(params, lam)
    else:
        # Pole product states (and the degenerate corner's lam = -j state).
        adag_jminus = 0.0
        entropy = 0.0
        energy = (-params.omega_a / 2.0 if region is not PhaseRegion.SOUTH_POLE
                  else params.omega_a / 2.0)
    xi = math.sqrt(2.0 * jx2 / j)
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
        lam=lamf,
        region=region,
    )
