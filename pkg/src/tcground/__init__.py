"""Ground states of the Tavis-Cummings model: exact sector diagonalization
and the analytic projected coherent-state approximation, cross-validated
through observables, entanglement entropy, squeezing, and fidelity."""

from .model import (
    CriticalPoint,
    DegenerateCornerError,
    ModelParams,
    PhaseRegion,
    SectorBasis,
    SectorState,
    ZeroCouplingError,
    classify_region,
    critical_point,
    photon_displacement,
    photon_displacement_sq,
    sector_basis,
)
from .projected import (
    ObservableSet,
    ProjectedState,
    build_state,
    energy_surface,
    excited_atom_distribution,
    log_overlap,
    mean_photon,
    observables,
    photon_distribution,
    photon_variance,
    select_lambda,
)
from .exact import (
    NormalizationError,
    QuantumGroundState,
    ScanWindowError,
    SectorHamiltonian,
    SolverError,
    build_sector_hamiltonian,
    entanglement_entropy,
    fidelity,
    ground_state,
    lowest_eigenpair,
    observables_from_state,
    sector_eigenvalues,
    spectrum,
)
from .cli import SweepRecord, compute_record

__version__ = "0.1.0"

__all__ = [
    "CriticalPoint",
    "DegenerateCornerError",
    "ModelParams",
    "NormalizationError",
    "ObservableSet",
    "PhaseRegion",
    "ProjectedState",
    "QuantumGroundState",
    "ScanWindowError",
    "SectorBasis",
    "SectorHamiltonian",
    "SectorState",
    "SolverError",
    "SweepRecord",
    "ZeroCouplingError",
    "build_sector_hamiltonian",
    "build_state",
    "classify_region",
    "compute_record",
    "critical_point",
    "energy_surface",
    "entanglement_entropy",
    "excited_atom_distribution",
    "fidelity",
    "ground_state",
    "log_overlap",
    "lowest_eigenpair",
    "mean_photon",
    "observables",
    "observables_from_state",
    "photon_displacement",
    "photon_displacement_sq",
    "photon_distribution",
    "photon_variance",
    "sector_basis",
    "sector_eigenvalues",
    "select_lambda",
    "spectrum",
]
