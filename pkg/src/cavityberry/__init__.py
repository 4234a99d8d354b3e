"""Berry phases of eigenstates in quantized-light-atom models.

Exact Fock-space diagonalization, closed-form coherent-state variational
semiclassics, and an independent discrete-loop oracle for the geometric
phase generated by the photon-phase loop exp(-i phi a'a), phi: 0 -> 2pi.
"""

__version__ = "0.1.0"

from .berryphase import (
    BerryResult,
    berry_phase_formula,
    jc_doublet_phase,
    mean_photon,
    pancharatnam_loop,
)
from .classicalpath import (
    BlochPath,
    ClassicalField,
    classical_hamiltonian,
    eigenpath,
    path_geometric_phase,
    solid_angle_phase,
)
from .model import (
    BasisLabel,
    FockTruncation,
    LambdaParams,
    SymmetricMatrix,
    TwoLevelParams,
    build_lambda_matrix,
    build_rabi_matrix,
    excitation_number_matrix,
    lambda_labels,
    parity_signs,
    two_level_labels,
)
from .spectra import (
    EigensolverError,
    SpectralResult,
    converge_truncation,
    degenerate_clusters,
    eigh,
    ground_state,
)
from .sweep import SweepConfig, SweepRecord, demo_controversy, parse_csv, render_csv, run_sweep
from .svgplot import PlotStyle, emit_plot
from .variational import (
    VariationalSolution,
    critical_coupling_lambda,
    critical_coupling_two_level,
    effective_energy_lambda,
    effective_energy_two_level,
    numeric_minimize,
    solve_lambda,
    solve_two_level,
)

__all__ = [
    "__version__",
    "BasisLabel", "FockTruncation", "LambdaParams", "SymmetricMatrix",
    "TwoLevelParams", "build_lambda_matrix", "build_rabi_matrix",
    "excitation_number_matrix", "lambda_labels", "parity_signs",
    "two_level_labels",
    "EigensolverError", "SpectralResult", "converge_truncation",
    "degenerate_clusters", "eigh", "ground_state",
    "BerryResult", "berry_phase_formula", "jc_doublet_phase", "mean_photon",
    "pancharatnam_loop",
    "BlochPath", "ClassicalField", "classical_hamiltonian", "eigenpath",
    "path_geometric_phase", "solid_angle_phase",
    "VariationalSolution", "critical_coupling_lambda",
    "critical_coupling_two_level", "effective_energy_lambda",
    "effective_energy_two_level", "numeric_minimize", "solve_lambda",
    "solve_two_level",
    "SweepConfig", "SweepRecord", "demo_controversy", "parse_csv",
    "render_csv", "run_sweep",
    "PlotStyle", "emit_plot",
]
