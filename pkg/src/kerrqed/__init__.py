"""Dispersive and Kerr-shift circuit QED: exact-diagonalization shift
extraction, shot-noise dephasing, and semiclassical nonlinear readout."""

__version__ = "0.1.0"

from .dephasing import (
    DephasingParams,
    DephasingResult,
    dephasing_curve,
    gamma_linear,
    gamma_nonlinear_analytic,
    gamma_ode,
    thermal_occupation,
    z_quadratic_analytic,
    z_trajectory,
)
from .diagnostics import OverlapScan, critical_photon_estimate, overlap_scan
from .dispersive import (
    DressedSpectrum,
    ShiftReport,
    chi_analytic,
    chi_zero_gp,
    cpt_shifts,
    cpt_spectrum,
    extract_shifts,
    label_dressed_states,
    mixed_model_shifts,
    mixed_model_spectrum,
    mixed_shift_grid,
)
from .errors import (
    ConvergenceError,
    DegeneratePointError,
    HermiticityError,
    KerrqedError,
    LabelingError,
)
from .models import (
    CptParams,
    MixedCouplingParams,
    build_cpt_hamiltonian,
    build_mixed_spin_boson,
    build_synthetic_dispersive,
    cpt_two_level_couplings,
)
from .qspace import (
    Boson,
    Charge,
    HilbertSpace,
    OperatorMatrix,
    SpinHalf,
    eigendecompose,
    fidelity,
    reduced_qubit_state,
)
from .readout import (
    ReadoutConfig,
    ReadoutTrajectory,
    calibrate_drive,
    integrate_trajectory,
    steady_state_amplitude,
)

__all__ = [
    "__version__",
    "Boson",
    "Charge",
    "ConvergenceError",
    "CptParams",
    "DegeneratePointError",
    "DephasingParams",
    "DephasingResult",
    "DressedSpectrum",
    "HermiticityError",
    "HilbertSpace",
    "KerrqedError",
    "LabelingError",
    "MixedCouplingParams",
    "OperatorMatrix",
    "OverlapScan",
    "ReadoutConfig",
    "ReadoutTrajectory",
    "ShiftReport",
    "SpinHalf",
    "build_cpt_hamiltonian",
    "build_mixed_spin_boson",
    "build_synthetic_dispersive",
    "calibrate_drive",
    "chi_analytic",
    "chi_zero_gp",
    "cpt_shifts",
    "cpt_spectrum",
    "cpt_two_level_couplings",
    "critical_photon_estimate",
    "dephasing_curve",
    "eigendecompose",
    "extract_shifts",
    "fidelity",
    "gamma_linear",
    "gamma_nonlinear_analytic",
    "gamma_ode",
    "integrate_trajectory",
    "label_dressed_states",
    "mixed_model_shifts",
    "mixed_model_spectrum",
    "mixed_shift_grid",
    "overlap_scan",
    "reduced_qubit_state",
    "steady_state_amplitude",
    "thermal_occupation",
    "z_quadratic_analytic",
    "z_trajectory",
]
