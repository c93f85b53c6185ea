"""Stochastic search for maximal Bell-inequality violations of simulated states."""

from . import experiments
from .estimators import BellViolationMaximizer, TomographyBaseline
from .linalg import (
    expectation,
    gell_mann_basis,
    hermitian_eig,
    hermitian_from_coefficients,
    tensor,
    unitary_from_coefficients,
    unitary_from_hermitian,
)
from .oracles import (
    FiniteShot,
    MeasurementOracle,
    SettingError,
    Untrusted,
    make_untrusted,
    parse_noise,
    true_joint_distribution,
)
from .scenarios import (
    CGLMP3,
    CHSH,
    MERMIN3,
    SCENARIOS,
    BellScenario,
    bell_value,
    build_measurements,
    cglmp_combination,
    get_scenario,
    joint_probabilities,
    quantum_maximum,
    qubit_observable,
    qutrit_projectors,
)
from .spsa import (
    IterationRecord,
    RunTrace,
    SpsaConfig,
    gain_schedule,
    random_initial_theta,
    run,
    sample_perturbation,
    spsa_step,
)
from .states import (
    PRESETS,
    QuantumState,
    as_quantum_state,
    ghz3,
    ghz_mixed,
    isotropic_qutrits,
    load_state_file,
    max_entangled_qutrits,
    parse_state_spec,
    partially_entangled,
    partially_entangled_ghz,
    random_density_matrix,
    save_state_file,
    singlet,
    weighted_qutrits,
    werner,
)
from .tomography import (
    ReconstructedState,
    TomographyData,
    chsh_max_value,
    tomography_estimate,
    expected_tomography_data,
    matched_tomography_shots,
    reconstruct,
    tomography_measure,
)

__version__ = "0.1.0"

__all__ = [
    "BellScenario", "BellViolationMaximizer", "CGLMP3", "CHSH", "FiniteShot",
    "IterationRecord", "MERMIN3", "MeasurementOracle", "PRESETS", "QuantumState",
    "ReconstructedState", "RunTrace", "SCENARIOS", "SettingError", "SpsaConfig",
    "TomographyBaseline", "TomographyData", "Untrusted", "as_quantum_state",
    "bell_value", "build_measurements", "cglmp_combination", "chsh_max_value",
    "tomography_estimate", "expectation", "expected_tomography_data", "gain_schedule",
    "gell_mann_basis", "get_scenario", "ghz3", "ghz_mixed", "hermitian_eig",
    "hermitian_from_coefficients", "isotropic_qutrits", "joint_probabilities",
    "load_state_file", "make_untrusted", "matched_tomography_shots",
    "max_entangled_qutrits", "parse_noise", "parse_state_spec",
    "partially_entangled", "partially_entangled_ghz", "quantum_maximum",
    "qubit_observable", "qutrit_projectors", "random_density_matrix",
    "random_initial_theta", "reconstruct", "run", "sample_perturbation",
    "save_state_file", "singlet", "spsa_step", "tensor", "tomography_measure",
    "true_joint_distribution", "unitary_from_coefficients",
    "unitary_from_hermitian", "weighted_qutrits", "werner",
]
