"""Three-mode cavity-magnon simulator: non-Hermitian spectra, exceptional
points, and norm-preserving nonlinear density-matrix dynamics."""

from .fock import (DenseOperator, DensityMatrix, FockBasis, KetState,
                   adjoint, basis_ket, make_basis, make_ket, mode_annihilator,
                   mode_marginals, nonlocal_number_state, partial_trace,
                   product_state_of_marginals, pure_state_density)
from .model import (CircuitParams, ModelParams, build_effective_hamiltonian,
                    build_hamiltonian, canonical_params,
                    coupling_phase_from_interference, gain_mode_state,
                    params_from_circuit, split_hermitian, target_state)
from .spectrum import (EigenTriple, ExceptionalPoint, PhaseLabel, PhasePoint,
                       analytic_eigenvalues, characteristic_coefficients,
                       classify_phase, find_exceptional_points,
                       numeric_eigenvalues, reality_tolerance,
                       single_excitation_matrix, sweep_phase_diagram)
from .metrics import (ObservableRecord, collective_coherence, fidelity,
                      mean_particle_number, populations, purity,
                      von_neumann_entropy)
from .dynamics import (EvolutionConfig, NumericalAbort, SteadyStateResult,
                       Trajectory, evolve, loss_channels, mixed_initial_state,
                       rho_derivative, steady_state)
from .rng import SplitMix64
from .scenarios import (ConfigError, ScenarioConfig, ScenarioReport,
                        SweepSpec, config_from_dict, disorder_sample,
                        echo_config, parse_config, run_scenario)

__version__ = "0.1.0"

__all__ = [
    "DenseOperator", "DensityMatrix", "FockBasis", "KetState",
    "adjoint", "basis_ket", "make_basis", "make_ket", "mode_annihilator",
    "mode_marginals", "nonlocal_number_state", "partial_trace",
    "product_state_of_marginals", "pure_state_density",
    "CircuitParams", "ModelParams", "build_effective_hamiltonian",
    "build_hamiltonian", "canonical_params",
    "coupling_phase_from_interference", "gain_mode_state",
    "params_from_circuit", "split_hermitian", "target_state",
    "EigenTriple", "ExceptionalPoint", "PhaseLabel", "PhasePoint",
    "analytic_eigenvalues", "characteristic_coefficients", "classify_phase",
    "find_exceptional_points", "numeric_eigenvalues", "reality_tolerance",
    "single_excitation_matrix", "sweep_phase_diagram",
    "ObservableRecord", "collective_coherence", "fidelity",
    "mean_particle_number", "populations", "purity", "von_neumann_entropy",
    "EvolutionConfig", "NumericalAbort", "SteadyStateResult", "Trajectory",
    "evolve", "loss_channels", "mixed_initial_state", "rho_derivative",
    "steady_state",
    "SplitMix64",
    "ConfigError", "ScenarioConfig", "ScenarioReport", "SweepSpec",
    "config_from_dict", "disorder_sample", "echo_config", "parse_config",
    "run_scenario",
]
