"""Magnon-magnon entanglement and EPR steering of antiferromagnetic
spin waves, with a simulated microwave-cavity readout.

The pipeline runs lattice geometry -> spin-wave modes -> Bogoliubov
squeezing -> two-mode entanglement / EPR variance -> cavity Rabi
protocol; every closed form has an independent Fock-space oracle next
to it.
"""

from .lattice import LatticeSpec, build_preset, from_vectors, kpath, structure_factor
from .spinwave import (BareModes, BogoliubovFactors, HybridModes,
                       MagnonInstabilityError, ModelParams, bare_modes,
                       bogoliubov, coupling_ratio, hybrid_modes)
from .squeezed import (CoefficientSeq, TwoModeState, assemble_state,
                       choose_truncation, entropy_of_state, excited_coefficients,
                       excited_sequence, excited_state, ground_coefficients,
                       ground_entropy, ground_state, oracle_excited_state)
from .epr import (EprResult, REGIME_LOCAL, REGIME_NONLOCAL, REGIME_THRESHOLD,
                  classify_regime, epr_ground, epr_variance_oracle,
                  heisenberg_case)
from .cavity import (ALPHA_BLOCK, BETA_BLOCK, CavityBlock, RabiParams,
                     coupling_strength, epr_from_frequency, evolve_block,
                     lambda_from_cavity, rabi, transition_probabilities)
from .experiment import (FrequencyEstimate, TimeSeries, derive_seed,
                         estimate_frequency, reconstruct, run_protocol,
                         synthesize)
from .config import ConfigError, RunConfig, load_config

__version__ = "0.1.0"

__all__ = [
    "LatticeSpec", "build_preset", "from_vectors", "kpath", "structure_factor",
    "BareModes", "BogoliubovFactors", "HybridModes", "MagnonInstabilityError",
    "ModelParams", "bare_modes", "bogoliubov", "coupling_ratio", "hybrid_modes",
    "CoefficientSeq", "TwoModeState", "assemble_state", "choose_truncation",
    "entropy_of_state", "excited_coefficients", "excited_sequence",
    "excited_state", "ground_coefficients", "ground_entropy", "ground_state",
    "oracle_excited_state",
    "EprResult", "REGIME_LOCAL", "REGIME_NONLOCAL", "REGIME_THRESHOLD",
    "classify_regime", "epr_ground", "epr_variance_oracle", "heisenberg_case",
    "ALPHA_BLOCK", "BETA_BLOCK", "CavityBlock", "RabiParams",
    "coupling_strength", "epr_from_frequency", "evolve_block",
    "lambda_from_cavity", "rabi", "transition_probabilities",
    "FrequencyEstimate", "TimeSeries", "derive_seed", "estimate_frequency",
    "reconstruct", "run_protocol", "synthesize",
    "ConfigError", "RunConfig", "load_config",
]
