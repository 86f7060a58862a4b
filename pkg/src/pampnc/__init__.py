"""Relay symbol and user bit mapping optimization for two-way relay PAM links."""

from .analytic import (
    InvalidInterval,
    InvalidRelayConstellation,
    SymbolMapping,
    TransitionModel,
    ber_by_enumeration,
    ber_objective,
    bc_transition_matrix,
    bit_error_rate,
    gaussian_interval_prob,
    ma_transition_matrix,
    ser_by_enumeration,
    ser_objective,
    symbol_error_rate,
    transition_model,
)
from .catalog import (
    BIT_LABELS,
    REFERENCE_MAPPINGS,
    SCENARIOS,
    Scenario,
    get_scenario,
    named_bit_labels,
    reference_mapping,
)
from .constellation import (
    NONUNIFORM,
    UNIFORM,
    InvalidOrder,
    PamConstellation,
    SuperposedConstellation,
    decision_boundaries,
    make_pam,
    noise_variance,
    superpose,
)
from .denoise import (
    ADDITIVE,
    XOR,
    AmbiguityError,
    CodeGroupTable,
    DenoiseScheme,
    additive_scheme,
    check_exclusive_law,
    denoise_mod,
    denoise_xor,
    group_levels,
    scheme_from_code,
    xor_scheme,
)
from .search import (
    BitMapping,
    Candidate,
    EquivalenceClass,
    InvalidLabels,
    MappingScore,
    NoSignChange,
    OrbitInconsistency,
    SearchResult,
    bit_error_profile,
    canonical_form,
    distinct_bit_mappings,
    enumerate_symbol_classes,
    find_crossover,
    make_bit_mapping,
    optimize_ber,
    optimize_ser,
    orbit_of,
    profile_matrix,
    sweep,
    verify_orbit_invariance,
)
from .simulator import (
    InvalidConfig,
    SimConfig,
    SimResult,
    derived_seed,
    run_trials,
    sweep_sim,
)

__version__ = "0.1.0"
