"""Seed selection for balancing the exposure of two opposing campaigns
spreading through a directed social network."""

from .graph import (
    EdgeListError,
    Graph,
    InteractionRecord,
    SidePrior,
    estimate_probabilities,
    load_edge_list,
    load_interactions,
    load_priors,
    make_graph,
    validate_correlated,
    write_edge_list,
)
from .worlds import (
    CORRELATED,
    HETEROGENEOUS,
    ModelError,
    World,
    WorldEnsemble,
    build_ensemble,
    load_ensemble,
    reach,
    reach_extend,
    sample_world,
    save_ensemble,
)
from .objective import (
    ExactEvaluator,
    ObjectiveBreakdown,
    SeedAssignment,
    estimate_omega,
    estimate_phi,
    estimate_psi,
    exact_phi,
)
from .selection import (
    CandidatePool,
    SelectionResult,
    TraceStep,
    run_common,
    run_cover,
    run_greedy_phi,
    run_hedge,
)
from .baselines import (
    infmax_greedy,
    run_bblo,
    run_high_degree,
    run_intersection,
    run_random,
    run_union,
)
from .oracle import (
    OracleReport,
    SetCoverInstance,
    brute_force_opt,
    check_cover_ratio,
    check_halving_lemma,
    check_hedge_common_ratio,
    load_set_cover,
    reduction_from_set_cover,
    set_cover_exists,
    zero_imbalance_matches_coverability,
)
from .synth import generate_synthetic, load_seeds, random_dag, two_community, write_seeds
from .experiment import (
    ConfigError,
    ExperimentConfig,
    ResultRow,
    config_from_mapping,
    emit_plot_data,
    parse_config_file,
    run_experiment,
)

__version__ = "0.1.0"
