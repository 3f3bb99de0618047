"""Generative models that turn a one-mode social network into a two-mode
(agent x group) network, plus the tools to evaluate what they produce."""

from .bipartite import TwoModeNetwork, count_four_cycles, degrees, project, read_incidence, write_incidence
from .blau import BlauSpace, NicheSpec, blau_space, embed_classical_mds, sample_niche
from .evaluation import (
    CharacteristicsConfig,
    EvalReport,
    RecoveryConfig,
    SimilarityReport,
    extract_backbone,
    run_characteristics_experiment,
    run_recovery_experiment,
    similarity,
    skewness,
)
from .graph import (
    OneModeNetwork,
    geodesic_distances,
    induced_density,
    karate_club,
    load_edge_list,
    sample_maximal_clique,
    watts_strogatz,
)
from .models import ModelConfig, clubs_group, generate_two_mode, organizations_group, teams_group
from .nulls import NullEnsembleStats, curveball, four_cycle_ratio

__version__ = "0.1.0"
