"""Conditional strategy equilibria of finite normal-form games, in exact arithmetic."""

__version__ = "0.1.0"

from .conditional import (  # noqa: E402
    ALL_MODES,
    DOMINANT_AVERAGE,
    DOMINANT_ZERO,
    UNIQUE_AVERAGE,
    UNIQUE_ZERO,
    Agreement,
    AgreementReport,
    ConditionalProfile,
    ConditionalStrategy,
    Disagreement,
    SemanticsMode,
    classify,
    constant_profile,
    constant_strategy,
    fixed_points,
    strategy_space_size,
)
from .constructors import (  # noqa: E402
    ConstructionResult,
    Theorem,
    build_existence,
    build_folk,
    build_general_2p,
    build_pareto3,
    build_strong,
    build_support_n4,
)
from .deviation import (  # noqa: E402
    DeviationCertificate,
    Verdict,
    best_unilateral_deviation_value,
    brute_force_deviation_value,
    coalition_deviation_exists,
    enumerate_cse,
    is_cse,
    is_strong_ce,
    scan_strong_ce,
)
from .game import (  # noqa: E402
    Game,
    best_responses,
    pareto_dominates_weakly,
    pareto_optimal_with_max_player,
    pure_maximin,
)
from .mixed import (  # noqa: E402
    FiniteSupportMeasure,
    PartitionSpec,
    SimpleConditionalMixedStrategy,
    decompose,
    phi_evaluate,
    verify_roundtrip,
)

__all__ = [
    "Agreement",
    "AgreementReport",
    "ALL_MODES",
    "best_responses",
    "best_unilateral_deviation_value",
    "brute_force_deviation_value",
    "build_existence",
    "build_folk",
    "build_general_2p",
    "build_pareto3",
    "build_strong",
    "build_support_n4",
    "classify",
    "coalition_deviation_exists",
    "ConditionalProfile",
    "ConditionalStrategy",
    "constant_profile",
    "constant_strategy",
    "ConstructionResult",
    "decompose",
    "DeviationCertificate",
    "Disagreement",
    "DOMINANT_AVERAGE",
    "DOMINANT_ZERO",
    "enumerate_cse",
    "FiniteSupportMeasure",
    "fixed_points",
    "Game",
    "is_cse",
    "is_strong_ce",
    "pareto_dominates_weakly",
    "pareto_optimal_with_max_player",
    "PartitionSpec",
    "phi_evaluate",
    "pure_maximin",
    "scan_strong_ce",
    "SemanticsMode",
    "SimpleConditionalMixedStrategy",
    "strategy_space_size",
    "Theorem",
    "UNIQUE_AVERAGE",
    "UNIQUE_ZERO",
    "Verdict",
    "verify_roundtrip",
]
