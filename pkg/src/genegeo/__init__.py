"""genegeo: crossover geometry, soft selection, and a GA experiment bench.

Point crossover conserves the distance between a chromosome pair and, for
every finite p, the sum of p-th-power L_p distances of the pair to any
reference chromosome.  This package makes those identities (and their
L_inf failure), the crossover outcome classification, and the
soft-beats-hard selection result executable and testable: exact distance
machinery, selection curves, a guessing-game laboratory, a generational
engine with a compactness stopping rule, and a reproducible experiment
harness, all backed by compiled kernels with a NumPy fallback.
"""

from ._core import BACKEND as kernel_backend
from .genospace import (
    HAMMING,
    L1,
    L2,
    LINF,
    Chromosome,
    GeneKind,
    GenospaceError,
    InvalidGeneError,
    Locus,
    MetricError,
    MetricKind,
    MetricSpec,
    Schema,
    SchemaMismatchError,
    chromosome_from_json,
    chromosome_to_json,
    distance,
    distance_pow,
)
from .crossover import (
    CrossoverMask,
    GeometryError,
    MaskError,
    OutcomeConfig,
    OUTCOME_LABELS,
    TriangleDecomposition,
    classify_outcome,
    crossover,
    decompose,
    generalized_circumference,
    offspring_distance_tradeoff,
    outcome_census,
)
from .selection import (
    MAXIMIZE,
    MINIMIZE,
    ArctanQuartile,
    ExplicitSequence,
    HardThreshold,
    QuartileSummary,
    SelectionError,
    TanhQuartile,
    adaptive_threshold,
    build_curve,
    quartiles,
    select_probability,
)
from .guessgame import (
    DistributionError,
    PairDistribution,
    Strategy,
    analytic_win_probability,
    build_game_curve,
    simulate_game,
    unit_arctan_sequence,
    unit_tanh_sequence,
)
from .engine import (
    EngineConfig,
    EngineError,
    GenerationStats,
    Member,
    Population,
    RunResult,
    better_half_volume,
    default_discrete_budget,
    run,
    select_parent_pool,
    step,
    uniform_chromosome,
)

__version__ = "0.1.0"
