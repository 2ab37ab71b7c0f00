"""degcore: constructive extraction of proportionally smaller subgraphs of
large minimum degree, with replayable certificates."""

from .colouring import (
    ColouringReport,
    ColouringState,
    StepScratch,
    assemble_step,
    greedy_list_colour,
    init_state,
    palette_size,
    verify_appropriate,
)
from .errors import (
    AdmissibilityViolated,
    DegcoreError,
    DomainError,
    GraphFormatError,
    InsufficientEdges,
    InternalInvariantBreach,
    InvalidConfig,
    NoJPrime,
    PaletteExhausted,
    PreconditionViolated,
    TooLarge,
    UnknownVertex,
)
from .extractor import (
    AppendixState,
    DyadicBuckets,
    ExtractionCertificate,
    ExtractionConfig,
    extract,
    finalize,
    partition_dyadic,
    shrink_few_degree_k,
    verify_certificate,
)
from .goodsets import (
    EmptyCore,
    GoodFamily,
    GoodSetEscape,
    GoodSetReport,
    audit_good_set,
    grow_good_sets,
    remove_and_peel,
)
from .graph import Graph, content_hash, parse_edge_list, serialize_edge_list
from .oracle import (
    ORACLE_MAX_N,
    OracleResult,
    brute_min_subgraph,
    gen_near_threshold,
    gen_random_edges,
    gen_wheel,
)
from .peeler import PeelResult, fact1_threshold, peel_to_core
from .shadow import (
    ClosureReport,
    ShadowContext,
    ShadowRecord,
    low_degree_weight,
    shadow,
    shadow_deficiency,
    verify_shadow_closure,
)
from .strategy import (
    DeletionStrategy,
    StrategyBase,
    StrategyLayer,
    WitnessFound,
    apply_strategy,
    build_strategy,
    strategy_budget,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
