"""posturekit: security posture modeling and attack chain analysis.

Model a cyber infrastructure as a small knowledge graph (losses,
hazards, assets, links, protections, attacker profiles), enumerate
every attack chain per hazard, classify protection coverage, rank
defenses, and explore what-if scenarios — from Python, the command
line, or a read-only HTTP API.
"""

from .analysis import (
    CLASS_RANK,
    COVERAGE_CLASSES,
    DEFAULT_THIN_THRESHOLD,
    AnalysisResults,
    ChainCoverage,
    ClassChange,
    CoverageReport,
    ProtectionRanking,
    RankEntry,
    RemovedProtection,
    WhatIfDelta,
    analyze_model,
    apply_scores,
    classify_chain,
    coverage,
    hazard_chains,
    hazard_weight,
    link_orientation,
    rank_protections,
    score_chains,
    what_if,
)
from .cli import main, run
from .graph import (
    DEFAULT_MAX_DEPTH,
    MERGED,
    AttackChain,
    AttackGraph,
    GraphEdge,
    Hop,
    TraversalGraph,
    attach_protections,
    build_graph,
    enumerate_chains,
    merge_graphs,
    traversal_graph,
    zero_day_link_id,
)
from .ingest import (
    ModelParseError,
    ParseResult,
    ScenarioParseError,
    bundled_model_path,
    emit_model,
    load_bundled_model,
    load_model_file,
    parse_document,
    parse_model,
    parse_scenario,
    parse_scenario_obj,
)
from .model import (
    EMPTY_SCENARIO,
    Asset,
    AttackerProfile,
    CriticalAssetMapping,
    EdgeScore,
    Finding,
    GuardSpec,
    Hazard,
    HazardNode,
    HazardTree,
    Link,
    Loss,
    Metadata,
    Model,
    NoMappingError,
    Protection,
    Scenario,
    UnknownIdError,
    ValidationReport,
    ZeroDayLink,
    check_scenario,
    hazard_tree,
    natural_key,
    resolve_losses,
    validate,
)
from .report import (
    CLASS_COLORS,
    chain_table,
    chain_to_dict,
    coverage_to_dict,
    delta_to_dict,
    finding_to_dict,
    full_report,
    graph_to_dict,
    ranking_to_dict,
    to_dot,
)

__version__ = "0.1.0"


def __getattr__(name: str):
    # create_app pulls in the web stack; load it only when asked for.
    if name == "create_app":
        from .service import create_app

        return create_app
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
