"""Temporal bipartite graph analytics for export-control sanction events."""

__version__ = "0.1.0"

from .events import (
    Action,
    DatasetSummary,
    Lifecycle,
    LinkWarning,
    ReasonCategory,
    SanctionEvent,
    link_lifecycles,
    parse_event_record,
    summarize,
)
from .motifs import Bin, MotifCount, MotifParams, ObservationRule, campaign_table, event_weight, motif_counts
from .networks import DetectionNetwork, final_target_network, intermediate_target_network, network_table
from .null_model import PermutationReport, Term, permutation_test, shuffle_realization, term_statistic
from .rsi import RsiPoint, rsi_at, rsi_series, rsi_snapshot
from .synth import Burst, SynthConfig, generate
from .temporal_graph import Role, RoleNode, TemporalEdge, TemporalGraph, active_edges, build_graph, degree

__all__ = [
    "Action",
    "Bin",
    "Burst",
    "DatasetSummary",
    "DetectionNetwork",
    "Lifecycle",
    "LinkWarning",
    "MotifCount",
    "MotifParams",
    "ObservationRule",
    "PermutationReport",
    "ReasonCategory",
    "Role",
    "RoleNode",
    "RsiPoint",
    "SanctionEvent",
    "SynthConfig",
    "TemporalEdge",
    "TemporalGraph",
    "Term",
    "active_edges",
    "build_graph",
    "campaign_table",
    "degree",
    "event_weight",
    "final_target_network",
    "generate",
    "intermediate_target_network",
    "link_lifecycles",
    "motif_counts",
    "network_table",
    "parse_event_record",
    "permutation_test",
    "rsi_at",
    "rsi_series",
    "rsi_snapshot",
    "shuffle_realization",
    "summarize",
    "term_statistic",
]
