from .analytics import AnalysisReport, build_graph_payload, parse_analysis, run_analysis
from .keywords import STOP_WORDS, extract_keywords, tokenize
from .qa import (
    EntityMatch,
    KgqaResult,
    MAX_TASK_HOPS,
    bounded_hop,
    kgqa,
    match_entities,
    path_search,
)
from .quality import (
    ComparisonReport,
    DiagnosticsReport,
    GapReport,
    TOPIC_CHECKLISTS,
    compare_entities,
    coverage_gaps,
    detect_duplicates,
    edit_distance,
    provenance_trace,
    schema_diagnostics,
)

__all__ = [
    "AnalysisReport",
    "ComparisonReport",
    "DiagnosticsReport",
    "EntityMatch",
    "GapReport",
    "KgqaResult",
    "MAX_TASK_HOPS",
    "STOP_WORDS",
    "TOPIC_CHECKLISTS",
    "bounded_hop",
    "build_graph_payload",
    "compare_entities",
    "coverage_gaps",
    "detect_duplicates",
    "edit_distance",
    "extract_keywords",
    "kgqa",
    "match_entities",
    "parse_analysis",
    "path_search",
    "provenance_trace",
    "run_analysis",
    "schema_diagnostics",
    "tokenize",
]
