from .merge import MergeAction, MergePlan, MergeResult, apply_merge_plan
from .normalize import normalize_entity
from .overlap import FusedGraph, OverlapReport, build_fused_preview, detect_overlaps

__all__ = [
    "FusedGraph",
    "MergeAction",
    "MergePlan",
    "MergeResult",
    "OverlapReport",
    "apply_merge_plan",
    "build_fused_preview",
    "detect_overlaps",
    "normalize_entity",
]
