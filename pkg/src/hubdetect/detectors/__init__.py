from .base import HubDetector, HubSet, load_hubset, save_hubset
from .mdl import MdlDetector, MdlResult, dl_curve, dl_curve_csv_lines, mdl_hubs
from .registry import (
    GROUPS,
    METHOD_GROUPS,
    METHOD_ORDER,
    METHODS,
    MethodSpec,
    build_detector,
    method_direction,
    method_group,
    method_spec,
    slug,
)
from .strength import (
    DEFAULT_TAU,
    STRENGTH_METHODS,
    StrengthDetector,
    StrengthRecord,
    strength_classify,
    strength_csv_lines,
    strength_table,
)
from .threshold import (
    DEFAULT_CROP_QUANTILE,
    DEFAULT_THRESHOLD_QUANTILE,
    ArcanDetector,
    AvgDegreeDetector,
    LoubarDetector,
    ThresholdResult,
    arcan_classify,
    arcan_threshold,
    avg_hubs,
    loubar_hubs,
)

__all__ = [
    "ArcanDetector",
    "AvgDegreeDetector",
    "DEFAULT_CROP_QUANTILE",
    "DEFAULT_TAU",
    "DEFAULT_THRESHOLD_QUANTILE",
    "GROUPS",
    "HubDetector",
    "HubSet",
    "LoubarDetector",
    "METHODS",
    "METHOD_GROUPS",
    "METHOD_ORDER",
    "MdlDetector",
    "MdlResult",
    "MethodSpec",
    "STRENGTH_METHODS",
    "StrengthDetector",
    "StrengthRecord",
    "ThresholdResult",
    "arcan_classify",
    "arcan_threshold",
    "avg_hubs",
    "build_detector",
    "dl_curve",
    "dl_curve_csv_lines",
    "load_hubset",
    "loubar_hubs",
    "mdl_hubs",
    "method_direction",
    "method_group",
    "method_spec",
    "save_hubset",
    "slug",
    "strength_classify",
    "strength_csv_lines",
    "strength_table",
]
