"""hubdetect: hub-like component detection in service dependency graphs.

The package covers the full analysis pipeline: SDG ingestion, node
metrics, four detector families (mean/Loubar thresholds, MDL model
selection, Arcan-style quartile thresholds, centrality-minus-clustering
strength), power-law fitting with bootstrap goodness of fit,
inter-method agreement, and precision evaluation against labels.
Detectors follow the scikit-learn estimator protocol.
"""

from . import agreement, detectors, evaluation, generate, metrics, scalefree, sdg
from .agreement import (
    AgreementMatrix,
    KappaResult,
    cohen_kappa,
    fleiss_kappa,
    interpret_kappa,
    jaccard,
    jaccard_matrix,
)
from .config import RunConfig, load_config
from .detectors import (
    ArcanDetector,
    AvgDegreeDetector,
    HubDetector,
    HubSet,
    LoubarDetector,
    METHOD_GROUPS,
    METHOD_ORDER,
    MdlDetector,
    MdlResult,
    StrengthDetector,
    arcan_classify,
    arcan_threshold,
    avg_hubs,
    build_detector,
    dl_curve,
    load_hubset,
    loubar_hubs,
    mdl_hubs,
    save_hubset,
    strength_classify,
    strength_table,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    DegenerateGraphError,
    GraphValidationError,
    HubDetectError,
    InsufficientDataError,
    LabelingError,
    ParseError,
)
from .evaluation import (
    GroundTruth,
    PrecisionReport,
    evaluate,
    evaluate_all,
    load_labels,
    precision,
)
from .generate import gen_synthetic, planted_hubs
from .metrics import MetricVector, compute_metric
from .scalefree import (
    FitResult,
    GofResult,
    fit_powerlaw,
    gof_pvalue,
    sample_discrete_powerlaw,
    scale_free_verdict,
)
from .sdg import Corpus, GraphSummary, Sdg, load_corpus, load_sdg, save_sdg, summarize

__version__ = "0.1.0"

__all__ = [
    "AgreementMatrix",
    "ArcanDetector",
    "AvgDegreeDetector",
    "ConfigError",
    "ConvergenceError",
    "Corpus",
    "DegenerateGraphError",
    "FitResult",
    "GofResult",
    "GraphSummary",
    "GraphValidationError",
    "GroundTruth",
    "HubDetectError",
    "HubDetector",
    "HubSet",
    "InsufficientDataError",
    "KappaResult",
    "LabelingError",
    "LoubarDetector",
    "METHOD_GROUPS",
    "METHOD_ORDER",
    "MdlDetector",
    "MdlResult",
    "MetricVector",
    "ParseError",
    "PrecisionReport",
    "RunConfig",
    "Sdg",
    "StrengthDetector",
    "arcan_classify",
    "arcan_threshold",
    "avg_hubs",
    "build_detector",
    "cohen_kappa",
    "compute_metric",
    "dl_curve",
    "evaluate",
    "evaluate_all",
    "fit_powerlaw",
    "fleiss_kappa",
    "gen_synthetic",
    "gof_pvalue",
    "interpret_kappa",
    "jaccard",
    "jaccard_matrix",
    "load_config",
    "load_corpus",
    "load_hubset",
    "load_labels",
    "load_sdg",
    "loubar_hubs",
    "mdl_hubs",
    "planted_hubs",
    "precision",
    "sample_discrete_powerlaw",
    "save_hubset",
    "save_sdg",
    "scale_free_verdict",
    "strength_classify",
    "strength_table",
    "summarize",
]
