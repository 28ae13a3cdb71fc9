"""Cluster validity through structural simplicity.

Scores partitions with the simplicity index (centroid, distance-matrix and
hierarchical forms) and six classic validity indices, and audits any of them
for transform invariance, optimal clustering and unbiased clustering on the
builtin benchmark datasets.
"""

from .classic import (
    INDEX_IDS,
    PARTITION_INDEX_IDS,
    IndexDescriptor,
    UnknownIndexError,
    c_index,
    calinski_harabasz,
    davies_bouldin,
    descriptor,
    dunn,
    evaluate,
    score_function,
    silhouette,
)
from .core import (
    SYNTHETIC_DATASET_IDS,
    UNDEFINED,
    Dataset,
    Dendrogram,
    DendrogramLevel,
    DistanceMatrix,
    IndexValue,
    Partition,
    Undefined,
    centroid,
    dendrogram_from_merges,
    diameter,
    euclidean_distance,
    is_defined,
    mean_pairwise_distance,
    pairwise_distances,
    radius_centroid,
    scale_dataset,
    shift_dataset,
    single_linkage,
    synthetic_dataset,
)
from .harness import (
    AuditDetail,
    PropertyFlags,
    audit,
    audit_all,
    check_baseline,
    check_invariance,
    check_optimality,
    values_equal,
)
from .simplicity import SiCurve, si_centroid, si_curve, si_distance, si_hierarchical

__version__ = "0.1.0"

__all__ = [
    "AuditDetail",
    "Dataset",
    "Dendrogram",
    "DendrogramLevel",
    "DistanceMatrix",
    "INDEX_IDS",
    "IndexDescriptor",
    "IndexValue",
    "PARTITION_INDEX_IDS",
    "Partition",
    "PropertyFlags",
    "SYNTHETIC_DATASET_IDS",
    "SiCurve",
    "UNDEFINED",
    "Undefined",
    "UnknownIndexError",
    "audit",
    "audit_all",
    "c_index",
    "calinski_harabasz",
    "centroid",
    "check_baseline",
    "check_invariance",
    "check_optimality",
    "davies_bouldin",
    "dendrogram_from_merges",
    "descriptor",
    "diameter",
    "dunn",
    "euclidean_distance",
    "evaluate",
    "is_defined",
    "mean_pairwise_distance",
    "pairwise_distances",
    "radius_centroid",
    "scale_dataset",
    "score_function",
    "shift_dataset",
    "si_centroid",
    "si_curve",
    "si_distance",
    "si_hierarchical",
    "silhouette",
    "single_linkage",
    "synthetic_dataset",
    "values_equal",
]
