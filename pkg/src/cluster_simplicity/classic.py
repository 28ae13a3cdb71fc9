"""Reference implementations of six classic cluster validity indices.

Calinski-Harabasz, Silhouette, Score Function, Dunn, Davies-Bouldin and
C-index, in their canonical forms, over Euclidean distance and arithmetic-mean
centroids. Every zero-denominator path returns :data:`UNDEFINED` instead of
raising or producing NaN/infinity.

All indices, including the simplicity forms, are reachable through the string
registry used by the CLI and the property harness: :func:`evaluate` scores a
partition by index id and :func:`descriptor` reports an index's direction,
formula-defined best value (when one exists) and reference baseline (when one
exists).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .core import (
    UNDEFINED,
    Dataset,
    DistanceMatrix,
    IndexValue,
    Partition,
    pairwise_distances,
)
from .simplicity import si_centroid, si_distance


class UnknownIndexError(ValueError):
    """Raised for an index id that is not in the registry."""


def _centroids_and_sizes(dataset: Dataset, partition: Partition) -> tuple[np.ndarray, np.ndarray]:
    k = partition.n_clusters
    centroids = np.empty((k, dataset.dim))
    for label in range(k):
        centroids[label] = dataset.points[partition.members(label)].mean(axis=0)
    return centroids, partition.cluster_sizes()


def calinski_harabasz(dataset: Dataset, partition: Partition) -> IndexValue:
    """Variance-ratio criterion: between-cluster over within-cluster dispersion.

    UNDEFINED for k = 1, k = N, or zero within-cluster dispersion (the
    degrees-of-freedom or dispersion denominator vanishes).
    """
    n, k = dataset.n_points, partition.n_clusters
    if k == 1 or k == n:
        return UNDEFINED
    overall = dataset.points.mean(axis=0)
    centroids, sizes = _centroids_and_sizes(dataset, partition)
    between = float(np.dot(sizes, ((centroids - overall) ** 2).sum(axis=1)))
    within = 0.0
    for label in range(k):
        members = dataset.points[partition.members(label)]
        within += float(((members - centroids[label]) ** 2).sum())
    if within == 0.0:
        return UNDEFINED
    return (between / (k - 1)) / (within / (n - k))


def silhouette(dataset: Dataset, partition: Partition) -> IndexValue:
    """Mean silhouette width over all points.

    Per point: cohesion a = mean distance to the rest of its own cluster,
    separation b = least mean distance to another cluster; the width is
    (b - a) scaled by max(a, b), taken as 0 when a = b. Singletons score 0.
    UNDEFINED on a single-cluster partition (no other cluster exists).
    """
    n, k = dataset.n_points, partition.n_clusters
    if k == 1:
        return UNDEFINED
    dm = pairwise_distances(dataset.points)
    members = [partition.members(label) for label in range(k)]
    total = 0.0
    for i in range(n):
        own = partition.labels[i]
        own_others = members[own][members[own] != i]
        if own_others.size == 0:
            continue  # singleton convention: width 0
        a = float(dm[i, own_others].mean())
        b = min(float(dm[i, members[lab]].mean()) for lab in range(k) if lab != own)
        if a < b:
            total += 1.0 - a / b
        elif a > b:
            total += b / a - 1.0
    return total / n


def score_function(dataset: Dataset, partition: Partition) -> IndexValue:
    """Bounded score from the gap between inter- and intra-cluster spread.

    Combines size-weighted centroid-to-grand-centroid distances (between) with
    per-cluster mean member-to-centroid distances (within) through a double
    exponential, yielding a value in (0, 1). No zero-denominator path.
    """
    n, k = dataset.n_points, partition.n_clusters
    overall = dataset.points.mean(axis=0)
    centroids, sizes = _centroids_and_sizes(dataset, partition)
    between = float(np.dot(sizes, np.linalg.norm(centroids - overall, axis=1))) / (n * k)
    within = 0.0
    for label in range(k):
        members = dataset.points[partition.members(label)]
        within += float(np.linalg.norm(members - centroids[label], axis=1).mean())
    gap = between - within
    if gap > 700.0:  # exp(exp(gap)) overflows; the score saturates at 1
        return 1.0
    return 1.0 - math.exp(-math.exp(gap))


def dunn(dataset: Dataset, partition: Partition) -> IndexValue:
    """Smallest inter-cluster distance over largest cluster diameter.

    UNDEFINED for k = 1 (no cluster pair) and for zero maximum diameter
    (every cluster a singleton or coincident).
    """
    k = partition.n_clusters
    if k == 1:
        return UNDEFINED
    dm = pairwise_distances(dataset.points)
    members = [partition.members(label) for label in range(k)]
    max_diameter = 0.0
    for idx in members:
        if idx.size > 1:
            max_diameter = max(max_diameter, float(dm[np.ix_(idx, idx)].max()))
    if max_diameter == 0.0:
        return UNDEFINED
    min_separation = math.inf
    for a in range(k):
        for b in range(a + 1, k):
            min_separation = min(min_separation, float(dm[np.ix_(members[a], members[b])].min()))
    return min_separation / max_diameter


def davies_bouldin(dataset: Dataset, partition: Partition) -> IndexValue:
    """Mean worst-case ratio of summed dispersions to centroid separation.

    Dispersion of a cluster is the mean member-to-centroid distance.
    UNDEFINED for k = 1 and whenever two cluster centroids coincide.
    """
    k = partition.n_clusters
    if k == 1:
        return UNDEFINED
    centroids, _ = _centroids_and_sizes(dataset, partition)
    dispersion = np.empty(k)
    for label in range(k):
        members = dataset.points[partition.members(label)]
        dispersion[label] = np.linalg.norm(members - centroids[label], axis=1).mean()
    total = 0.0
    for a in range(k):
        worst = 0.0
        for b in range(k):
            if a == b:
                continue
            gap = float(np.linalg.norm(centroids[a] - centroids[b]))
            if gap == 0.0:
                return UNDEFINED
            worst = max(worst, (dispersion[a] + dispersion[b]) / gap)
        total += worst
    return total / k


def c_index(dataset: Dataset, partition: Partition) -> IndexValue:
    """Within-cluster distance sum scaled between its attainable extremes.

    With w within-cluster pairs: (S - S_min) / (S_max - S_min), where S sums
    the within-pair distances and S_min / S_max sum the w smallest / largest
    pairwise distances in the whole dataset. UNDEFINED when S_max = S_min
    (covers k = 1, k = N, and all-equal pairwise distances).
    """
    n = dataset.n_points
    dm = pairwise_distances(dataset.points)
    iu = np.triu_indices(n, k=1)
    all_distances = np.sort(dm[iu])
    same_cluster = partition.labels[iu[0]] == partition.labels[iu[1]]
    n_within = int(same_cluster.sum())
    within_sum = float(dm[iu][same_cluster].sum())
    smallest_sum = float(all_distances[:n_within].sum())
    largest_sum = float(all_distances[len(all_distances) - n_within:].sum())
    if largest_sum == smallest_sum:
        return UNDEFINED
    return (within_sum - smallest_sum) / (largest_sum - smallest_sum)


@dataclass(frozen=True)
class IndexDescriptor:
    """Stable metadata about an index.

    ``best_value`` is the optimum defined by the formula itself, absent for
    indices whose improvement direction is unbounded (infinity is the largest
    value, not the best one). ``baseline`` gives, as a function of N, the
    reference value attained at both extreme partitions, absent for indices
    without such a reference.
    """

    id: str
    direction: Literal["higher-better", "lower-better"]
    best_value: float | None = None
    baseline: Callable[[int], float] | None = None


def _baseline_n(n: int) -> float:
    return float(n)


_DESCRIPTORS: dict[str, IndexDescriptor] = {
    d.id: d
    for d in (
        IndexDescriptor("si_centroid", "lower-better", best_value=1.0, baseline=_baseline_n),
        IndexDescriptor("si_distance", "lower-better", best_value=1.0, baseline=_baseline_n),
        IndexDescriptor("si_hierarchical", "lower-better"),
        IndexDescriptor("ch", "higher-better"),
        IndexDescriptor("silhouette", "higher-better", best_value=1.0),
        IndexDescriptor("sf", "higher-better"),
        IndexDescriptor("dunn", "higher-better"),
        IndexDescriptor("db", "lower-better"),
        IndexDescriptor("cindex", "lower-better", best_value=0.0),
    )
}

_EVALUATORS: dict[str, Callable[[Dataset, Partition], IndexValue]] = {
    "si_centroid": si_centroid,
    "si_distance": lambda d, p: si_distance(DistanceMatrix.from_dataset(d), p),
    "ch": calinski_harabasz,
    "silhouette": silhouette,
    "sf": score_function,
    "dunn": dunn,
    "db": davies_bouldin,
    "cindex": c_index,
}

#: Every registered index id, partition scorers first.
INDEX_IDS: tuple[str, ...] = (
    "si_centroid",
    "si_distance",
    "ch",
    "silhouette",
    "sf",
    "dunn",
    "db",
    "cindex",
    "si_hierarchical",
)

#: Ids that score a (dataset, partition) pair; excludes the hierarchy scorer.
PARTITION_INDEX_IDS: tuple[str, ...] = INDEX_IDS[:-1]


def descriptor(index_id: str) -> IndexDescriptor:
    """Metadata for a registered index id."""
    try:
        return _DESCRIPTORS[index_id]
    except KeyError:
        known = ", ".join(INDEX_IDS)
        raise UnknownIndexError(f"unknown index {index_id!r} (known: {known})") from None


def evaluate(index_id: str, dataset: Dataset, partition: Partition) -> IndexValue:
    """Score a partition with the index named by ``index_id``.

    Returns a finite float or UNDEFINED, never NaN or infinity.
    ``si_hierarchical`` scores dendrograms, not partitions, so it is rejected
    here; use :func:`cluster_simplicity.simplicity.si_hierarchical`.
    """
    if index_id == "si_hierarchical":
        raise UnknownIndexError(
            "si_hierarchical scores a dendrogram, not a partition; "
            "build a curve with si_curve and score it with si_hierarchical"
        )
    try:
        evaluator = _EVALUATORS[index_id]
    except KeyError:
        known = ", ".join(PARTITION_INDEX_IDS)
        raise UnknownIndexError(f"unknown index {index_id!r} (known: {known})") from None
    return evaluator(dataset, partition)
