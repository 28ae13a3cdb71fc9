"""The simplicity index: partition scoring by structural simplicity.

A partition is simple when it has few clusters, tight clusters, and small
clusters. The index multiplies the three ingredients into

    SI = k * (prod_n  size_n ** (radius_n / dataset_radius)) ** (1/k)

where ``k`` is the number of clusters, ``size_n`` the member count of cluster
``n`` and ``radius_n`` its radius. Lower is better; the best possible value is
1 (a single cluster of coincident points) and both extreme partitions of N
distinct points (all singletons, or one all-inclusive cluster) score N, the
reference for the most complex state. When the dataset radius is zero every
exponent is taken as zero, which removes the only division hazard.

Two radius notions are supported: the centroid form uses the mean distance of
members to their cluster centroid (:func:`si_centroid`), the distance-matrix
form uses the mean pairwise distance among members (:func:`si_distance`).
:func:`si_curve` evaluates the index at every level of a dendrogram and
:func:`si_hierarchical` condenses that curve into one score for the whole
tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    UNDEFINED,
    Dataset,
    Dendrogram,
    DistanceMatrix,
    IndexValue,
    Partition,
    radius_centroid,
)


def _check_sizes(n_points: int, partition: Partition) -> None:
    if partition.n_items != n_points:
        raise ValueError(f"partition labels {partition.n_items} items, dataset has {n_points}")


def _si_from_exponents(sizes: np.ndarray, exponents: np.ndarray) -> float:
    # product computed in log space: k * exp(mean(exponent * ln size))
    k = len(sizes)
    log_sum = float(np.dot(exponents, np.log(sizes)))
    return k * math.exp(log_sum / k)


def si_centroid(dataset: Dataset, partition: Partition) -> float:
    """Simplicity index of a partition, centroid-radius form.

    Each cluster's size enters with exponent ``cluster_radius /
    dataset_radius``, where a radius is the mean member-to-centroid distance.
    Always returns a finite value >= 1.
    """
    _check_sizes(dataset.n_points, partition)
    dataset_radius = radius_centroid(dataset.points)
    k = partition.n_clusters
    sizes = np.empty(k)
    exponents = np.zeros(k)
    for label in range(k):
        members = dataset.points[partition.members(label)]
        sizes[label] = len(members)
        if dataset_radius != 0.0:
            exponents[label] = radius_centroid(members) / dataset_radius
    return _si_from_exponents(sizes, exponents)


def si_distance(distances: DistanceMatrix, partition: Partition) -> float:
    """Simplicity index from a pairwise distance matrix.

    Same form as :func:`si_centroid` but the radius of a group is its mean
    pairwise distance (0 for a singleton), and the reference radius is the
    mean over all pairs in the matrix.
    """
    _check_sizes(distances.n_items, partition)
    entries = distances.entries
    n = distances.n_items
    whole_mean = float(entries[np.triu_indices(n, k=1)].mean()) if n > 1 else 0.0
    k = partition.n_clusters
    sizes = np.empty(k)
    exponents = np.zeros(k)
    for label in range(k):
        idx = partition.members(label)
        sizes[label] = len(idx)
        if whole_mean != 0.0 and len(idx) > 1:
            sub = entries[np.ix_(idx, idx)]
            cluster_mean = float(sub[np.triu_indices(len(idx), k=1)].mean())
            exponents[label] = cluster_mean / whole_mean
    return _si_from_exponents(sizes, exponents)


@dataclass(frozen=True)
class SiCurve:
    """Simplicity index sampled along a dendrogram's merge distances.

    One ``(distance, si_value)`` sample per level, in level order, with
    nondecreasing distances. For a dataset of N distinct points the first and
    last samples both equal N.
    """

    samples: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        samples = tuple((float(d), float(v)) for d, v in self.samples)
        if not samples:
            raise ValueError("curve has no samples")
        for i, (d, v) in enumerate(samples):
            if not (math.isfinite(d) and math.isfinite(v)) or d < 0:
                raise ValueError(f"sample {i + 1} must be finite with nonnegative distance, got {(d, v)}")
            if i and d < samples[i - 1][0]:
                raise ValueError(
                    f"curve distances must be nondecreasing: sample {i + 1} has "
                    f"{d} after {samples[i - 1][0]}"
                )
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def distances(self) -> tuple[float, ...]:
        return tuple(d for d, _ in self.samples)

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.samples)

    def minimum(self) -> tuple[int, float]:
        """1-based level of the smallest sample (first on ties) and its value."""
        values = self.values
        level = min(range(len(values)), key=values.__getitem__)
        return level + 1, values[level]


def si_curve(dataset: Dataset, dendrogram: Dendrogram) -> SiCurve:
    """Centroid-form simplicity index at every level of a dendrogram."""
    if dendrogram.n_points != dataset.n_points:
        raise ValueError(
            f"dendrogram covers {dendrogram.n_points} points, dataset has {dataset.n_points}"
        )
    return SiCurve(
        tuple(
            (level.distance, si_centroid(dataset, level.partition))
            for level in dendrogram.levels
        )
    )


def si_hierarchical(curve: SiCurve) -> IndexValue:
    """Score a whole hierarchy from its simplicity curve.

    Trapezoid integral of the curve over its distance span, normalized by
    ``(N - 1) * (last_distance - first_distance)``. UNDEFINED when the span is
    zero (every merge at the same distance, e.g. all points coincident).
    """
    if len(curve) < 2:
        raise ValueError("hierarchy scoring needs at least 2 curve samples")
    d = curve.distances
    v = curve.values
    span = d[-1] - d[0]
    if span == 0.0:
        return UNDEFINED
    area = 0.0
    for i in range(1, len(curve)):
        area += (v[i] + v[i - 1]) * (d[i] - d[i - 1]) / 2.0
    return area / ((len(curve) - 1) * span)
