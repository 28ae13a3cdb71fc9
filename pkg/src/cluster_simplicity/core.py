"""Data model and geometric primitives shared by every index.

Holds the immutable container types (:class:`Dataset`, :class:`Partition`,
:class:`DistanceMatrix`, :class:`Dendrogram`), the distinguished
:data:`UNDEFINED` result, plain Euclidean geometry helpers, the builtin
synthetic benchmark datasets, affine transforms, and a deterministic
single-linkage dendrogram builder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np


class Undefined:
    """Distinguished non-value for an index whose defining denominator is zero.

    A singleton: every construction returns the same object, so results can be
    compared with ``is UNDEFINED``. Arithmetic involving an Undefined operand
    yields Undefined again, so an undefined result can never silently turn
    back into a number.
    """

    __slots__ = ()
    _singleton: "Undefined | None" = None

    def __new__(cls) -> "Undefined":
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self) -> str:
        return "undefined"

    def __bool__(self) -> bool:
        return False

    def _absorb(self, _other: object = None) -> "Undefined":
        return self

    __add__ = __radd__ = _absorb
    __sub__ = __rsub__ = _absorb
    __mul__ = __rmul__ = _absorb
    __truediv__ = __rtruediv__ = _absorb
    __pow__ = __rpow__ = _absorb
    __neg__ = __pos__ = __abs__ = _absorb


UNDEFINED = Undefined()

# A scored index is either a finite float or the UNDEFINED sentinel.
IndexValue = float | Undefined


def is_defined(value: IndexValue) -> bool:
    """True when ``value`` is an actual number rather than UNDEFINED."""
    return not isinstance(value, Undefined)


def _as_points(points: object) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise ValueError(f"points must be a 2-D array of shape (n, dim), got shape {pts.shape}")
    if pts.shape[0] == 0:
        raise ValueError("point set is empty")
    if not np.all(np.isfinite(pts)):
        raise ValueError("points contain non-finite coordinates")
    return pts


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = arr.copy()
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Dataset:
    """An ordered set of real-valued points of uniform dimension.

    ``points`` is coerced to a read-only float64 array of shape
    ``(n_points, dim)``; duplicate points are allowed.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", _readonly(_as_points(self.points)))

    @property
    def n_points(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


@dataclass(frozen=True, eq=False)
class Partition:
    """Assignment of every point index to exactly one cluster label.

    Labels must be the contiguous integers ``0 .. k-1`` with every label
    occurring at least once; a gap would denote an empty cluster.
    """

    labels: np.ndarray

    def __post_init__(self) -> None:
        labels = np.asarray(self.labels)
        if labels.ndim != 1 or labels.size == 0:
            raise ValueError("labels must be a non-empty 1-D sequence")
        if not np.issubdtype(labels.dtype, np.integer):
            as_int = labels.astype(int)
            if labels.dtype != object and not np.array_equal(as_int, labels):
                raise ValueError("labels must be integers")
            labels = as_int
        labels = labels.astype(int)
        if labels.min() < 0:
            raise ValueError(f"cluster labels must be nonnegative, got {labels.min()}")
        k = int(labels.max()) + 1
        counts = np.bincount(labels, minlength=k)
        missing = np.flatnonzero(counts == 0)
        if missing.size:
            raise ValueError(f"cluster label {missing[0]} has no members (labels must cover 0..{k - 1})")
        object.__setattr__(self, "labels", _readonly(labels))

    @property
    def n_items(self) -> int:
        return self.labels.shape[0]

    @property
    def n_clusters(self) -> int:
        return int(self.labels.max()) + 1

    def cluster_sizes(self) -> np.ndarray:
        """Member count of each cluster, indexed by label."""
        return np.bincount(self.labels, minlength=self.n_clusters)

    def members(self, label: int) -> np.ndarray:
        """Point indices belonging to cluster ``label``."""
        return np.flatnonzero(self.labels == label)


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    """Symmetric nonnegative N x N matrix of pairwise distances, zero diagonal."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"distance matrix must be square, got shape {entries.shape}")
        if not np.all(np.isfinite(entries)):
            raise ValueError("distance matrix contains non-finite entries")
        if np.any(entries < 0):
            raise ValueError("distance matrix contains negative entries")
        if np.any(np.diag(entries) != 0):
            raise ValueError("distance matrix diagonal must be zero")
        if not np.array_equal(entries, entries.T):
            raise ValueError("distance matrix must be symmetric")
        object.__setattr__(self, "entries", _readonly(entries))

    @property
    def n_items(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def from_dataset(cls, dataset: Dataset) -> "DistanceMatrix":
        return cls(pairwise_distances(dataset.points))


class DendrogramLevel(NamedTuple):
    """One level of an agglomerative merge sequence."""

    distance: float
    partition: Partition


@dataclass(frozen=True, eq=False)
class Dendrogram:
    """Ordered merge sequence from N singleton clusters down to one cluster.

    Level ``i`` (1-based) holds the partition into ``N - i + 1`` clusters and
    the distance at which it was formed; level 1 is all singletons at
    distance 0 and level N is the single all-inclusive cluster. Distances are
    nondecreasing and each level coarsens the one before it.
    """

    levels: tuple[DendrogramLevel, ...]

    def __post_init__(self) -> None:
        levels = tuple(DendrogramLevel(float(d), p) for d, p in self.levels)
        if not levels:
            raise ValueError("dendrogram has no levels")
        n = levels[0].partition.n_items
        if len(levels) != n:
            raise ValueError(f"expected {n} levels for {n} points, got {len(levels)}")
        for i, (distance, partition) in enumerate(levels):
            if partition.n_items != n:
                raise ValueError(f"level {i + 1} partitions {partition.n_items} items, expected {n}")
            if partition.n_clusters != n - i:
                raise ValueError(f"level {i + 1} must have {n - i} clusters, got {partition.n_clusters}")
            if not np.isfinite(distance) or distance < 0:
                raise ValueError(f"level {i + 1} merge distance must be finite and nonnegative, got {distance}")
            if i and distance < levels[i - 1].distance:
                raise ValueError(
                    f"merge distances must be nondecreasing: level {i + 1} has "
                    f"{distance} after {levels[i - 1].distance}"
                )
            if i and not _is_coarsening(levels[i - 1].partition, partition):
                raise ValueError(f"level {i + 1} is not a coarsening of level {i}")
        object.__setattr__(self, "levels", levels)

    @property
    def n_points(self) -> int:
        return self.levels[0].partition.n_items


def _is_coarsening(fine: Partition, coarse: Partition) -> bool:
    mapping: dict[int, int] = {}
    for fine_label, coarse_label in zip(fine.labels, coarse.labels):
        seen = mapping.setdefault(int(fine_label), int(coarse_label))
        if seen != coarse_label:
            return False
    return True


def euclidean_distance(a: Sequence[float], b: Sequence[float]) -> float:
    """L2 distance between two points of equal dimension."""
    av = np.asarray(a, dtype=float)
    bv = np.asarray(b, dtype=float)
    if av.shape != bv.shape:
        raise ValueError(f"dimension mismatch: {av.shape} vs {bv.shape}")
    return float(np.linalg.norm(av - bv))


def centroid(points: object) -> np.ndarray:
    """Coordinate-wise arithmetic mean of a nonempty point set."""
    return _as_points(points).mean(axis=0)


def radius_centroid(points: object) -> float:
    """Mean distance from the centroid to each member.

    Zero for a singleton or a set of coincident points.
    """
    pts = _as_points(points)
    return float(np.linalg.norm(pts - pts.mean(axis=0), axis=1).mean())


def mean_pairwise_distance(points: object) -> float:
    """Mean distance over all unordered point pairs; 0 for a singleton."""
    pts = _as_points(points)
    n = pts.shape[0]
    if n < 2:
        return 0.0
    dm = pairwise_distances(pts)
    return float(dm[np.triu_indices(n, k=1)].mean())


def diameter(points: object) -> float:
    """Largest pairwise distance within a point set; 0 for a singleton."""
    pts = _as_points(points)
    if pts.shape[0] < 2:
        return 0.0
    return float(pairwise_distances(pts).max())


def pairwise_distances(points: object) -> np.ndarray:
    """Full square matrix of Euclidean distances between rows of ``points``."""
    pts = _as_points(points)
    diff = pts[:, None, :] - pts[None, :, :]
    dm = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    # exact symmetry and zero diagonal regardless of rounding
    dm = np.maximum(dm, dm.T)
    np.fill_diagonal(dm, 0.0)
    return dm


def scale_dataset(dataset: Dataset, factor: float) -> Dataset:
    """Multiply every coordinate by ``factor`` (nonzero; 0 would collapse the data)."""
    if factor == 0:
        raise ValueError("scale factor must be nonzero")
    return Dataset(dataset.points * float(factor))


def shift_dataset(dataset: Dataset, offset: float) -> Dataset:
    """Add ``offset`` to every coordinate of every point."""
    return Dataset(dataset.points + float(offset))


# Benchmark coordinates: three unit-basis points plus scaled copies, and a
# coincident triple for the degenerate cases.
_BASIS = {
    1: (0.0, 0.0, 1.0),
    2: (0.0, 1.0, 0.0),
    3: (1.0, 0.0, 0.0),
    4: (0.0, 0.0, 2.0),
    5: (0.0, 2.0, 0.0),
    6: (2.0, 0.0, 0.0),
    7: (0.0, 0.0, 3.0),
    8: (0.0, 3.0, 0.0),
    9: (3.0, 0.0, 0.0),
}

_SYNTHETIC: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {
    # id -> (point ids, labels)
    "X1S": ((1, 2, 3), (0, 0, 0)),
    "X2S": ((1, 2, 3), (0, 1, 1)),
    "X3S": ((1, 2, 3), (0, 1, 2)),
    "Y1S": ((1, 1, 1), (0, 0, 0)),
    "Y2S": ((1, 1, 1), (0, 0, 1)),
    "X1L": ((1, 2, 3, 4, 5, 6, 7, 8, 9), (0,) * 9),
    "X2L": ((1, 2, 3, 4, 5, 6, 7, 8, 9), (0, 0, 0, 1, 1, 1, 1, 1, 1)),
    "X9L": ((1, 2, 3, 4, 5, 6, 7, 8, 9), tuple(range(9))),
    "Y1L": ((1, 1, 1, 1, 1, 1), (0,) * 6),
    "Y2L": ((1, 1, 1, 1, 1, 1), (0, 0, 0, 1, 1, 1)),
}

SYNTHETIC_DATASET_IDS: tuple[str, ...] = tuple(_SYNTHETIC)


def synthetic_dataset(dataset_id: str) -> tuple[Dataset, Partition]:
    """Return one of the builtin benchmark datasets with its partition.

    X-datasets hold distinct points, Y-datasets coincident ones; the digit in
    the id is the number of clusters, the trailing letter the size variant
    (S = 3 points, L = 6 or 9 points).
    """
    try:
        point_ids, labels = _SYNTHETIC[dataset_id]
    except KeyError:
        known = ", ".join(SYNTHETIC_DATASET_IDS)
        raise ValueError(f"unknown synthetic dataset {dataset_id!r} (known: {known})") from None
    points = np.array([_BASIS[i] for i in point_ids])
    return Dataset(points), Partition(np.array(labels))


def dendrogram_from_merges(
    n_points: int, merges: Iterable[tuple[int, int, float]]
) -> Dendrogram:
    """Build a Dendrogram from an agglomerative merge sequence.

    ``merges`` lists ``n_points - 1`` rows ``(left, right, distance)`` under
    the usual linkage-matrix id convention: ids ``0 .. n_points-1`` are the
    original points and merge row ``r`` creates cluster id ``n_points + r``.
    Raises ValueError naming the offending row for ids that are out of range
    or merged twice, and for decreasing distances.
    """
    merges = list(merges)
    if n_points < 1:
        raise ValueError("n_points must be at least 1")
    if len(merges) != n_points - 1:
        raise ValueError(f"expected {n_points - 1} merges for {n_points} points, got {len(merges)}")

    member_lists: dict[int, list[int]] = {i: [i] for i in range(n_points)}
    active = set(range(n_points))
    levels = [DendrogramLevel(0.0, _partition_from_members(n_points, member_lists, active))]
    previous = 0.0
    for row, (left, right, distance) in enumerate(merges):
        limit = n_points + row
        for cid in (left, right):
            if not 0 <= cid < limit:
                raise ValueError(f"merge row {row + 1}: cluster id {cid} out of range 0..{limit - 1}")
            if cid not in active:
                raise ValueError(f"merge row {row + 1}: cluster id {cid} already merged")
        if left == right:
            raise ValueError(f"merge row {row + 1}: cannot merge cluster {left} with itself")
        if not np.isfinite(distance) or distance < 0:
            raise ValueError(f"merge row {row + 1}: distance must be finite and nonnegative, got {distance}")
        if distance < previous:
            raise ValueError(
                f"merge row {row + 1}: distance {distance} decreases below previous {previous}"
            )
        previous = distance
        new_id = n_points + row
        member_lists[new_id] = member_lists.pop(left) + member_lists.pop(right)
        active.discard(left)
        active.discard(right)
        active.add(new_id)
        levels.append(DendrogramLevel(float(distance), _partition_from_members(n_points, member_lists, active)))
    return Dendrogram(tuple(levels))


def _partition_from_members(
    n_points: int, member_lists: dict[int, list[int]], active: set[int]
) -> Partition:
    # canonical labels: clusters numbered by their smallest point index
    labels = np.empty(n_points, dtype=int)
    ordered = sorted((min(member_lists[cid]), cid) for cid in active)
    for label, (_, cid) in enumerate(ordered):
        labels[member_lists[cid]] = label
    return Partition(labels)


def single_linkage(dataset: Dataset) -> Dendrogram:
    """Agglomerative single-linkage dendrogram over a dataset of >= 2 points.

    Merges the closest pair of clusters under minimum inter-cluster distance;
    ties go to the lexicographically smallest pair of cluster ids, which makes
    the result deterministic.
    """
    n = dataset.n_points
    if n < 2:
        raise ValueError("single linkage needs at least 2 points")

    total = 2 * n - 1
    dist = np.full((total, total), np.inf)
    dist[:n, :n] = pairwise_distances(dataset.points)
    active = list(range(n))  # kept sorted; new ids are always largest
    merges: list[tuple[int, int, float]] = []
    for step in range(n - 1):
        block = dist[np.ix_(active, active)]
        block[np.tril_indices(len(active))] = np.inf
        flat = int(np.argmin(block))  # first minimum = smallest (i, j) pair
        i, j = divmod(flat, len(active))
        left, right = active[i], active[j]
        merged_dist = float(block[i, j])

        new_id = n + step
        rest = [c for c in active if c != left and c != right]
        dist[new_id, rest] = np.minimum(dist[left, rest], dist[right, rest])
        dist[rest, new_id] = dist[new_id, rest]
        merges.append((left, right, merged_dist))
        active = rest + [new_id]
    return dendrogram_from_merges(n, merges)
