"""Mechanized audit of the desirable index properties.

Probes an index on the builtin benchmark datasets and condenses the outcome
into three flags:

* invariance ``S`` / ``s``: the value on the two-cluster X dataset survives
  scalar rescaling and constant shifting (``S`` = both, ``s`` = exactly one);
* optimality ``B`` / ``b``: the index attains its declared best value when
  coincident points share one cluster (``b``), and additionally rates any
  split of those points strictly worse (``B``);
* baseline ``C``: the declared reference value is attained at both extreme
  partitions (one big cluster, and one cluster per point).

An UNDEFINED probe can never silently pass: two UNDEFINEDs count as equal for
the invariance comparison (both transforms degenerate identically) but fail
the best-value and baseline checks, and every undefined probe is recorded on
the audit detail.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classic import PARTITION_INDEX_IDS, descriptor, evaluate
from .core import IndexValue, is_defined, scale_dataset, shift_dataset, synthetic_dataset

SCALE_FACTORS: tuple[float, ...] = (0.5, 2.0, 10.0)
SHIFT_OFFSETS: tuple[float, ...] = (-5.0, 1.0, 100.0)
RELATIVE_TOLERANCE = 1e-9

_VARIANTS = {
    "short": {"X2": "X2S", "Y1": "Y1S", "Y2": "Y2S", "X1": "X1S", "Xmax": "X3S"},
    "long": {"X2": "X2L", "Y1": "Y1L", "Y2": "Y2L", "X1": "X1L", "Xmax": "X9L"},
}


def values_equal(value: IndexValue, reference: IndexValue, rel_tol: float = RELATIVE_TOLERANCE) -> bool:
    """Equality with UNDEFINED equal only to UNDEFINED.

    Finite values compare within ``rel_tol * max(1, |reference|)``.
    """
    if not is_defined(value) or not is_defined(reference):
        return not is_defined(value) and not is_defined(reference)
    return abs(value - reference) <= rel_tol * max(1.0, abs(reference))


@dataclass(frozen=True)
class AuditDetail:
    """The six per-evaluation booleans behind a flag row."""

    scale_ok: bool
    shift_ok: bool
    is_best_at_y1: bool
    y2_worse_than_y1: bool
    baseline_at_x1: bool
    baseline_at_xmax: bool


@dataclass(frozen=True)
class PropertyFlags:
    """Audit outcome for one index on one dataset variant.

    Flag fields hold ``"S"``/``"s"``, ``"B"``/``"b"``, ``"C"`` or ``"none"``.
    ``undefined_probes`` names every probe whose value came back UNDEFINED.
    """

    index_id: str
    variant: str
    invariance: str
    optimality: str
    baseline: str
    detail: AuditDetail
    undefined_probes: tuple[str, ...]

    def flags_string(self) -> str:
        parts = [f for f in (self.invariance, self.optimality, self.baseline) if f != "none"]
        return " ".join(parts) if parts else "none"


def _variant_datasets(variant: str) -> dict[str, str]:
    try:
        return _VARIANTS[variant]
    except KeyError:
        raise ValueError(f"unknown variant {variant!r} (expected 'short' or 'long')") from None


def check_invariance(index_id: str, variant: str = "short") -> tuple[bool, bool]:
    """(scale_ok, shift_ok) for the index on the variant's two-cluster dataset."""
    ids = _variant_datasets(variant)
    dataset, partition = synthetic_dataset(ids["X2"])
    reference = evaluate(index_id, dataset, partition)
    scale_ok = all(
        values_equal(evaluate(index_id, scale_dataset(dataset, a), partition), reference)
        for a in SCALE_FACTORS
    )
    shift_ok = all(
        values_equal(evaluate(index_id, shift_dataset(dataset, b), partition), reference)
        for b in SHIFT_OFFSETS
    )
    return scale_ok, shift_ok


def check_optimality(index_id: str, variant: str = "short") -> tuple[bool, bool]:
    """(is_best, split_worse) on the variant's coincident-point datasets.

    ``is_best`` requires a declared best value attained on the one-cluster
    dataset; ``split_worse`` requires the split dataset to score strictly
    worse in the index's direction. UNDEFINED on either side fails the
    affected check (an undefined score is not comparable).
    """
    ids = _variant_datasets(variant)
    meta = descriptor(index_id)
    y1_value = evaluate(index_id, *synthetic_dataset(ids["Y1"]))
    y2_value = evaluate(index_id, *synthetic_dataset(ids["Y2"]))
    is_best = meta.best_value is not None and values_equal(y1_value, meta.best_value)
    if not is_defined(y1_value) or not is_defined(y2_value):
        split_worse = False
    elif meta.direction == "lower-better":
        split_worse = y2_value > y1_value
    else:
        split_worse = y2_value < y1_value
    return is_best, split_worse


def check_baseline(index_id: str, variant: str = "short") -> tuple[bool, bool]:
    """(at_x1, at_xmax): declared baseline attained at both extreme partitions."""
    ids = _variant_datasets(variant)
    meta = descriptor(index_id)
    if meta.baseline is None:
        return False, False
    x1_data, x1_part = synthetic_dataset(ids["X1"])
    xmax_data, xmax_part = synthetic_dataset(ids["Xmax"])
    at_x1 = values_equal(evaluate(index_id, x1_data, x1_part), meta.baseline(x1_data.n_points))
    at_xmax = values_equal(evaluate(index_id, xmax_data, xmax_part), meta.baseline(xmax_data.n_points))
    return at_x1, at_xmax


def _undefined_probes(index_id: str, variant: str) -> tuple[str, ...]:
    ids = _variant_datasets(variant)
    dataset, partition = synthetic_dataset(ids["X2"])
    probes: list[tuple[str, IndexValue]] = [("X2", evaluate(index_id, dataset, partition))]
    probes += [
        (f"X2*{a:g}", evaluate(index_id, scale_dataset(dataset, a), partition))
        for a in SCALE_FACTORS
    ]
    probes += [
        (f"X2{b:+g}", evaluate(index_id, shift_dataset(dataset, b), partition))
        for b in SHIFT_OFFSETS
    ]
    for name in ("Y1", "Y2", "X1", "Xmax"):
        probes.append((name, evaluate(index_id, *synthetic_dataset(ids[name]))))
    return tuple(name for name, value in probes if not is_defined(value))


def audit(index_id: str, variant: str = "short") -> PropertyFlags:
    """Run all five evaluations for one index and compose its flag row."""
    scale_ok, shift_ok = check_invariance(index_id, variant)
    is_best, split_worse = check_optimality(index_id, variant)
    at_x1, at_xmax = check_baseline(index_id, variant)

    if scale_ok and shift_ok:
        invariance = "S"
    elif scale_ok or shift_ok:
        invariance = "s"
    else:
        invariance = "none"
    if is_best and split_worse:
        optimality = "B"
    elif is_best:
        optimality = "b"
    else:
        optimality = "none"
    baseline = "C" if at_x1 and at_xmax else "none"

    return PropertyFlags(
        index_id=index_id,
        variant=variant,
        invariance=invariance,
        optimality=optimality,
        baseline=baseline,
        detail=AuditDetail(
            scale_ok=scale_ok,
            shift_ok=shift_ok,
            is_best_at_y1=is_best,
            y2_worse_than_y1=split_worse,
            baseline_at_x1=at_x1,
            baseline_at_xmax=at_xmax,
        ),
        undefined_probes=_undefined_probes(index_id, variant),
    )


def audit_all(index_ids: tuple[str, ...] | list[str] | None = None) -> list[PropertyFlags]:
    """Flag rows for the given ids (default: every partition index)."""
    ids = PARTITION_INDEX_IDS if index_ids is None else tuple(index_ids)
    return [audit(index_id) for index_id in ids]
