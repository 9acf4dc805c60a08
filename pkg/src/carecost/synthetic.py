"""Synthetic inpatient-cost datasets with planted tree structure.

The generator draws feature values uniformly and computes the cost target
from a planted regression tree over a declared set of informative features,
plus optional Gaussian noise. The planted tree is returned alongside the
dataset so tests can check recovery against ground truth.

The planted tree is a balanced depth-d tree: level i splits the i-th
informative feature at the midpoint of its value range, and leaf values are
base_cost plus a sum of per-level effects that shrink by 3x per level, so
all 2^d leaves are distinct and shallower trees cannot interpolate it.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .schema import CATEGORICAL, NUMERIC, FeatureSchema, FeatureSpec
from .trees import LEAF, RegressionTree


@dataclass(frozen=True)
class SyntheticFeature:
    """A generated feature taking integer values 1..levels (codes for
    categoricals, raw day-like values for numerics)."""

    name: str
    kind: str = CATEGORICAL
    levels: int = 8

    def __post_init__(self):
        if self.levels < 2:
            raise ValueError(f"feature {self.name!r} needs at least 2 levels")


@dataclass(frozen=True)
class SyntheticSpec:
    """Planted-structure description for generate_synthetic."""

    features: tuple[SyntheticFeature, ...]
    informative: tuple[str, ...]
    depth: int
    noise_sigma: float = 0.0
    base_cost: float = 8000.0
    effect_scale: float = 8000.0

    def __post_init__(self):
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise ValueError("duplicate synthetic feature names")
        unknown = set(self.informative) - set(names)
        if unknown:
            raise ValueError(f"informative features not declared: {sorted(unknown)}")
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if self.depth > len(self.informative):
            raise ValueError("planted depth cannot exceed the informative feature count")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")
        if self.base_cost <= 0 or self.effect_scale <= 0:
            raise ValueError("base_cost and effect_scale must be positive")


@dataclass(frozen=True, eq=False)
class SyntheticData:
    """Generated dataset plus the retrievable ground truth."""

    dataset: Dataset
    truth: RegressionTree
    spec: SyntheticSpec

    def planted_values(self, ds: Dataset | None = None) -> np.ndarray:
        """Evaluate the planted cost function on a dataset's rows."""
        target_ds = self.dataset if ds is None else ds
        return self.truth.predict(target_ds.feature_matrix())


def _planted_tree(spec: SyntheticSpec, feature_index: dict[str, int],
                  levels: dict[str, int]) -> RegressionTree:
    """Build the planted function as an explicit RegressionTree."""
    feature, threshold, left, right, value, count, gain = [], [], [], [], [], [], []

    def build(depth: int, acc: float) -> int:
        nid = len(feature)
        if depth == spec.depth:
            feature.append(LEAF)
            threshold.append(np.nan)
            left.append(LEAF)
            right.append(LEAF)
            value.append(spec.base_cost + acc)
            count.append(0)
            gain.append(0.0)
            return nid
        name = spec.informative[depth]
        feature.append(feature_index[name])
        threshold.append((levels[name] + 1) / 2.0)  # midpoint of codes 1..levels
        left.append(LEAF)
        right.append(LEAF)
        value.append(np.nan)
        count.append(0)
        gain.append(0.0)
        effect = spec.effect_scale / (3.0**depth)
        lid = build(depth + 1, acc)
        rid = build(depth + 1, acc + effect)
        left[nid] = lid
        right[nid] = rid
        return nid

    build(0, 0.0)
    return RegressionTree(
        feature=np.asarray(feature, dtype=np.int32),
        threshold=np.asarray(threshold),
        left=np.asarray(left, dtype=np.int32),
        right=np.asarray(right, dtype=np.int32),
        value=np.asarray(value),
        count=np.asarray(count, dtype=np.int32),
        gain=np.asarray(gain),
        max_depth=spec.depth,
        n_features=len(spec.features),
    )


def generate_synthetic(spec: SyntheticSpec, n: int, seed: int) -> SyntheticData:
    """Draw n rows with uniform feature values and target = planted(x) + noise.

    Deterministic per (spec, n, seed). With noise_sigma == 0 the target
    equals the planted function exactly. Costs never go negative; rare
    large noise draws are clipped at zero.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    rng = np.random.default_rng(seed)

    specs = []
    columns = []
    for f in spec.features:
        draws = rng.integers(1, f.levels + 1, size=n)
        if f.kind == CATEGORICAL:
            vocab = tuple(f"L{i:03d}" for i in range(1, f.levels + 1))
            specs.append(FeatureSpec(f.name, CATEGORICAL, vocab))
            columns.append(draws.astype(np.int32))
        else:
            specs.append(FeatureSpec(f.name, NUMERIC))
            columns.append(draws.astype(np.float64))

    schema = FeatureSchema(features=tuple(specs), target_name="Total Costs")
    feature_index = {f.name: i for i, f in enumerate(spec.features)}
    levels = {f.name: f.levels for f in spec.features}
    truth = _planted_tree(spec, feature_index, levels)

    matrix = np.column_stack([c.astype(np.float64) for c in columns])
    target = truth.predict(matrix)
    if spec.noise_sigma > 0:
        target = np.maximum(target + spec.noise_sigma * rng.standard_normal(n), 0.0)

    dataset = Dataset(schema=schema, columns=tuple(columns), target=target)
    return SyntheticData(dataset=dataset, truth=truth, spec=spec)


def default_synthetic_spec(
    n_noise: int = 6,
    depth: int = 2,
    noise_sigma: float = 0.0,
    levels: int = 8,
) -> SyntheticSpec:
    """Two informative features (diagnosis-like and severity-like) plus
    n_noise uninformative ones; handy for tests and demos."""
    informative = (
        SyntheticFeature("CCS Diagnosis Code", CATEGORICAL, levels),
        SyntheticFeature("APR Severity of Illness Code", CATEGORICAL, levels),
    )
    noise = tuple(
        SyntheticFeature(f"Noise Feature {i:02d}", CATEGORICAL, levels) for i in range(n_noise)
    )
    informative_names = tuple(f.name for f in informative)[: max(depth, 1)]
    return SyntheticSpec(
        features=informative + noise,
        informative=informative_names,
        depth=depth,
        noise_sigma=noise_sigma,
    )
