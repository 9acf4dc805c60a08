"""Feature importance: chi-square, mutual information, boosted-tree gain.

Chi-square and mutual information need a discrete target, so the continuous
cost is cut into quantile bins (deciles by default), which keeps the heavy
right tail of cost data from collapsing into one cell. Numeric features are
quantile-binned the same way for these two measures; trees consume them raw.

Mutual information is reported in nats. Score ties break by schema feature
order, so rankings are fully deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .schema import CATEGORICAL
from .trees import fit_gbt, gain_importance
from .util import dump_json


@dataclass(frozen=True)
class RankConfig:
    """Knobs for the three importance measures and the union selection."""

    top_k: int = 5
    target_bins: int = 10
    numeric_bins: int = 10
    gbt_trees: int = 50
    gbt_learning_rate: float = 0.1
    gbt_depth: int = 3
    gbt_min_leaf: int = 1

    def __post_init__(self):
        if self.top_k < 1 or self.target_bins < 1 or self.numeric_bins < 1:
            raise ValueError("top_k and bin counts must be positive")


def quantile_bins(values, bins: int) -> np.ndarray:
    """Discretize into quantile bins; returns int codes in [0, bins)."""
    v = np.asarray(values, dtype=np.float64)
    edges = np.quantile(v, np.linspace(0.0, 1.0, bins + 1)[1:-1])
    edges = np.unique(edges)
    return np.searchsorted(edges, v, side="right").astype(np.int64)


def contingency(a_codes, b_codes) -> np.ndarray:
    """Joint count table of two integer code vectors, empty rows/cols dropped."""
    a = np.asarray(a_codes, dtype=np.int64)
    b = np.asarray(b_codes, dtype=np.int64)
    if a.shape != b.shape:
        raise ValueError("code vectors must have equal length")
    na = int(a.max()) + 1 if a.size else 0
    nb = int(b.max()) + 1 if b.size else 0
    table = np.bincount(a * nb + b, minlength=na * nb).reshape(na, nb)
    table = table[table.sum(axis=1) > 0][:, table.sum(axis=0) > 0]
    return table.astype(np.float64)


def chi_square(table: np.ndarray) -> float:
    """Pearson chi-square statistic sum((O-E)^2/E); 0 for degenerate tables."""
    if table.shape[0] < 2 or table.shape[1] < 2:
        return 0.0
    n = table.sum()
    expected = np.outer(table.sum(axis=1), table.sum(axis=0)) / n
    return float(((table - expected) ** 2 / expected).sum())


def mutual_information(table: np.ndarray) -> float:
    """I(X;Y) in nats over the empirical joint; zero-count cells contribute 0."""
    n = table.sum()
    if n == 0:
        return 0.0
    joint = table / n
    px = joint.sum(axis=1, keepdims=True)
    py = joint.sum(axis=0, keepdims=True)
    mask = joint > 0
    ratio = joint[mask] / (px @ py)[mask]
    return float((joint[mask] * np.log(ratio)).sum())


def _binned_feature_codes(ds: Dataset, cfg: RankConfig) -> list[np.ndarray]:
    codes = []
    for spec, col in zip(ds.schema.features, ds.columns):
        if spec.kind == CATEGORICAL:
            codes.append(col.astype(np.int64))
        else:
            codes.append(quantile_bins(col, cfg.numeric_bins))
    return codes


def chi_square_scores(ds: Dataset, cfg: RankConfig = RankConfig()) -> np.ndarray:
    """Chi-square of each feature against the quantile-binned target."""
    target_codes = quantile_bins(ds.target, cfg.target_bins)
    return np.array(
        [chi_square(contingency(codes, target_codes)) for codes in _binned_feature_codes(ds, cfg)]
    )


def mutual_information_scores(ds: Dataset, cfg: RankConfig = RankConfig()) -> np.ndarray:
    """Mutual information (nats) of each feature with the binned target."""
    target_codes = quantile_bins(ds.target, cfg.target_bins)
    return np.array(
        [
            mutual_information(contingency(codes, target_codes))
            for codes in _binned_feature_codes(ds, cfg)
        ]
    )


def gbt_importance_scores(ds: Dataset, cfg: RankConfig = RankConfig()) -> np.ndarray:
    """Normalized total-gain importance from a gradient-boosted ensemble."""
    ensemble = fit_gbt(
        ds.feature_matrix(),
        ds.target,
        n_trees=cfg.gbt_trees,
        learning_rate=cfg.gbt_learning_rate,
        max_depth=cfg.gbt_depth,
        min_leaf=cfg.gbt_min_leaf,
    )
    return gain_importance(ensemble)


def top_k_features(scores, names, k: int) -> list[str]:
    """Names of the k highest scores; ties keep the earlier schema position."""
    order = sorted(range(len(names)), key=lambda i: (-float(scores[i]), i))
    return [names[i] for i in order[:k]]


@dataclass(eq=False)
class RankingReport:
    """Scores and top-k lists per measure, plus the union selection."""

    feature_names: list
    chi_square: np.ndarray
    mutual_information: np.ndarray
    gbt_gain: np.ndarray
    top_chi_square: list
    top_mutual_information: list
    top_gbt_gain: list
    selected: list
    top_k: int

    def to_json_dict(self) -> dict:
        return {
            "feature_names": self.feature_names,
            "scores": {
                "chi_square": [float(v) for v in self.chi_square],
                "mutual_information": [float(v) for v in self.mutual_information],
                "gbt_gain": [float(v) for v in self.gbt_gain],
            },
            "top_k": self.top_k,
            "top_features": {
                "chi_square": self.top_chi_square,
                "mutual_information": self.top_mutual_information,
                "gbt_gain": self.top_gbt_gain,
            },
            "selected": self.selected,
        }

    def to_json(self) -> str:
        return dump_json(self.to_json_dict())


def select_union(score_vectors, names, top_k: int) -> list[str]:
    """Union of each measure's top-k features, ordered by schema position."""
    union = set()
    for scores in score_vectors:
        union.update(top_k_features(scores, names, top_k))
    return [name for name in names if name in union]


def rank_features(ds: Dataset, cfg: RankConfig = RankConfig()) -> RankingReport:
    """Run all three measures and select the union of their top-k lists."""
    if cfg.top_k > len(ds.schema.features):
        raise ValueError("top_k exceeds the feature count")
    names = ds.schema.feature_names
    chi = chi_square_scores(ds, cfg)
    mi = mutual_information_scores(ds, cfg)
    gain = gbt_importance_scores(ds, cfg)
    return RankingReport(
        feature_names=names,
        chi_square=chi,
        mutual_information=mi,
        gbt_gain=gain,
        top_chi_square=top_k_features(chi, names, cfg.top_k),
        top_mutual_information=top_k_features(mi, names, cfg.top_k),
        top_gbt_gain=top_k_features(gain, names, cfg.top_k),
        selected=select_union([chi, mi, gain], names, cfg.top_k),
        top_k=cfg.top_k,
    )
