"""CART regression trees and squared-loss gradient boosting.

Splits are exact greedy: at every node all (feature, threshold) candidates
are scored by SSE reduction, where thresholds are midpoints between
consecutive distinct sorted feature values. Ties break toward the lowest
feature index, then the lowest threshold, so fits are deterministic.

Categorical features are consumed through their ordinal codes with
threshold splits. This approximates true subset splits but keeps split
search exact and fast on label-encoded data.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Split gains below this fraction of the node SSE are treated as zero so
# recursion stops on numerical noise.
GAIN_TOL = 1e-12

LEAF = -1


@dataclass(eq=False)
class RegressionTree:
    """Array-of-nodes binary regression tree. Node 0 is the root.

    Internal nodes carry (feature, threshold, left, right, gain); leaves have
    feature == -1 and carry the mean training target as their prediction.
    ``value`` holds the node mean everywhere, ``count`` the training rows.
    """

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray
    count: np.ndarray
    gain: np.ndarray
    max_depth: int
    n_features: int

    @property
    def node_count(self) -> int:
        return self.feature.shape[0]

    @property
    def leaf_count(self) -> int:
        return int((self.feature == LEAF).sum())

    def depth(self) -> int:
        depths = np.zeros(self.node_count, dtype=np.int32)
        out = 0
        for nid in range(self.node_count):
            if self.feature[nid] != LEAF:
                depths[self.left[nid]] = depths[nid] + 1
                depths[self.right[nid]] = depths[nid] + 1
            else:
                out = max(out, int(depths[nid]))
        return out

    def predict(self, X) -> np.ndarray:
        """Predict a batch of rows (2D array, schema feature order)."""
        X = np.asarray(X, dtype=np.float64)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError(f"expected (n, {self.n_features}) inputs, got {X.shape}")
        out = np.empty(X.shape[0])
        stack = [(0, np.arange(X.shape[0]))]
        while stack:
            nid, rows = stack.pop()
            if self.feature[nid] == LEAF:
                out[rows] = self.value[nid]
                continue
            go_left = X[rows, self.feature[nid]] <= self.threshold[nid]
            stack.append((int(self.left[nid]), rows[go_left]))
            stack.append((int(self.right[nid]), rows[~go_left]))
        return out

    def to_json_dict(self) -> dict:
        nodes = []
        for i in range(self.node_count):
            if self.feature[i] == LEAF:
                nodes.append({"value": float(self.value[i]), "count": int(self.count[i])})
            else:
                nodes.append(
                    {
                        "feature": int(self.feature[i]),
                        "threshold": float(self.threshold[i]),
                        "left": int(self.left[i]),
                        "right": int(self.right[i]),
                        "value": float(self.value[i]),
                        "count": int(self.count[i]),
                        "gain": float(self.gain[i]),
                    }
                )
        return {"max_depth": self.max_depth, "n_features": self.n_features, "nodes": nodes}

    @classmethod
    def from_json_dict(cls, doc: dict) -> "RegressionTree":
        nodes = doc["nodes"]
        k = len(nodes)
        feature = np.full(k, LEAF, dtype=np.int32)
        threshold = np.full(k, np.nan)
        left = np.full(k, LEAF, dtype=np.int32)
        right = np.full(k, LEAF, dtype=np.int32)
        value = np.zeros(k)
        count = np.zeros(k, dtype=np.int32)
        gain = np.zeros(k)
        for i, node in enumerate(nodes):
            value[i] = node["value"]
            count[i] = node["count"]
            if "feature" in node:
                feature[i] = node["feature"]
                threshold[i] = node["threshold"]
                left[i] = node["left"]
                right[i] = node["right"]
                gain[i] = node.get("gain", 0.0)
        return cls(feature, threshold, left, right, value, count, gain,
                   max_depth=doc["max_depth"], n_features=doc["n_features"])


def predict_tree(tree: RegressionTree, row) -> float:
    """Route a single row down the tree: value <= threshold goes left."""
    row = np.asarray(row, dtype=np.float64)
    if row.shape != (tree.n_features,):
        raise ValueError(f"expected {tree.n_features} feature values, got shape {row.shape}")
    nid = 0
    while tree.feature[nid] != LEAF:
        if row[tree.feature[nid]] <= tree.threshold[nid]:
            nid = int(tree.left[nid])
        else:
            nid = int(tree.right[nid])
    return float(tree.value[nid])


def _best_split(X, y, idx, node_sse, min_leaf):
    """Exhaustive greedy split search at one node.

    Returns (feature, threshold, gain) or None. Per feature, rows are sorted
    once and every boundary between distinct values is scored with prefix
    sums; argmin picks the lowest threshold on ties, and a strict gain
    comparison across features keeps the lowest feature index.
    """
    n = idx.size
    best = None
    for f in range(X.shape[1]):
        v = X[idx, f]
        order = np.argsort(v, kind="stable")
        sv = v[order]
        sy = y[idx[order]]
        boundaries = np.nonzero(sv[1:] > sv[:-1])[0] + 1  # left-side sizes
        if min_leaf > 1:
            boundaries = boundaries[(boundaries >= min_leaf) & (n - boundaries >= min_leaf)]
        if boundaries.size == 0:
            continue
        csum = np.cumsum(sy)
        csq = np.cumsum(sy * sy)
        total, total_sq = csum[-1], csq[-1]
        ls = csum[boundaries - 1]
        lq = csq[boundaries - 1]
        rn = n - boundaries
        left_sse = lq - ls * ls / boundaries
        right_sse = (total_sq - lq) - (total - ls) ** 2 / rn
        score = left_sse + right_sse
        j = int(np.argmin(score))
        gain = node_sse - float(score[j])
        if best is None or gain > best[2]:
            k = boundaries[j]
            thr = 0.5 * (sv[k - 1] + sv[k])
            best = (f, float(thr), gain)
    return best


def fit_tree(X, y, max_depth: int, min_leaf: int = 1) -> RegressionTree:
    """Fit a CART regression tree by exact greedy SSE-reduction splits.

    Recursion stops at max_depth, when a child would fall below min_leaf
    rows, or when no split reduces SSE beyond numerical noise. Every leaf
    predicts the mean training target routed to it.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("X must be 2-dimensional")
    if X.shape[0] != y.shape[0]:
        raise ValueError("X and y disagree on row count")
    if y.shape[0] == 0:
        raise ValueError("empty data")
    if max_depth < 0 or min_leaf < 1:
        raise ValueError("max_depth must be >= 0 and min_leaf >= 1")

    feature, threshold, left, right, value, count, gain = [], [], [], [], [], [], []

    def build(idx: np.ndarray, depth: int) -> int:
        yv = y[idx]
        mean = float(yv.mean())
        node_sse = float(((yv - mean) ** 2).sum())
        nid = len(feature)
        feature.append(LEAF)
        threshold.append(np.nan)
        left.append(LEAF)
        right.append(LEAF)
        value.append(mean)
        count.append(idx.size)
        gain.append(0.0)
        if depth >= max_depth or idx.size < 2 * min_leaf or node_sse <= 0.0:
            return nid
        found = _best_split(X, y, idx, node_sse, min_leaf)
        if found is None:
            return nid
        f, thr, g = found
        if g <= GAIN_TOL * node_sse:
            return nid
        go_left = X[idx, f] <= thr
        lid = build(idx[go_left], depth + 1)
        rid = build(idx[~go_left], depth + 1)
        feature[nid] = f
        threshold[nid] = thr
        left[nid] = lid
        right[nid] = rid
        gain[nid] = g
        return nid

    build(np.arange(X.shape[0]), 0)
    return RegressionTree(
        feature=np.asarray(feature, dtype=np.int32),
        threshold=np.asarray(threshold),
        left=np.asarray(left, dtype=np.int32),
        right=np.asarray(right, dtype=np.int32),
        value=np.asarray(value),
        count=np.asarray(count, dtype=np.int32),
        gain=np.asarray(gain),
        max_depth=max_depth,
        n_features=X.shape[1],
    )


@dataclass(eq=False)
class GbtEnsemble:
    """Gradient-boosted regression trees under squared loss.

    prediction = base_prediction + learning_rate * sum of tree outputs.
    """

    base_prediction: float
    trees: list = field(default_factory=list)
    learning_rate: float = 0.1
    n_features: int = 0

    def predict(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        out = np.full(X.shape[0], self.base_prediction)
        for tree in self.trees:
            out += self.learning_rate * tree.predict(X)
        return out

    def to_json_dict(self) -> dict:
        return {
            "base_prediction": float(self.base_prediction),
            "learning_rate": float(self.learning_rate),
            "n_features": self.n_features,
            "trees": [t.to_json_dict() for t in self.trees],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GbtEnsemble":
        return cls(
            base_prediction=doc["base_prediction"],
            learning_rate=doc["learning_rate"],
            n_features=doc["n_features"],
            trees=[RegressionTree.from_json_dict(t) for t in doc["trees"]],
        )


def fit_gbt(
    X,
    y,
    n_trees: int = 50,
    learning_rate: float = 0.1,
    max_depth: int = 3,
    min_leaf: int = 1,
) -> GbtEnsemble:
    """Stagewise fit of depth-bounded trees to residuals under squared loss."""
    if n_trees < 1:
        raise ValueError("n_trees must be >= 1")
    if not 0.0 < learning_rate <= 1.0:
        raise ValueError("learning_rate must lie in (0, 1]")
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    base = float(y.mean())
    residual = y - base
    trees = []
    for _ in range(n_trees):
        tree = fit_tree(X, residual, max_depth=max_depth, min_leaf=min_leaf)
        residual = residual - learning_rate * tree.predict(X)
        trees.append(tree)
    return GbtEnsemble(base_prediction=base, trees=trees,
                       learning_rate=learning_rate, n_features=X.shape[1])


def gain_importance(ensemble: GbtEnsemble, n_features: int | None = None) -> np.ndarray:
    """Per-feature total SSE reduction across all splits of all trees.

    Normalized to sum to 1 when the ensemble has any split; otherwise the
    all-zero vector.
    """
    p = ensemble.n_features if n_features is None else n_features
    totals = np.zeros(p)
    for tree in ensemble.trees:
        internal = tree.feature != LEAF
        np.add.at(totals, tree.feature[internal], tree.gain[internal])
    s = totals.sum()
    if s > 0:
        totals = totals / s
    return totals
