"""Independent reference implementations the tests compare against.

Everything here is deliberately written the slow, obvious way (explicit
masks, direct normal equations, recursion) so that agreement with the
library is evidence of correctness rather than of shared code. Nothing in
this module imports from carecost.
"""
from __future__ import annotations

import numpy as np


def standardized_design(X):
    """Column-standardized copy: zero mean, population std; constants -> 0."""
    X = np.asarray(X, dtype=np.float64)
    mu = X.mean(axis=0)
    sigma = X.std(axis=0)
    sigma = np.where(sigma == 0.0, 1.0, sigma)
    return (X - mu) / sigma


def normal_equation_fit(X, y, lam: float = 0.0) -> np.ndarray:
    """Solve (Z'Z + lam I) b = Z'(y - ybar) directly on the standardized design."""
    Z = standardized_design(X)
    yc = np.asarray(y, dtype=np.float64) - np.mean(y)
    p = Z.shape[1]
    return np.linalg.solve(Z.T @ Z + lam * np.eye(p), Z.T @ yc)


def soft_threshold(x, t):
    x = np.asarray(x, dtype=np.float64)
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def orthonormal_design(n: int, p: int, rng) -> np.ndarray:
    """Design with Z'Z = n I and columns orthogonal to the all-ones vector,
    so mean removal and scaling both leave it unchanged."""
    raw = np.column_stack([np.ones(n), rng.normal(size=(n, p))])
    q, _ = np.linalg.qr(raw)
    return np.sqrt(n) * q[:, 1:]


def sse(y) -> float:
    y = np.asarray(y, dtype=np.float64)
    return float(((y - y.mean()) ** 2).sum()) if y.size else 0.0


GAIN_TOL = 1e-12


def brute_force_tree(X, y, max_depth: int, min_leaf: int = 1) -> dict:
    """Exhaustive greedy regression tree as a nested dict.

    Tries every feature and every midpoint between consecutive distinct
    values, computing side SSEs with explicit boolean masks. Ties keep the
    first candidate in (feature, threshold) order; only strictly larger
    gains replace the incumbent.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)

    def build(rows: np.ndarray, depth: int) -> dict:
        ysub = y[rows]
        node_sse = sse(ysub)
        leaf = {"value": float(ysub.mean()), "count": int(rows.size)}
        if depth >= max_depth or rows.size < 2 * min_leaf or node_sse <= 0.0:
            return leaf
        best = None
        best_gain = 0.0
        for j in range(X.shape[1]):
            col = X[rows, j]
            values = np.unique(col)
            for lo, hi in zip(values[:-1], values[1:]):
                thr = (lo + hi) / 2.0
                mask = col <= thr
                n_left = int(mask.sum())
                if n_left < min_leaf or rows.size - n_left < min_leaf:
                    continue
                gain = node_sse - sse(ysub[mask]) - sse(ysub[~mask])
                if gain > best_gain:
                    best_gain = gain
                    best = (j, thr, mask)
        if best is None or best_gain <= GAIN_TOL * node_sse:
            return leaf
        j, thr, mask = best
        return {
            "feature": j,
            "threshold": float(thr),
            "left": build(rows[mask], depth + 1),
            "right": build(rows[~mask], depth + 1),
        }

    return build(np.arange(len(y)), 0)


def brute_force_predict(node: dict, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)

    def one(row, nd):
        while "feature" in nd:
            nd = nd["left"] if row[nd["feature"]] <= nd["threshold"] else nd["right"]
        return nd["value"]

    return np.array([one(row, node) for row in X])


def mutual_information_direct(table) -> float:
    """I(X;Y) in nats by looping over cells with the textbook formula."""
    table = np.asarray(table, dtype=np.float64)
    n = table.sum()
    total = 0.0
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            pij = table[i, j] / n
            if pij > 0:
                total += pij * np.log(pij / (table[i].sum() / n * table[:, j].sum() / n))
    return total


def chi_square_direct(table) -> float:
    table = np.asarray(table, dtype=np.float64)
    n = table.sum()
    total = 0.0
    for i in range(table.shape[0]):
        for j in range(table.shape[1]):
            expected = table[i].sum() * table[:, j].sum() / n
            total += (table[i, j] - expected) ** 2 / expected
    return total
