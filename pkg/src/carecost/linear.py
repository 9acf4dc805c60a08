"""Linear cost models: OLS, ridge, and lasso/elastic-net coordinate descent.

Every fit standardizes design columns to zero mean and unit (population)
variance so penalties are comparable across one-hot indicator columns; the
intercept is never penalized. Constant columns get scale 1 and coefficient 0.
Coefficients live in standardized space; prediction applies the stored
standardization before the dot product.

Objectives (n = rows, standardized design Z, centered target):

    ols           min ||y - Zb||^2                    (minimum-norm on rank deficiency)
    ridge         min ||y - Zb||^2 + lam * ||b||^2
    coord descent min (1/2n)||y - Zb||^2
                      + lam * (l1_ratio*||b||_1 + (1-l1_ratio)/2*||b||^2)

Penalty scaling between the two parametrizations: multiplying the coordinate
descent objective by 2n shows fit_coordinate_descent(X, y, lam, l1_ratio=0)
solves the same problem as fit_ridge(X, y, n * lam).

Ridge, lasso, and elastic net solve off the Gram matrix (Z'Z and Z'y), so
sparse designs stay sparse and iteration cost is independent of row count.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse


@dataclass(eq=False)
class LinearModel:
    """Fitted linear family member; coefficients are in standardized space."""

    family: str
    coefficients: np.ndarray
    intercept: float           # mean of the training target
    mean: np.ndarray           # per-column standardization offsets
    scale: np.ndarray          # per-column standardization scales (> 0)
    lam: float = 0.0
    l1_ratio: float = 1.0
    converged: bool = True
    n_train: int = 0

    def predict(self, X) -> np.ndarray:
        return predict_linear(self, X)

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "coefficients": [float(v) for v in self.coefficients],
            "intercept": float(self.intercept),
            "mean": [float(v) for v in self.mean],
            "scale": [float(v) for v in self.scale],
            "lambda": float(self.lam),
            "l1_ratio": float(self.l1_ratio),
            "converged": bool(self.converged),
            "n_train": int(self.n_train),
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "LinearModel":
        return cls(
            family=doc["family"],
            coefficients=np.asarray(doc["coefficients"], dtype=np.float64),
            intercept=float(doc["intercept"]),
            mean=np.asarray(doc["mean"], dtype=np.float64),
            scale=np.asarray(doc["scale"], dtype=np.float64),
            lam=float(doc["lambda"]),
            l1_ratio=float(doc["l1_ratio"]),
            converged=bool(doc["converged"]),
            n_train=int(doc["n_train"]),
        )


def standardize_stats(X) -> tuple[np.ndarray, np.ndarray]:
    """Per-column mean and population std; constant columns get scale 1."""
    if scipy.sparse.issparse(X):
        n = X.shape[0]
        mu = np.asarray(X.mean(axis=0)).ravel()
        sq = np.asarray(X.multiply(X).mean(axis=0)).ravel()
        var = np.maximum(sq - mu * mu, 0.0)
        sigma = np.sqrt(var)
    else:
        X = np.asarray(X, dtype=np.float64)
        mu = X.mean(axis=0)
        sigma = X.std(axis=0)
    sigma = np.where(sigma > 0, sigma, 1.0)
    return mu, sigma


def _as_2d(X):
    if scipy.sparse.issparse(X):
        return X
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ValueError("design matrix must be 2-dimensional")
    return X


def _gram_system(X, y):
    """Centered, standardized Gram system without densifying sparse input.

    Returns (G, zty, yty, mu, sigma, n) where G = Z'Z, zty = Z'yc,
    yty = yc'yc for Z the standardized design and yc the centered target.
    """
    X = _as_2d(X)
    y = np.asarray(y, dtype=np.float64)
    n = X.shape[0]
    if n == 0 or y.shape[0] != n:
        raise ValueError("empty data or mismatched lengths")
    mu, sigma = standardize_stats(X)
    ybar = float(y.mean())
    yc = y - ybar
    if scipy.sparse.issparse(X):
        # Keep X sparse: derive the centered/scaled Gram from the raw one.
        G_raw = np.asarray((X.T @ X).toarray(), dtype=np.float64)
        G = (G_raw - n * np.outer(mu, mu)) / np.outer(sigma, sigma)
        zty = np.asarray(X.T @ yc).ravel() / sigma  # sum(yc) = 0 kills the mu term
    else:
        Z = (X - mu) / sigma
        G = Z.T @ Z
        zty = Z.T @ yc
    yty = float(yc @ yc)
    return G, zty, yty, mu, sigma, n, ybar


def _model(family, beta, mu, sigma, ybar, n, lam=0.0, l1_ratio=1.0, converged=True):
    return LinearModel(
        family=family,
        coefficients=np.asarray(beta, dtype=np.float64),
        intercept=ybar,
        mean=mu,
        scale=sigma,
        lam=float(lam),
        l1_ratio=float(l1_ratio),
        converged=converged,
        n_train=int(n),
    )


def fit_ols(X, y) -> LinearModel:
    """Ordinary least squares via an orthogonal decomposition (minimum-norm
    solution on rank-deficient designs)."""
    X = _as_2d(X)
    y = np.asarray(y, dtype=np.float64)
    if X.shape[0] == 0:
        raise ValueError("empty data")
    if scipy.sparse.issparse(X):
        G, zty, _, mu, sigma, n, ybar = _gram_system(X, y)
        beta = np.linalg.pinv(G) @ zty  # minimum-norm solution of the normal equations
        return _model("ols", beta, mu, sigma, ybar, n)
    mu, sigma = standardize_stats(X)
    ybar = float(y.mean())
    Z = (X - mu) / sigma
    beta, *_ = np.linalg.lstsq(Z, y - ybar, rcond=None)
    return _model("ols", beta, mu, sigma, ybar, X.shape[0])


def fit_ridge(X, y, lam: float) -> LinearModel:
    """Ridge regression: closed-form solve of (Z'Z + lam*I) b = Z'y on the
    centered, standardized design. The intercept is unpenalized."""
    if lam < 0:
        raise ValueError("lam must be >= 0")
    G, zty, _, mu, sigma, n, ybar = _gram_system(X, y)
    A = G + lam * np.eye(G.shape[0])
    try:
        beta = np.linalg.solve(A, zty)
    except np.linalg.LinAlgError:
        beta = np.linalg.lstsq(A, zty, rcond=None)[0]
    return _model("ridge", beta, mu, sigma, ybar, n, lam=lam)


def _soft(z: float, threshold: float) -> float:
    if z > threshold:
        return z - threshold
    if z < -threshold:
        return z + threshold
    return 0.0


def fit_coordinate_descent(
    X,
    y,
    lam: float,
    l1_ratio: float = 1.0,
    tol: float = 1e-6,
    max_sweeps: int = 10_000,
) -> LinearModel:
    """Lasso (l1_ratio=1) / elastic net by cyclic coordinate descent.

    Per-coordinate soft-threshold updates on the Gram system; stops when the
    largest coefficient change in a full sweep drops below tol. Exhausting
    max_sweeps flags the result (converged=False) rather than raising.
    """
    if lam < 0:
        raise ValueError("lam must be >= 0")
    if not 0.0 <= l1_ratio <= 1.0:
        raise ValueError("l1_ratio must lie in [0, 1]")
    G, zty, _, mu, sigma, n, ybar = _gram_system(X, y)
    p = G.shape[0]
    denom = G.diagonal() / n + (1.0 - l1_ratio) * lam
    l1_pen = l1_ratio * lam
    beta = np.zeros(p)
    g_beta = np.zeros(p)  # G @ beta, maintained incrementally
    converged = False
    for _ in range(max_sweeps):
        max_delta = 0.0
        for j in range(p):
            if denom[j] <= 0.0:
                continue  # constant column: coefficient pinned at 0
            rho = (zty[j] - g_beta[j] + G[j, j] * beta[j]) / n
            new = _soft(rho, l1_pen) / denom[j]
            delta = new - beta[j]
            if delta != 0.0:
                g_beta += G[:, j] * delta
                beta[j] = new
                max_delta = max(max_delta, abs(delta))
        if max_delta < tol:
            converged = True
            break
    family = "lasso" if l1_ratio == 1.0 else "elasticnet"
    return _model(family, beta, mu, sigma, ybar, n, lam=lam, l1_ratio=l1_ratio,
                  converged=converged)


def lasso_lambda_max(X, y, l1_ratio: float = 1.0) -> float:
    """Smallest lam for which coordinate descent returns the all-zero model."""
    if l1_ratio <= 0:
        raise ValueError("lambda_max is undefined for a pure ridge penalty")
    _, zty, _, _, _, n, _ = _gram_system(X, y)
    return float(np.max(np.abs(zty)) / (n * l1_ratio))


def lambda_grid(X, y, l1_ratio: float = 1.0, num: int = 20, span: float = 1e-4):
    """Logarithmic penalty grid [span*lam_max, lam_max], strongest first so
    cross-validation tie-breaks prefer the simpler (more regularized) model.

    For ridge fits, scale each entry by the row count (see the penalty
    scaling note in the module docstring).
    """
    lam_max = lasso_lambda_max(X, y, l1_ratio=l1_ratio)
    grid = np.geomspace(lam_max * span, lam_max, num=num)
    return [float(v) for v in grid[::-1]]


def predict_linear(model: LinearModel, X) -> np.ndarray:
    """Apply the stored standardization, then the linear map."""
    X = _as_2d(X)
    p = model.coefficients.shape[0]
    if X.shape[1] != p:
        raise ValueError(f"design width {X.shape[1]} does not match model width {p}")
    scaled_coef = model.coefficients / model.scale
    offset = float(model.mean @ scaled_coef)
    return np.asarray(X @ scaled_coef).ravel() - offset + model.intercept
