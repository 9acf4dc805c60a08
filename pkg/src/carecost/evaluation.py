"""Holdout metrics, k-fold cross-validation, and scatter-plot export.

All metrics are computed on the holdout partition only; cross-validation
for hyperparameter selection happens strictly inside the training half.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np
import scipy.special

from .dataset import Dataset
from .errors import DataError
from .models import FittedModel, train_model
from .util import dump_json, write_text_atomic


def r2(actual, predicted) -> float:
    """Coefficient of determination, 1 - RSS/TSS. Can go negative for
    worse-than-mean models; undefined (error) for a constant actual."""
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape or a.size == 0:
        raise ValueError("actual and predicted must be equal-length, nonempty")
    tss = float(((a - a.mean()) ** 2).sum())
    if tss == 0.0:
        raise ValueError("r2 is undefined for a constant actual vector")
    rss = float(((a - p) ** 2).sum())
    return 1.0 - rss / tss


def rmse(actual, predicted) -> float:
    """Root mean squared error, in target units (dollars)."""
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape or a.size == 0:
        raise ValueError("actual and predicted must be equal-length, nonempty")
    return float(np.sqrt(((a - p) ** 2).mean()))


def pearson(actual, predicted) -> tuple[float, float]:
    """Sample correlation plus a two-sided p-value.

    The p-value comes from the t statistic r*sqrt((n-2)/(1-r^2)) against a
    Student-t reference with n-2 degrees of freedom, evaluated through the
    regularized incomplete beta function.
    """
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape or a.size < 3:
        raise ValueError("need equal-length vectors with at least 3 points")
    ac = a - a.mean()
    pc = p - p.mean()
    denom = float(np.sqrt((ac @ ac) * (pc @ pc)))
    if denom == 0.0:
        raise ValueError("pearson correlation is undefined for constant input")
    r = float((ac @ pc) / denom)
    r = max(-1.0, min(1.0, r))
    nu = a.size - 2
    if 1.0 - r * r <= 0.0:
        return r, 0.0
    t_sq = r * r * nu / (1.0 - r * r)
    p_value = float(scipy.special.betainc(0.5 * nu, 0.5, nu / (nu + t_sq)))
    return r, p_value


@dataclass(frozen=True)
class MetricsReport:
    """The holdout evaluation quantities."""

    r2: float
    rmse: float
    pearson_r: float
    p_value: float
    n_test: int

    def to_json_dict(self) -> dict:
        return {
            "r2": self.r2,
            "rmse": self.rmse,
            "pearson_r": self.pearson_r,
            "p_value": self.p_value,
            "n_test": self.n_test,
        }


def holdout_metrics(actual, predicted) -> MetricsReport:
    pearson_r, p_value = pearson(actual, predicted)
    return MetricsReport(
        r2=r2(actual, predicted),
        rmse=rmse(actual, predicted),
        pearson_r=pearson_r,
        p_value=p_value,
        n_test=int(np.asarray(actual).size),
    )


def evaluate_holdout(model: FittedModel, test: Dataset) -> MetricsReport:
    """Score a fitted model on held-out rows only."""
    if test.schema.fingerprint() != model.schema_fingerprint:
        raise DataError("holdout schema does not match the model's training schema")
    return holdout_metrics(test.target, model.predict(test))


def export_scatter(actual, predicted, path) -> MetricsReport:
    """Write actual-vs-predicted pairs as CSV plus a metrics sidecar.

    The CSV has header "actual,predicted" and one row per test point. The
    sidecar (path + ".json") holds the MetricsReport and the endpoints of
    the identity line for plotting.
    """
    a = np.asarray(actual, dtype=np.float64)
    p = np.asarray(predicted, dtype=np.float64)
    if a.shape != p.shape:
        raise ValueError("actual and predicted must have equal length")
    report = holdout_metrics(a, p)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["actual", "predicted"])
    for av, pv in zip(a, p):
        writer.writerow([repr(float(av)), repr(float(pv))])
    write_text_atomic(path, buf.getvalue())
    lo = float(min(a.min(), p.min()))
    hi = float(max(a.max(), p.max()))
    sidecar = {"metrics": report.to_json_dict(), "identity_line": [[lo, lo], [hi, hi]]}
    write_text_atomic(str(path) + ".json", dump_json(sidecar))
    return report


def kfold_indices(n: int, k: int, seed: int) -> list[np.ndarray]:
    """Deterministic k-fold partition: a seeded permutation dealt round-robin.

    Every row lands in exactly one validation fold; folds are sorted so
    downstream slicing is order-preserving.
    """
    if k < 2:
        raise ValueError("need at least 2 folds")
    if n < k:
        raise ValueError(f"cannot build {k} folds from {n} rows")
    perm = np.random.default_rng(seed).permutation(n)
    return [np.sort(perm[i::k]) for i in range(k)]


@dataclass(eq=False)
class CvResult:
    """Grid search outcome: per-setting validation R2 across folds.

    The chosen setting maximizes mean validation R2; exact ties go to the
    earliest grid entry, so callers order grids simplest-first (tree depth
    ascending, penalty descending).
    """

    family: str
    grid: list
    mean_r2: np.ndarray
    std_r2: np.ndarray
    chosen_index: int
    k: int
    seed: int

    @property
    def chosen(self) -> dict:
        return self.grid[self.chosen_index]

    def to_json_dict(self) -> dict:
        return {
            "family": self.family,
            "grid": self.grid,
            "mean_r2": [float(v) for v in self.mean_r2],
            "std_r2": [float(v) for v in self.std_r2],
            "chosen_index": self.chosen_index,
            "chosen": self.chosen,
            "k": self.k,
            "seed": self.seed,
        }


def cross_validate(
    train: Dataset,
    family: str,
    grid: list,
    k: int = 5,
    seed: int = 0,
) -> CvResult:
    """k-fold grid search returning mean/std validation R2 per setting.

    ``grid`` is a list of hyperparameter dicts for train_model, ordered from
    simplest to most complex so that tie-breaks favor simplicity.
    """
    if not grid:
        raise ValueError("empty hyperparameter grid")
    folds = kfold_indices(train.row_count, k, seed)
    all_rows = np.arange(train.row_count)
    scores = np.zeros((len(grid), k))
    for fi, val_idx in enumerate(folds):
        fit_idx = np.setdiff1d(all_rows, val_idx)
        fit_ds = train.take(fit_idx)
        val_ds = train.take(val_idx)
        for gi, hyper in enumerate(grid):
            model = train_model(family, fit_ds, hyper)
            scores[gi, fi] = r2(val_ds.target, model.predict(val_ds))
    mean_r2 = scores.mean(axis=1)
    std_r2 = scores.std(axis=1)
    chosen = 0
    for gi in range(1, len(grid)):
        if mean_r2[gi] > mean_r2[chosen]:
            chosen = gi
    return CvResult(
        family=family,
        grid=list(grid),
        mean_r2=mean_r2,
        std_r2=std_r2,
        chosen_index=chosen,
        k=k,
        seed=seed,
    )
