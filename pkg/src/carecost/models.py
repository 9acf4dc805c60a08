"""Train/predict bridge between datasets and the model families.

A FittedModel bundles the fitted estimator with the schema it was trained
against (vocabularies included), so model files are self-contained: the
prediction service and one-off predictions can encode raw category strings
without the original dataset.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, one_hot
from .errors import ConfigError, DataError
from .lars import fit_lars_ic
from .linear import LinearModel, fit_coordinate_descent, fit_ols, fit_ridge, predict_linear
from .schema import CATEGORICAL, FeatureSchema
from .trees import GbtEnsemble, RegressionTree, fit_gbt, fit_tree
from .util import write_json_atomic

LINEAR_FAMILIES = ("ols", "ridge", "lasso", "elasticnet", "lars_aic", "lars_bic")
TREE_FAMILIES = ("tree", "gbt")
FAMILIES = LINEAR_FAMILIES + TREE_FAMILIES

_FORMAT_VERSION = 1

# Beyond this many design-matrix cells, linear fits build the one-hot design
# sparse so wide vocabularies stay affordable.
_SPARSE_CELL_LIMIT = 50_000_000


def design_matrix(ds: Dataset):
    """One-hot design plus column labels, sparse when the dense form is huge."""
    width = sum(f.n_codes if f.kind == CATEGORICAL else 1 for f in ds.schema.features)
    sparse = ds.row_count * width > _SPARSE_CELL_LIMIT
    return one_hot(ds, sparse=sparse)


@dataclass(eq=False)
class FittedModel:
    """One trained model of any family, tied to its training schema."""

    family: str
    schema: FeatureSchema
    hyper: dict
    linear: LinearModel | None = None
    tree: RegressionTree | None = None
    gbt: GbtEnsemble | None = None

    @property
    def schema_fingerprint(self) -> str:
        return self.schema.fingerprint()

    def predict(self, ds: Dataset) -> np.ndarray:
        """Predict costs for every row of a dataset with a matching schema."""
        if ds.schema.fingerprint() != self.schema_fingerprint:
            raise DataError("dataset schema does not match the model's training schema")
        if self.family in LINEAR_FAMILIES:
            X, _ = design_matrix(ds)
            return predict_linear(self.linear, X)
        matrix = ds.feature_matrix()
        if self.family == "tree":
            return self.tree.predict(matrix)
        return self.gbt.predict(matrix)

    def predict_row(self, raw: dict) -> float:
        """Predict one raw request row: category strings plus numeric values.

        Unknown category strings map to the reserved UNKNOWN code; missing or
        mistyped fields raise DataError naming the field.
        """
        columns = []
        for spec in self.schema.features:
            if spec.name not in raw:
                raise DataError(f"missing field: {spec.name}")
            value = raw[spec.name]
            if spec.kind == CATEGORICAL:
                if not isinstance(value, str):
                    raise DataError(f"field {spec.name} must be a category string")
                columns.append(np.array([spec.encode(value)], dtype=np.int32))
            else:
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise DataError(f"field {spec.name} must be a number")
                columns.append(np.array([float(value)]))
        ds = Dataset(schema=self.schema, columns=tuple(columns), target=np.zeros(1))
        return float(self.predict(ds)[0])

    def to_json_dict(self) -> dict:
        doc = {
            "format_version": _FORMAT_VERSION,
            "family": self.family,
            "schema": self.schema.to_json_dict(),
            "schema_fingerprint": self.schema_fingerprint,
            "hyper": self.hyper,
        }
        if self.linear is not None:
            doc["linear"] = self.linear.to_json_dict()
        if self.tree is not None:
            doc["tree"] = self.tree.to_json_dict()
        if self.gbt is not None:
            doc["gbt"] = self.gbt.to_json_dict()
        return doc

    @classmethod
    def from_json_dict(cls, doc: dict) -> "FittedModel":
        return cls(
            family=doc["family"],
            schema=FeatureSchema.from_json_dict(doc["schema"]),
            hyper=doc.get("hyper", {}),
            linear=LinearModel.from_json_dict(doc["linear"]) if "linear" in doc else None,
            tree=RegressionTree.from_json_dict(doc["tree"]) if "tree" in doc else None,
            gbt=GbtEnsemble.from_json_dict(doc["gbt"]) if "gbt" in doc else None,
        )

    def save(self, path) -> None:
        write_json_atomic(path, self.to_json_dict())

    @classmethod
    def load(cls, path) -> "FittedModel":
        if not os.path.exists(path):
            raise DataError(f"model file not found: {path}")
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        if doc.get("format_version") != _FORMAT_VERSION:
            raise DataError(f"unsupported model format version in {path}")
        return cls.from_json_dict(doc)


def train_model(family: str, ds: Dataset, hyper: dict | None = None) -> FittedModel:
    """Fit one family on a dataset. ``hyper`` keys depend on the family:

    ridge/lasso/elasticnet: lam (and l1_ratio for elasticnet, default 0.5);
    tree: max_depth (required), min_leaf; gbt: n_trees, learning_rate,
    max_depth, min_leaf. OLS and the LARS families need none.
    """
    hyper = dict(hyper or {})
    if family not in FAMILIES:
        raise ConfigError(f"unknown model family {family!r}")

    def require(key: str) -> float:
        if key not in hyper:
            raise ConfigError(f"family {family!r} requires hyperparameter {key!r}")
        try:
            return float(hyper[key])
        except (TypeError, ValueError):
            raise ConfigError(f"hyperparameter {key!r} must be numeric") from None

    if family in LINEAR_FAMILIES:
        X, _ = design_matrix(ds)
        y = ds.target
        if family == "ols":
            linear = fit_ols(X, y)
        elif family == "ridge":
            linear = fit_ridge(X, y, lam=require("lam"))
        elif family == "lasso":
            linear = fit_coordinate_descent(X, y, lam=require("lam"), l1_ratio=1.0)
        elif family == "elasticnet":
            l1_ratio = float(hyper.get("l1_ratio", 0.5))
            linear = fit_coordinate_descent(X, y, lam=require("lam"), l1_ratio=l1_ratio)
            hyper["l1_ratio"] = l1_ratio
        else:
            criterion = family.split("_", 1)[1]
            max_steps = int(hyper["max_steps"]) if "max_steps" in hyper else None
            path, linear = fit_lars_ic(X, y, criterion=criterion, max_steps=max_steps)
            hyper["selected_lambda"] = linear.lam
            hyper["selected_df"] = int(np.sum(linear.coefficients != 0.0))
        return FittedModel(family=family, schema=ds.schema, hyper=hyper, linear=linear)

    matrix = ds.feature_matrix()
    if family == "tree":
        tree = fit_tree(
            matrix,
            ds.target,
            max_depth=int(require("max_depth")),
            min_leaf=int(hyper.get("min_leaf", 1)),
        )
        return FittedModel(family=family, schema=ds.schema, hyper=hyper, tree=tree)
    gbt = fit_gbt(
        matrix,
        ds.target,
        n_trees=int(hyper.get("n_trees", 50)),
        learning_rate=float(hyper.get("learning_rate", 0.1)),
        max_depth=int(hyper.get("max_depth", 3)),
        min_leaf=int(hyper.get("min_leaf", 1)),
    )
    return FittedModel(family=family, schema=ds.schema, hyper=hyper, gbt=gbt)
