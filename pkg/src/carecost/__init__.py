"""Cost prediction over discharge-level billing records.

The package is a plain numpy/scipy library: encode records into a columnar
:class:`Dataset`, rank features against cost, fit linear or tree models,
and score them on a held-out split. A thin CLI (:mod:`carecost.cli`) and an
HTTP service (:mod:`carecost.service`) wrap the same functions for use
outside Python.
"""
from .dataset import Dataset, SplitConfig, load_dataset, one_hot, save_dataset, split
from .errors import CarecostError, ConfigError, DataError
from .evaluation import (
    CvResult,
    MetricsReport,
    cross_validate,
    evaluate_holdout,
    holdout_metrics,
    kfold_indices,
    pearson,
    r2,
    rmse,
)
from .ingest import IngestReport, ingest_csv
from .lars import LarsPath, LarsStep, fit_lars_ic
from .linear import (
    LinearModel,
    fit_coordinate_descent,
    fit_ols,
    fit_ridge,
    lambda_grid,
    lasso_lambda_max,
    predict_linear,
)
from .models import FittedModel, train_model
from .ranking import RankConfig, RankingReport, rank_features
from .schema import CATEGORICAL, NUMERIC, DEFAULT_FEATURES, FeatureSchema, FeatureSpec
from .synthetic import SyntheticSpec, default_synthetic_spec, generate_synthetic
from .trees import (
    GbtEnsemble,
    RegressionTree,
    fit_gbt,
    fit_tree,
    gain_importance,
    predict_tree,
)

__version__ = "0.1.0"

__all__ = [
    "CATEGORICAL",
    "NUMERIC",
    "DEFAULT_FEATURES",
    "CarecostError",
    "ConfigError",
    "CvResult",
    "DataError",
    "Dataset",
    "FeatureSchema",
    "FeatureSpec",
    "FittedModel",
    "GbtEnsemble",
    "IngestReport",
    "LarsPath",
    "LarsStep",
    "LinearModel",
    "MetricsReport",
    "RankConfig",
    "RankingReport",
    "RegressionTree",
    "SplitConfig",
    "SyntheticSpec",
    "cross_validate",
    "default_synthetic_spec",
    "evaluate_holdout",
    "fit_coordinate_descent",
    "fit_gbt",
    "fit_lars_ic",
    "fit_ols",
    "fit_ridge",
    "fit_tree",
    "gain_importance",
    "generate_synthetic",
    "holdout_metrics",
    "ingest_csv",
    "kfold_indices",
    "lambda_grid",
    "lasso_lambda_max",
    "load_dataset",
    "one_hot",
    "pearson",
    "predict_linear",
    "predict_tree",
    "r2",
    "rank_features",
    "rmse",
    "save_dataset",
    "split",
    "train_model",
]
