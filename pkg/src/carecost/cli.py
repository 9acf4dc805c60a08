"""Command-line pipeline: ingest, rank, train, evaluate, predict.

Every stage reads and writes files only, so runs are reproducible and any
stage can be re-executed in isolation. Outputs are written atomically
(temp file + rename) and each stage drops a ``<out>.manifest.json`` sidecar
recording inputs, a configuration hash, and a timestamp. The manifest is
the only place a timestamp appears; the primary artifacts are byte-for-byte
deterministic given the same inputs, seed, and configuration.

Exit codes: 0 success, 2 configuration error (bad flags, unknown family,
missing hyperparameters), 3 data error (unreadable input, malformed
dataset, schema mismatch).
"""
from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import os
import sys

import itertools

from .dataset import SplitConfig, load_dataset, save_dataset, split
from .errors import ConfigError, DataError
from .evaluation import cross_validate, evaluate_holdout, export_scatter
from .ingest import ingest_csv, read_mapping
from .linear import lambda_grid
from .models import FittedModel, design_matrix, train_model
from .ranking import RankConfig, rank_features
from .util import dump_json, write_json_atomic


def _parse_config_pairs(pairs) -> dict:
    """Turn ``key=value`` strings into a dict; values parse as JSON if they can."""
    config = {}
    for pair in pairs or []:
        key, sep, raw = pair.partition("=")
        if not sep or not key:
            raise ConfigError(f"expected key=value, got {pair!r}")
        try:
            config[key] = json.loads(raw)
        except json.JSONDecodeError:
            config[key] = raw
    return config


def _config_hash(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]


def _write_manifest(out_path: str, stage: str, inputs: dict, config: dict,
                    artifacts: list) -> None:
    manifest = {
        "stage": stage,
        "inputs": inputs,
        "config": config,
        "config_hash": _config_hash(config),
        "artifacts": artifacts,
        "created_utc": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    write_json_atomic(out_path + ".manifest.json", manifest)


def cmd_ingest(ns) -> int:
    if not os.path.exists(ns.csv):
        raise DataError(f"input file not found: {ns.csv}")
    mapping = read_mapping(ns.mapping) if ns.mapping else None
    extra = {"target_name": ns.target} if ns.target else {}
    ds, report = ingest_csv(ns.csv, mapping=mapping, **extra)
    save_dataset(ds, ns.out)
    write_json_atomic(os.path.join(ns.out, "ingest_report.json"), report.to_json_dict())
    _write_manifest(
        os.path.join(ns.out, "dataset"),
        "ingest",
        {"csv": ns.csv, "mapping": ns.mapping},
        {"target": ns.target},
        [ns.out],
    )
    print(f"ingested {report.rows_kept} of {report.rows_read} rows into {ns.out}")
    return 0


def cmd_rank(ns) -> int:
    ds = load_dataset(ns.data)
    cfg = RankConfig(top_k=ns.top_k, target_bins=ns.bins, numeric_bins=ns.bins)
    report = rank_features(ds, cfg)
    write_json_atomic(ns.out, report.to_json_dict())
    _write_manifest(ns.out, "rank", {"data": ns.data},
                    {"top_k": ns.top_k, "bins": ns.bins}, [ns.out])
    print(f"selected {len(report.selected)} features: {', '.join(report.selected)}")
    return 0


def _resolve_family(family: str, criterion) -> str:
    """Fold the optional --criterion flag into the family name."""
    if family == "lars":
        return f"lars_{criterion or 'aic'}"
    if criterion is None:
        return family
    if family in ("lars_aic", "lars_bic"):
        if family != f"lars_{criterion}":
            raise ConfigError(f"--criterion {criterion} conflicts with family {family!r}")
        return family
    raise ConfigError("--criterion only applies to the lars family")


def _default_cv_grid(family: str, train_ds, fixed: dict) -> list:
    """Per-family hyperparameter grid, ordered simplest setting first."""
    if family == "tree":
        return [dict(fixed, max_depth=d) for d in range(2, 17)]
    if family == "gbt":
        return [dict(fixed, max_depth=d) for d in (2, 3, 4)]
    if family in ("ridge", "lasso", "elasticnet"):
        X, _ = design_matrix(train_ds)
        l1_ratio = float(fixed.get("l1_ratio", 0.5)) if family == "elasticnet" else 1.0
        lams = lambda_grid(X, train_ds.target, l1_ratio=l1_ratio)
        if family == "ridge":
            # Closed-form ridge penalizes an unnormalized sum of squares, so
            # the per-row grid values scale up by the row count.
            lams = [lam * train_ds.row_count for lam in lams]
        return [dict(fixed, lam=lam) for lam in lams]
    raise ConfigError(f"family {family!r} has no hyperparameter grid to cross-validate")


def cmd_train(ns) -> int:
    family = _resolve_family(ns.family, ns.criterion)
    ds = load_dataset(ns.data)
    train_ds, _ = split(ds, SplitConfig(test_fraction=ns.test_fraction, seed=ns.seed))
    hyper = _parse_config_pairs(ns.config)
    config = dict(hyper, family=family, seed=ns.seed, test_fraction=ns.test_fraction)
    artifacts = [ns.out]

    if ns.cv:
        axes = {k: v for k, v in hyper.items() if isinstance(v, list)}
        fixed = {k: v for k, v in hyper.items() if not isinstance(v, list)}
        if axes:
            grid = [
                dict(fixed, **dict(zip(axes, combo)))
                for combo in itertools.product(*axes.values())
            ]
        else:
            grid = _default_cv_grid(family, train_ds, fixed)
        cv = cross_validate(train_ds, family, grid, k=ns.folds, seed=ns.seed)
        write_json_atomic(ns.out + ".cv.json", cv.to_json_dict())
        hyper = dict(cv.chosen)
        config = dict(config, cv=True, folds=ns.folds, grid_size=len(grid))
        artifacts.append(ns.out + ".cv.json")
        print(f"cross-validation chose {cv.chosen} (mean r2 {cv.mean_r2[cv.chosen_index]:.4f})")

    model = train_model(family, train_ds, hyper)
    model.save(ns.out)
    _write_manifest(ns.out, "train", {"data": ns.data}, config, artifacts)
    print(f"trained {family} on {train_ds.row_count} rows -> {ns.out}")
    return 0


def cmd_evaluate(ns) -> int:
    ds = load_dataset(ns.data)
    model = FittedModel.load(ns.model)
    _, test_ds = split(ds, SplitConfig(test_fraction=ns.test_fraction, seed=ns.seed))
    if ns.scatter:
        metrics = export_scatter(test_ds.target, model.predict(test_ds), ns.scatter)
    else:
        metrics = evaluate_holdout(model, test_ds)
    payload = dict(
        metrics.to_json_dict(),
        family=model.family,
        seed=ns.seed,
        test_fraction=ns.test_fraction,
    )
    write_json_atomic(ns.out, payload)
    _write_manifest(ns.out, "evaluate",
                    {"data": ns.data, "model": ns.model},
                    {"seed": ns.seed, "test_fraction": ns.test_fraction},
                    [ns.out] + ([ns.scatter] if ns.scatter else []))
    print(f"r2={metrics.r2:.4f} rmse={metrics.rmse:.2f} on {metrics.n_test} rows")
    return 0


def cmd_predict(ns) -> int:
    model = FittedModel.load(ns.model)
    try:
        with open(ns.input, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except OSError as exc:
        raise DataError(f"cannot read input: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DataError(f"input is not valid JSON: {exc}") from exc
    if isinstance(payload, dict):
        result = {"prediction": model.predict_row(payload)}
    elif isinstance(payload, list):
        result = {"predictions": [model.predict_row(row) for row in payload]}
    else:
        raise DataError("input must be a JSON object or array of objects")
    if ns.out:
        write_json_atomic(ns.out, result)
    else:
        print(dump_json(result), end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carecost",
        description="Cost prediction pipeline over discharge-level billing data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a CSV into a typed dataset directory")
    p.add_argument("--input", "--csv", dest="csv", required=True, help="source CSV file")
    p.add_argument("--out", required=True, help="dataset directory to create")
    p.add_argument("--mapping", default=None,
                   help="optional file of `feature = CSV header` overrides")
    p.add_argument("--target", default=None, help="target column (default: Total Costs)")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("rank", help="score features against the target")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--out", required=True, help="ranking report JSON path")
    p.add_argument("--top-k", type=int, default=5, help="list size per measure")
    p.add_argument("--bins", type=int, default=10, help="quantile bins for target/numerics")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("train", help="fit a model on the training half of a split")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--model", "--family", dest="family", required=True,
                   help="ols | ridge | lasso | elasticnet | lars | tree | gbt")
    p.add_argument("--criterion", choices=("aic", "bic"), default=None,
                   help="path selection rule for the lars family")
    p.add_argument("--out", required=True, help="model JSON path")
    p.add_argument("--seed", type=int, default=0, help="split seed (reuse for evaluate)")
    p.add_argument("--test-fraction", type=float, default=0.5)
    p.add_argument("--config", action="append", metavar="KEY=VALUE",
                   help="hyperparameter, e.g. max_depth=10 or lam=0.01; a JSON "
                        "list value becomes a --cv grid axis")
    p.add_argument("--cv", action="store_true",
                   help="pick hyperparameters by k-fold cross-validation first")
    p.add_argument("--folds", type=int, default=5, help="folds for --cv")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a model on the held-out half")
    p.add_argument("--data", required=True, help="dataset directory")
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--out", required=True, help="metrics JSON path")
    p.add_argument("--seed", type=int, default=0, help="must match the train seed")
    p.add_argument("--test-fraction", type=float, default=0.5)
    p.add_argument("--scatter", default=None,
                   help="optional CSV of (actual, predicted) pairs")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("predict", help="predict cost for raw JSON rows")
    p.add_argument("--model", required=True, help="model JSON path")
    p.add_argument("--input", required=True, help="JSON object or array of objects")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_predict)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.func(ns)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
