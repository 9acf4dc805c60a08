"""Immutable columnar datasets, deterministic splits, one-hot design matrices.

Datasets store one numpy vector per schema feature (int32 codes for
categoricals, float64 for numerics) plus a float64 cost target in dollars.
Arrays are frozen after construction, so datasets are safe to share across
threads.

On-disk layout (see save_dataset/load_dataset):

    dataset_dir/
      schema.json   descriptor: schema, row count, per-column file + dtype
      col_00.bin    raw little-endian vector for feature 0 (schema order)
      ...
      target.bin    raw little-endian float64 cost vector
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np
import scipy.sparse

from .errors import DataError
from .schema import CATEGORICAL, NUMERIC, UNKNOWN_TOKEN, FeatureSchema
from .util import write_bytes_atomic, write_json_atomic

_FORMAT_VERSION = 1


def _frozen(arr: np.ndarray, dtype) -> np.ndarray:
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class Dataset:
    """Encoded feature columns plus the cost target, aligned with a schema."""

    schema: FeatureSchema
    columns: tuple[np.ndarray, ...]
    target: np.ndarray

    def __post_init__(self):
        if len(self.columns) != len(self.schema.features):
            raise ValueError("column count does not match schema")
        target = _frozen(self.target, np.float64)
        if target.ndim != 1:
            raise ValueError("target must be a vector")
        n = target.shape[0]
        if not np.all(np.isfinite(target)):
            raise ValueError("target contains non-finite values")
        if n and target.min() < 0:
            raise ValueError("target contains negative costs")
        cols = []
        for spec, col in zip(self.schema.features, self.columns):
            if spec.kind == CATEGORICAL:
                arr = _frozen(col, np.int32)
                if arr.shape != (n,):
                    raise ValueError(f"column {spec.name!r} has wrong length")
                if arr.size and (arr.min() < 0 or arr.max() >= spec.n_codes):
                    raise ValueError(f"column {spec.name!r} has codes outside its vocabulary")
            else:
                arr = _frozen(col, np.float64)
                if arr.shape != (n,):
                    raise ValueError(f"column {spec.name!r} has wrong length")
            cols.append(arr)
        object.__setattr__(self, "columns", tuple(cols))
        object.__setattr__(self, "target", target)

    @property
    def row_count(self) -> int:
        return self.target.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.columns[self.schema.index_of(name)]

    def feature_matrix(self) -> np.ndarray:
        """All feature columns as a dense float64 matrix, schema order."""
        return np.column_stack([c.astype(np.float64) for c in self.columns])

    def take(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.int64)
        return Dataset(
            schema=self.schema,
            columns=tuple(c[idx] for c in self.columns),
            target=self.target[idx],
        )

    def decode_row(self, i: int) -> dict:
        """Row i as raw values: category strings plus numeric values."""
        out = {}
        for spec, col in zip(self.schema.features, self.columns):
            if spec.kind == CATEGORICAL:
                out[spec.name] = spec.decode(int(col[i]))
            else:
                out[spec.name] = float(col[i])
        return out


@dataclass(frozen=True)
class SplitConfig:
    """Holdout split: fraction of rows reserved for testing, and the RNG seed."""

    test_fraction: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError("test_fraction must lie in (0, 1)")


def split(ds: Dataset, cfg: SplitConfig) -> tuple[Dataset, Dataset]:
    """Partition rows into (train, test), deterministically per seed.

    The test side gets round(test_fraction * row_count) rows (half-up
    rounding). Row order within each side follows the original dataset.
    """
    n = ds.row_count
    if n < 2:
        raise ValueError("need at least 2 rows to split")
    n_test = int(n * cfg.test_fraction + 0.5)
    if n_test == 0 or n_test == n:
        raise ValueError(f"test_fraction {cfg.test_fraction} leaves an empty side for {n} rows")
    perm = np.random.default_rng(cfg.seed).permutation(n)
    test_idx = np.sort(perm[:n_test])
    train_idx = np.sort(perm[n_test:])
    return ds.take(train_idx), ds.take(test_idx)


def one_hot(ds: Dataset, sparse: bool = False):
    """Expand a dataset into a design matrix plus column labels.

    Each categorical feature becomes a block of vocabulary-size + 1 indicator
    columns; slot 0 of the block is the reserved UNKNOWN code. Numeric
    features pass through as single columns. Returns (X, labels) with X dense
    by default or CSR when sparse=True.
    """
    n = ds.row_count
    labels: list[str] = []
    width = 0
    offsets = []
    for spec in ds.schema.features:
        offsets.append(width)
        if spec.kind == CATEGORICAL:
            labels.append(f"{spec.name}={UNKNOWN_TOKEN}")
            labels.extend(f"{spec.name}={v}" for v in spec.vocabulary)
            width += spec.n_codes
        else:
            labels.append(spec.name)
            width += 1

    if sparse:
        rows_parts, cols_parts, data_parts = [], [], []
        row_ids = np.arange(n, dtype=np.int64)
        for spec, col, off in zip(ds.schema.features, ds.columns, offsets):
            rows_parts.append(row_ids)
            if spec.kind == CATEGORICAL:
                cols_parts.append(off + col.astype(np.int64))
                data_parts.append(np.ones(n))
            else:
                cols_parts.append(np.full(n, off, dtype=np.int64))
                data_parts.append(col.astype(np.float64))
        X = scipy.sparse.csr_matrix(
            (np.concatenate(data_parts), (np.concatenate(rows_parts), np.concatenate(cols_parts))),
            shape=(n, width),
        )
        return X, labels

    X = np.zeros((n, width))
    row_ids = np.arange(n)
    for spec, col, off in zip(ds.schema.features, ds.columns, offsets):
        if spec.kind == CATEGORICAL:
            X[row_ids, off + col] = 1.0
        else:
            X[:, off] = col
    return X, labels


def _column_dtype(kind: str) -> str:
    return "<i4" if kind == CATEGORICAL else "<f8"


def save_dataset(ds: Dataset, dirpath) -> None:
    """Write the dataset as per-column binary vectors plus a JSON descriptor.

    Output is byte-identical for identical datasets.
    """
    os.makedirs(dirpath, exist_ok=True)
    col_files = []
    for i, (spec, col) in enumerate(zip(ds.schema.features, ds.columns)):
        fname = f"col_{i:02d}.bin"
        dtype = _column_dtype(spec.kind)
        write_bytes_atomic(os.path.join(dirpath, fname), col.astype(dtype).tobytes())
        col_files.append({"name": spec.name, "file": fname, "dtype": dtype})
    write_bytes_atomic(os.path.join(dirpath, "target.bin"), ds.target.astype("<f8").tobytes())
    descriptor = {
        "format_version": _FORMAT_VERSION,
        "row_count": ds.row_count,
        "schema": ds.schema.to_json_dict(),
        "columns": col_files,
        "target": {"file": "target.bin", "dtype": "<f8"},
    }
    write_json_atomic(os.path.join(dirpath, "schema.json"), descriptor)


def load_dataset(dirpath) -> Dataset:
    desc_path = os.path.join(dirpath, "schema.json")
    if not os.path.exists(desc_path):
        raise DataError(f"not a dataset directory (missing {desc_path})")
    with open(desc_path, "r", encoding="utf-8") as fh:
        descriptor = json.load(fh)
    if descriptor.get("format_version") != _FORMAT_VERSION:
        raise DataError(f"unsupported dataset format version in {desc_path}")
    schema = FeatureSchema.from_json_dict(descriptor["schema"])
    n = descriptor["row_count"]
    cols = []
    for entry in descriptor["columns"]:
        arr = np.fromfile(os.path.join(dirpath, entry["file"]), dtype=entry["dtype"])
        if arr.shape[0] != n:
            raise DataError(f"column file {entry['file']} has wrong length")
        cols.append(arr)
    target = np.fromfile(
        os.path.join(dirpath, descriptor["target"]["file"]),
        dtype=descriptor["target"]["dtype"],
    )
    if target.shape[0] != n:
        raise DataError("target file has wrong length")
    try:
        return Dataset(schema=schema, columns=tuple(cols), target=target)
    except ValueError as exc:
        raise DataError(f"corrupt dataset directory: {exc}") from exc
