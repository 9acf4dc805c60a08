import csv
import json
import os

import numpy as np
import pytest

from carecost import default_synthetic_spec, generate_synthetic
from carecost.schema import CATEGORICAL, DEFAULT_FEATURES, DEFAULT_TARGET


def write_discharge_csv(path, dataset, extra_rows=()):
    """Render a dataset as a CSV shaped like the raw discharge extract.

    Headers are the full default feature list plus the cost column. Features
    the dataset lacks get deterministic filler values so the standard ingest
    schema applies unchanged; extra malformed rows can be appended to
    exercise drop accounting.
    """
    present = set(dataset.schema.feature_names)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([name for name, _ in DEFAULT_FEATURES] + [DEFAULT_TARGET])
        for i in range(dataset.row_count):
            decoded = dataset.decode_row(i)
            row = []
            for name, kind in DEFAULT_FEATURES:
                if name in present:
                    row.append(decoded[name])
                elif kind == CATEGORICAL:
                    row.append("ABC"[i % 3])
                else:
                    row.append(str(i % 7 + 1))
            row.append(f"{dataset.target[i]:.2f}")
            writer.writerow(row)
        for row in extra_rows:
            writer.writerow(row)
    return path


@pytest.fixture()
def small_synthetic():
    return generate_synthetic(default_synthetic_spec(), n=300, seed=42)


@pytest.fixture()
def noisy_synthetic():
    spec = default_synthetic_spec(noise_sigma=500.0)
    return generate_synthetic(spec, n=400, seed=7)


@pytest.fixture()
def discharge_csv(tmp_path, small_synthetic):
    return write_discharge_csv(tmp_path / "rows.csv", small_synthetic.dataset)


def example_row(model_schema, overrides=None):
    """A raw payload covering every schema field, optionally overridden."""
    row = {}
    for spec in model_schema.features:
        if spec.kind == CATEGORICAL:
            row[spec.name] = spec.vocabulary[0] if spec.vocabulary else "A"
        else:
            row[spec.name] = 2.0
    row.update(overrides or {})
    return row


def load_json(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
