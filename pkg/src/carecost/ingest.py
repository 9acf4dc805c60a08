"""CSV ingestion and cleaning for SPARCS-style discharge extracts.

Cleaning rules (documented, deterministic):
  * Money cells like "$12,652.00" lose '$', ',' and spaces before parsing.
  * Length of Stay "120 +" is the SPARCS top-code; it maps to 120.
  * A row missing any mapped feature or the target is dropped (no
    imputation); a row whose cells cannot be parsed is dropped and tallied
    separately. Ingestion never raises on a malformed row.
  * Categorical vocabularies are the sorted distinct strings observed among
    kept rows, so codes are stable across runs and machines.

The CSV dialect is comma-separated, double-quote quoted, UTF-8, header
required. Two passes are made over the file: one to validate rows and
collect vocabularies, one to encode.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset
from .errors import ConfigError, DataError
from .schema import CATEGORICAL, DEFAULT_FEATURES, DEFAULT_TARGET, FeatureSchema, FeatureSpec

# Pseudo-column name used to tally rows whose field count does not match the header.
MALFORMED_ROW = "<malformed row>"


def parse_money(text: str) -> float | None:
    """Parse a dollar cell; returns None when unparseable."""
    cleaned = text.replace("$", "").replace(",", "").replace(" ", "")
    try:
        value = float(cleaned)
    except ValueError:
        return None
    return value if np.isfinite(value) else None


def parse_length_of_stay(text: str) -> float | None:
    """Parse a stay length in days; the top-coded "120 +" maps to 120."""
    cleaned = text.strip()
    if cleaned.endswith("+"):
        cleaned = cleaned[:-1].strip()
    try:
        value = float(cleaned)
    except ValueError:
        return None
    if not np.isfinite(value) or value < 0:
        return None
    return value


@dataclass
class IngestReport:
    """Row accounting for one ingest run.

    rows_read = rows_kept + rows_dropped_missing + rows_dropped_unparseable.
    drops_by_column tallies every offending column of every dropped row.
    """

    rows_read: int = 0
    rows_kept: int = 0
    rows_dropped_missing: int = 0
    rows_dropped_unparseable: int = 0
    drops_by_column: dict = field(default_factory=dict)

    def validate(self) -> None:
        total = self.rows_kept + self.rows_dropped_missing + self.rows_dropped_unparseable
        if total != self.rows_read:
            raise ValueError("ingest report does not account for every row")

    def to_json_dict(self) -> dict:
        return {
            "rows_read": self.rows_read,
            "rows_kept": self.rows_kept,
            "rows_dropped_missing": self.rows_dropped_missing,
            "rows_dropped_unparseable": self.rows_dropped_unparseable,
            "drops_by_column": dict(sorted(self.drops_by_column.items())),
        }


def read_mapping(path) -> dict[str, str]:
    """Read a plain key=value config file (``#`` starts a comment line)."""
    if not os.path.exists(path):
        raise ConfigError(f"mapping file not found: {path}")
    mapping: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            mapping[key.strip()] = value.strip()
    return mapping


def build_vocabularies(
    rows,
    features=DEFAULT_FEATURES,
    target_name: str = DEFAULT_TARGET,
) -> FeatureSchema:
    """Build a schema whose categorical vocabularies are the sorted distinct
    values observed in ``rows`` (an iterable of name→string dicts)."""
    observed: dict[str, set] = {name: set() for name, kind in features if kind == CATEGORICAL}
    count = 0
    for row in rows:
        count += 1
        for name in observed:
            value = str(row[name]).strip()
            if value:
                observed[name].add(value)
    if count == 0:
        raise DataError("cannot build vocabularies from zero rows")
    specs = tuple(
        FeatureSpec(name, kind, tuple(sorted(observed[name])) if kind == CATEGORICAL else ())
        for name, kind in features
    )
    return FeatureSchema(features=specs, target_name=target_name)


def _parse_cell(name: str, kind: str, raw: str, target: bool):
    """Returns (status, value): status in {'ok', 'missing', 'bad'}."""
    text = raw.strip()
    if not text:
        return "missing", None
    if target:
        value = parse_money(text)
        if value is None or value < 0:
            return "bad", None
        return "ok", value
    if kind == CATEGORICAL:
        return "ok", text
    value = parse_length_of_stay(text)
    if value is None:
        return "bad", None
    return "ok", value


class _RowScanner:
    """Shared per-row validation used by both ingest passes."""

    def __init__(self, header, features, target_name, mapping):
        self.features = features
        self.target_name = target_name
        positions = {}
        wanted = [name for name, _ in features] + [target_name]
        for name in wanted:
            source = mapping.get(name, name)
            if source not in header:
                raise DataError(f"mapped column {source!r} (for {name!r}) not in CSV header")
            positions[name] = header.index(source)
        self.positions = positions
        self.n_fields = len(header)

    def scan(self, row):
        """Returns (values_by_name | None, missing_cols, bad_cols)."""
        if len(row) != self.n_fields:
            return None, [], [MALFORMED_ROW]
        values, missing, bad = {}, [], []
        for name, kind in self.features:
            status, value = _parse_cell(name, kind, row[self.positions[name]], target=False)
            if status == "ok":
                values[name] = value
            elif status == "missing":
                missing.append(name)
            else:
                bad.append(name)
        status, value = _parse_cell(self.target_name, "", row[self.positions[self.target_name]], target=True)
        if status == "ok":
            values[self.target_name] = value
        elif status == "missing":
            missing.append(self.target_name)
        else:
            bad.append(self.target_name)
        if missing or bad:
            return None, missing, bad
        return values, [], []


def _open_csv(path):
    if not os.path.exists(path):
        raise DataError(f"input file not found: {path}")
    return open(path, "r", encoding="utf-8", newline="")


def ingest_csv(
    path,
    mapping: dict[str, str] | None = None,
    features=DEFAULT_FEATURES,
    target_name: str = DEFAULT_TARGET,
) -> tuple[Dataset, IngestReport]:
    """Parse, clean, and encode a CSV into a columnar Dataset plus a report.

    ``mapping`` maps schema feature names (and the target name) to CSV column
    names; unmapped names default to themselves. Missing mapped columns are a
    hard error naming the column; malformed rows are dropped and tallied.
    """
    mapping = dict(mapping or {})
    report = IngestReport()

    # Pass 1: validate rows, count drops, and collect categorical values.
    observed: dict[str, set] = {name: set() for name, kind in features if kind == CATEGORICAL}
    with _open_csv(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise DataError(f"{path}: empty file, header row required")
        scanner = _RowScanner(header, features, target_name, mapping)
        for row in reader:
            report.rows_read += 1
            values, missing, bad = scanner.scan(row)
            if values is None:
                if missing:
                    report.rows_dropped_missing += 1
                else:
                    report.rows_dropped_unparseable += 1
                for col in missing + bad:
                    report.drops_by_column[col] = report.drops_by_column.get(col, 0) + 1
                continue
            report.rows_kept += 1
            for name in observed:
                observed[name].add(values[name])

    if report.rows_kept == 0:
        raise DataError(f"{path}: no usable rows after cleaning")

    specs = tuple(
        FeatureSpec(name, kind, tuple(sorted(observed[name])) if kind == CATEGORICAL else ())
        for name, kind in features
    )
    schema = FeatureSchema(features=specs, target_name=target_name)

    # Pass 2: encode kept rows into preallocated columns.
    n = report.rows_kept
    columns = []
    for name, kind in features:
        columns.append(np.zeros(n, dtype=np.int32 if kind == CATEGORICAL else np.float64))
    target = np.zeros(n, dtype=np.float64)

    i = 0
    with _open_csv(path) as fh:
        reader = csv.reader(fh)
        header = next(reader)
        scanner = _RowScanner(header, features, target_name, mapping)
        for row in reader:
            values, _, _ = scanner.scan(row)
            if values is None:
                continue
            for spec, col in zip(schema.features, columns):
                if spec.kind == CATEGORICAL:
                    col[i] = spec.encode(values[spec.name])
                else:
                    col[i] = values[spec.name]
            target[i] = values[target_name]
            i += 1

    report.validate()
    return Dataset(schema=schema, columns=tuple(columns), target=target), report
