"""Feature schemas for SPARCS-style inpatient discharge records.

A schema is an ordered list of feature descriptors plus the name of the
cost target. Categorical features carry a sorted vocabulary; values are
stored in datasets as 1-based integer codes, with code 0 reserved for
values never seen at vocabulary-build time.
"""
from __future__ import annotations

import hashlib
import json
from bisect import bisect_left
from dataclasses import dataclass, field

import numpy as np

CATEGORICAL = "categorical"
NUMERIC = "numeric"

UNKNOWN_CODE = 0
UNKNOWN_TOKEN = "<UNKNOWN>"

# Default modeling features for New York SPARCS inpatient extracts. All are
# categorical except Length of Stay (integer days). The order is fixed: it
# defines column order in datasets and design matrices.
DEFAULT_FEATURES: tuple[tuple[str, str], ...] = (
    ("Operating Certificate Number", CATEGORICAL),
    ("Length of Stay", NUMERIC),
    ("CCS Diagnosis Code", CATEGORICAL),
    ("APR DRG Code", CATEGORICAL),
    ("Payment Typology 1", CATEGORICAL),
    ("Ethnicity", CATEGORICAL),
    ("APR Medical Surgical Description", CATEGORICAL),
    ("APR Risk of Mortality", CATEGORICAL),
    ("Gender", CATEGORICAL),
    ("Emergency Department Indicator", CATEGORICAL),
    ("APR Severity of Illness Code", CATEGORICAL),
)

# "Total Costs" is the facility's estimated cost of the stay; "Total Charges"
# is the billed amount. We model costs by default; pass target_name to
# ingest_csv to switch.
DEFAULT_TARGET = "Total Costs"


@dataclass(frozen=True)
class FeatureSpec:
    """One feature: name, kind, and (for categoricals) its sorted vocabulary."""

    name: str
    kind: str
    vocabulary: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in (CATEGORICAL, NUMERIC):
            raise ValueError(f"unknown feature kind {self.kind!r}")
        if self.kind == NUMERIC and self.vocabulary:
            raise ValueError(f"numeric feature {self.name!r} cannot carry a vocabulary")
        # Canonical form regardless of input order; encode() bisects on this.
        vocab = tuple(sorted(set(self.vocabulary)))
        object.__setattr__(self, "vocabulary", vocab)

    @property
    def n_codes(self) -> int:
        """Number of valid codes including the reserved UNKNOWN slot."""
        return len(self.vocabulary) + 1

    def encode(self, value: str) -> int:
        """Map a raw category string to its 1-based code; unseen values map to 0."""
        i = bisect_left(self.vocabulary, value)
        if i < len(self.vocabulary) and self.vocabulary[i] == value:
            return i + 1
        return UNKNOWN_CODE

    def encode_column(self, values) -> np.ndarray:
        """Vectorized encode of a sequence of strings to int32 codes."""
        vals = np.asarray(values, dtype=object)
        if len(self.vocabulary) == 0:
            return np.zeros(len(vals), dtype=np.int32)
        vocab = np.asarray(self.vocabulary, dtype=object)
        idx = np.searchsorted(vocab, vals)
        idx = np.clip(idx, 0, len(vocab) - 1)
        codes = np.where(vocab[idx] == vals, idx + 1, UNKNOWN_CODE)
        return codes.astype(np.int32)

    def decode(self, code: int) -> str:
        """Inverse of encode for valid codes; code 0 decodes to the UNKNOWN token."""
        if code == UNKNOWN_CODE:
            return UNKNOWN_TOKEN
        if not 1 <= code <= len(self.vocabulary):
            raise ValueError(f"code {code} out of range for feature {self.name!r}")
        return self.vocabulary[code - 1]


@dataclass(frozen=True)
class FeatureSchema:
    """Ordered feature descriptors plus the target column name."""

    features: tuple[FeatureSpec, ...]
    target_name: str = DEFAULT_TARGET

    def __post_init__(self):
        object.__setattr__(self, "features", tuple(self.features))
        names = [f.name for f in self.features]
        if len(set(names)) != len(names):
            raise ValueError("feature names must be unique")
        if self.target_name in names:
            raise ValueError("target column cannot also be a feature")

    def __len__(self) -> int:
        return len(self.features)

    @property
    def feature_names(self) -> list[str]:
        return [f.name for f in self.features]

    def index_of(self, name: str) -> int:
        for i, f in enumerate(self.features):
            if f.name == name:
                return i
        raise KeyError(name)

    def feature(self, name: str) -> FeatureSpec:
        return self.features[self.index_of(name)]

    def to_json_dict(self) -> dict:
        return {
            "target_name": self.target_name,
            "features": [
                {"name": f.name, "kind": f.kind, "vocabulary": list(f.vocabulary)}
                for f in self.features
            ],
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "FeatureSchema":
        feats = tuple(
            FeatureSpec(f["name"], f["kind"], tuple(f.get("vocabulary", ())))
            for f in doc["features"]
        )
        return cls(features=feats, target_name=doc["target_name"])

    def fingerprint(self) -> str:
        """Stable hash of the schema; models record it to guard train/serve skew."""
        blob = json.dumps(self.to_json_dict(), sort_keys=True).encode("utf-8")
        return hashlib.sha256(blob).hexdigest()[:16]
