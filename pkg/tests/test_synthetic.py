import numpy as np
import pytest

from carecost.schema import CATEGORICAL, NUMERIC
from carecost.synthetic import (
    SyntheticFeature,
    SyntheticSpec,
    default_synthetic_spec,
    generate_synthetic,
)


def test_generation_is_deterministic_per_seed():
    spec = default_synthetic_spec()
    a = generate_synthetic(spec, n=200, seed=9)
    b = generate_synthetic(spec, n=200, seed=9)
    c = generate_synthetic(spec, n=200, seed=10)
    assert np.array_equal(a.dataset.target, b.dataset.target)
    for ca, cb in zip(a.dataset.columns, b.dataset.columns):
        assert np.array_equal(ca, cb)
    assert not np.array_equal(a.dataset.target, c.dataset.target)


def test_noiseless_target_equals_planted_function():
    data = generate_synthetic(default_synthetic_spec(), n=500, seed=1)
    assert np.array_equal(data.dataset.target, data.planted_values())


def test_planted_tree_shape_and_leaf_values():
    spec = default_synthetic_spec(depth=2)
    data = generate_synthetic(spec, n=50, seed=0)
    truth = data.truth
    assert truth.depth() == 2
    assert truth.leaf_count == 4
    leaf_values = sorted(truth.value[truth.feature == -1])
    # base plus per-level effects 8000 and 8000/3; all four leaves distinct
    expected = sorted(
        [8000.0, 8000.0 + 8000.0 / 3.0, 16000.0, 16000.0 + 8000.0 / 3.0]
    )
    assert leaf_values == pytest.approx(expected)
    assert len(set(leaf_values)) == 4


def test_vocabulary_codes_match_generated_levels():
    data = generate_synthetic(default_synthetic_spec(levels=12), n=300, seed=4)
    spec = data.dataset.schema.feature("CCS Diagnosis Code")
    # zero-padded labels sort in numeric order, so code k decodes to L{k:03d}
    assert spec.vocabulary[0] == "L001"
    assert spec.vocabulary[-1] == "L012"
    col = data.dataset.column("CCS Diagnosis Code")
    for code in np.unique(col):
        assert spec.decode(int(code)) == f"L{int(code):03d}"


def test_noise_feature_permutation_leaves_truth_unchanged():
    data = generate_synthetic(default_synthetic_spec(), n=400, seed=2)
    X = data.dataset.feature_matrix()
    rng = np.random.default_rng(0)
    noise_col = data.dataset.schema.index_of("Noise Feature 03")
    shuffled = X.copy()
    shuffled[:, noise_col] = rng.permutation(shuffled[:, noise_col])
    assert np.array_equal(data.truth.predict(X), data.truth.predict(shuffled))


def test_numeric_feature_kind():
    spec = SyntheticSpec(
        features=(
            SyntheticFeature("Length of Stay", NUMERIC, 20),
            SyntheticFeature("Payer", CATEGORICAL, 4),
        ),
        informative=("Length of Stay",),
        depth=1,
    )
    data = generate_synthetic(spec, n=100, seed=3)
    assert data.dataset.schema.feature("Length of Stay").kind == NUMERIC
    days = data.dataset.column("Length of Stay")
    assert days.dtype == np.float64
    assert days.min() >= 1 and days.max() <= 20


def test_noise_is_added_and_clipped_nonnegative():
    spec = default_synthetic_spec(noise_sigma=250.0)
    data = generate_synthetic(spec, n=300, seed=5)
    assert not np.array_equal(data.dataset.target, data.planted_values())
    assert data.dataset.target.min() >= 0


def test_spec_validation():
    f = SyntheticFeature("A", CATEGORICAL, 4)
    with pytest.raises(ValueError):
        SyntheticSpec(features=(f,), informative=("B",), depth=1)
    with pytest.raises(ValueError):
        SyntheticSpec(features=(f,), informative=("A",), depth=2)
    with pytest.raises(ValueError):
        SyntheticFeature("X", CATEGORICAL, 1)
    with pytest.raises(ValueError):
        generate_synthetic(default_synthetic_spec(), n=0, seed=0)
