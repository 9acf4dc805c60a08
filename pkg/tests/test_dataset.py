import numpy as np
import pytest

from carecost.dataset import Dataset, SplitConfig, load_dataset, one_hot, save_dataset, split
from carecost.errors import DataError
from carecost.schema import CATEGORICAL, NUMERIC, FeatureSchema, FeatureSpec


def tiny_dataset():
    schema = FeatureSchema(
        features=(
            FeatureSpec("Payer", CATEGORICAL, ("medicaid", "medicare", "private")),
            FeatureSpec("Days", NUMERIC, ()),
        ),
        target_name="Cost",
    )
    payer = np.array([1, 2, 0, 3, 1], dtype=np.int32)
    days = np.array([1.0, 4.0, 2.0, 8.0, 3.0])
    cost = np.array([100.0, 400.0, 150.0, 900.0, 250.0])
    return Dataset(schema=schema, columns=(payer, days), target=cost)


def test_columns_are_read_only():
    ds = tiny_dataset()
    with pytest.raises(ValueError):
        ds.columns[0][0] = 2
    with pytest.raises(ValueError):
        ds.target[0] = 0.0


def test_row_count_and_column_lookup():
    ds = tiny_dataset()
    assert ds.row_count == 5
    assert ds.column("Days")[1] == 4.0
    with pytest.raises(KeyError):
        ds.column("Nope")


def test_validation_rejects_bad_shapes_and_codes():
    ds = tiny_dataset()
    with pytest.raises(ValueError):
        Dataset(schema=ds.schema, columns=(ds.columns[0][:3], ds.columns[1]), target=ds.target)
    bad_codes = np.array([1, 2, 99, 3, 1], dtype=np.int32)
    with pytest.raises(ValueError):
        Dataset(schema=ds.schema, columns=(bad_codes, ds.columns[1]), target=ds.target)
    with pytest.raises(ValueError):
        Dataset(schema=ds.schema, columns=ds.columns, target=-np.abs(ds.target))


def test_take_preserves_order_and_values():
    ds = tiny_dataset()
    sub = ds.take(np.array([4, 0, 2]))
    assert sub.row_count == 3
    assert sub.column("Days").tolist() == [3.0, 1.0, 2.0]
    assert sub.target.tolist() == [250.0, 100.0, 150.0]


def test_decode_row():
    ds = tiny_dataset()
    row = ds.decode_row(3)
    assert row["Payer"] == "private"
    assert row["Days"] == 8.0


def test_feature_matrix_layout():
    ds = tiny_dataset()
    X = ds.feature_matrix()
    assert X.shape == (5, 2)
    assert X[:, 0].tolist() == [1.0, 2.0, 0.0, 3.0, 1.0]
    assert X[:, 1].tolist() == ds.column("Days").tolist()


def test_split_sizes_disjoint_and_seeded():
    ds = tiny_dataset()
    train, test = split(ds, SplitConfig(test_fraction=0.4, seed=3))
    # 5 * 0.4 rounds half-up to 2 test rows
    assert test.row_count == 2 and train.row_count == 3
    again_train, again_test = split(ds, SplitConfig(test_fraction=0.4, seed=3))
    assert again_test.target.tolist() == test.target.tolist()
    other_train, other_test = split(ds, SplitConfig(test_fraction=0.4, seed=4))
    assert sorted(test.target.tolist() + train.target.tolist()) == sorted(ds.target.tolist())
    assert sorted(other_test.target.tolist() + other_train.target.tolist()) == sorted(
        ds.target.tolist()
    )


def test_split_rejects_degenerate_fractions():
    ds = tiny_dataset()
    with pytest.raises(ValueError):
        SplitConfig(test_fraction=0.0)
    with pytest.raises(ValueError):
        split(ds.take(np.array([0])), SplitConfig(test_fraction=0.5))


def test_one_hot_dense_layout():
    ds = tiny_dataset()
    X, labels = one_hot(ds)
    # payer block: unknown slot + 3 vocabulary entries, then the numeric column
    assert X.shape == (5, 5)
    assert labels[0] == "Payer=<UNKNOWN>"
    assert labels[1:4] == ["Payer=medicaid", "Payer=medicare", "Payer=private"]
    assert labels[4] == "Days"
    assert X[:, 0].tolist() == [0, 0, 1, 0, 0]
    assert X[:, 1].tolist() == [1, 0, 0, 0, 1]
    assert X[:, 4].tolist() == ds.column("Days").tolist()
    assert (X[:, :4].sum(axis=1) == 1).all()


def test_one_hot_sparse_matches_dense():
    ds = tiny_dataset()
    dense, labels_d = one_hot(ds)
    sparse, labels_s = one_hot(ds, sparse=True)
    assert labels_d == labels_s
    assert np.array_equal(sparse.toarray(), dense)


def test_save_load_round_trip(tmp_path):
    ds = tiny_dataset()
    out = tmp_path / "data"
    save_dataset(ds, out)
    back = load_dataset(out)
    assert back.schema == ds.schema
    for a, b in zip(back.columns, ds.columns):
        assert np.array_equal(a, b)
    assert np.array_equal(back.target, ds.target)


def test_save_is_byte_deterministic(tmp_path):
    ds = tiny_dataset()
    a, b = tmp_path / "a", tmp_path / "b"
    save_dataset(ds, a)
    save_dataset(ds, b)
    for name in sorted(p.name for p in a.iterdir()):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_load_rejects_tampered_directory(tmp_path):
    ds = tiny_dataset()
    out = tmp_path / "data"
    save_dataset(ds, out)
    target_file = out / "target.bin"
    target_file.write_bytes(target_file.read_bytes()[:-8])
    with pytest.raises(DataError):
        load_dataset(out)
    with pytest.raises(DataError):
        load_dataset(tmp_path / "missing")
