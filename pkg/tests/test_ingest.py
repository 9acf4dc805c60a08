import pytest

from carecost.errors import ConfigError, DataError
from carecost.ingest import (
    MALFORMED_ROW,
    IngestReport,
    build_vocabularies,
    ingest_csv,
    parse_length_of_stay,
    parse_money,
    read_mapping,
)
from carecost.schema import CATEGORICAL, NUMERIC

FEATURES = (("Payer", CATEGORICAL), ("Days", NUMERIC))


def write_csv(path, lines):
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def test_parse_money():
    assert parse_money("$12,652.00") == 12652.0
    assert parse_money("1 234") == 1234.0
    assert parse_money("7") == 7.0
    assert parse_money("") is None
    assert parse_money("abc") is None
    assert parse_money("inf") is None


def test_parse_length_of_stay():
    assert parse_length_of_stay("5") == 5.0
    assert parse_length_of_stay("120 +") == 120.0
    assert parse_length_of_stay("120+") == 120.0
    assert parse_length_of_stay("-3") is None
    assert parse_length_of_stay("two") is None
    assert parse_length_of_stay("nan") is None


def test_ingest_happy_path(tmp_path):
    csv_path = write_csv(
        tmp_path / "rows.csv",
        [
            "Payer,Days,Cost",
            "medicare,3,\"$1,200.50\"",
            "medicaid,120 +,$900.00",
            "medicare,1,450",
        ],
    )
    ds, report = ingest_csv(csv_path, features=FEATURES, target_name="Cost")
    assert report.rows_read == 3 and report.rows_kept == 3
    payer = ds.schema.feature("Payer")
    assert payer.vocabulary == ("medicaid", "medicare")
    assert ds.column("Payer").tolist() == [2, 1, 2]
    assert ds.column("Days").tolist() == [3.0, 120.0, 1.0]
    assert ds.target.tolist() == [1200.50, 900.0, 450.0]


def test_ingest_drop_accounting(tmp_path):
    csv_path = write_csv(
        tmp_path / "rows.csv",
        [
            "Payer,Days,Cost",
            "medicare,3,$100",  # kept
            ",4,$100",  # missing payer
            "medicare,oops,$100",  # bad days
            "medicare,2,-5",  # negative cost
            "too,many,fields,here",  # malformed
            "medicaid,5,$250",  # kept
        ],
    )
    ds, report = ingest_csv(csv_path, features=FEATURES, target_name="Cost")
    assert report.rows_read == 6
    assert report.rows_kept == 2
    assert report.rows_dropped_missing == 1
    assert report.rows_dropped_unparseable == 3
    assert report.drops_by_column == {
        "Payer": 1,
        "Days": 1,
        "Cost": 1,
        MALFORMED_ROW: 1,
    }
    report.validate()
    assert ds.row_count == 2


def test_row_missing_and_bad_counts_as_missing(tmp_path):
    csv_path = write_csv(
        tmp_path / "rows.csv",
        ["Payer,Days,Cost", "medicare,1,$10", ",junk,$10"],
    )
    _, report = ingest_csv(csv_path, features=FEATURES, target_name="Cost")
    assert report.rows_dropped_missing == 1
    assert report.rows_dropped_unparseable == 0
    assert report.drops_by_column == {"Payer": 1, "Days": 1}


def test_header_mapping(tmp_path):
    csv_path = write_csv(
        tmp_path / "rows.csv",
        ["payer type,los,total charge,total cost", "medicare,2,$9,$5"],
    )
    mapping = {"Payer": "payer type", "Days": "los", "Cost": "total cost"}
    ds, _ = ingest_csv(csv_path, mapping=mapping, features=FEATURES, target_name="Cost")
    assert ds.target.tolist() == [5.0]


def test_missing_column_names_the_column(tmp_path):
    csv_path = write_csv(tmp_path / "rows.csv", ["Payer,Cost", "a,$1"])
    with pytest.raises(DataError, match="Days"):
        ingest_csv(csv_path, features=FEATURES, target_name="Cost")


def test_empty_and_unusable_files(tmp_path):
    empty = tmp_path / "empty.csv"
    empty.write_text("", encoding="utf-8")
    with pytest.raises(DataError):
        ingest_csv(empty, features=FEATURES, target_name="Cost")
    only_bad = write_csv(tmp_path / "bad.csv", ["Payer,Days,Cost", "a,zzz,$1"])
    with pytest.raises(DataError, match="no usable rows"):
        ingest_csv(only_bad, features=FEATURES, target_name="Cost")
    with pytest.raises(DataError):
        ingest_csv(tmp_path / "missing.csv", features=FEATURES, target_name="Cost")


def test_report_validate_catches_miscounts():
    report = IngestReport(rows_read=3, rows_kept=1)
    with pytest.raises(ValueError):
        report.validate()


def test_read_mapping(tmp_path):
    path = tmp_path / "map.cfg"
    path.write_text(
        "# comment\n\nPayer = payer type\nCost=total cost\n", encoding="utf-8"
    )
    assert read_mapping(path) == {"Payer": "payer type", "Cost": "total cost"}
    bad = tmp_path / "bad.cfg"
    bad.write_text("just words\n", encoding="utf-8")
    with pytest.raises(ConfigError):
        read_mapping(bad)
    with pytest.raises(ConfigError):
        read_mapping(tmp_path / "absent.cfg")


def test_build_vocabularies():
    rows = [{"Payer": "b"}, {"Payer": "a"}, {"Payer": "b"}]
    schema = build_vocabularies(rows, features=(("Payer", CATEGORICAL),), target_name="Cost")
    assert schema.feature("Payer").vocabulary == ("a", "b")
    with pytest.raises(DataError):
        build_vocabularies([], features=(("Payer", CATEGORICAL),), target_name="Cost")
