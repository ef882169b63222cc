from __future__ import annotations

import random

import pytest

from fairaudit import (
    Definition,
    InputError,
    PredictionRecord,
    SchemaMapping,
    parse_dataset,
    split_by_group,
    validate_dataset,
)

from .conftest import MEN, WOMEN

MAPPING = SchemaMapping(sensitive="gender", y_true="actual", y_pred="predicted")


class TestParseDataset:
    def test_golden_fixture_reproduces_subgroup_matrices(self, claims_csv_text):
        records = parse_dataset(claims_csv_text, MAPPING)
        assert len(records) == 63
        grouped = split_by_group(records, favourable=0)
        assert grouped.matrices() == {"men": MEN, "women": WOMEN}

    def test_header_only_file_is_an_error(self):
        with pytest.raises(InputError, match="no records"):
            parse_dataset("gender,actual,predicted\n", MAPPING)

    def test_shuffled_rows_parse_to_the_same_multiset(self, claims_csv_text):
        lines = claims_csv_text.strip().splitlines()
        header, rows = lines[0], lines[1:]
        random.Random(3).shuffle(rows)
        shuffled = "\n".join([header, *rows]) + "\n"

        def key(r: PredictionRecord):
            return (r.sensitive, r.y_true, r.y_pred, r.score)

        original = sorted(map(key, parse_dataset(claims_csv_text, MAPPING)))
        reordered = sorted(map(key, parse_dataset(shuffled, MAPPING)))
        assert original == reordered

    def test_missing_column_is_named(self):
        with pytest.raises(InputError, match="'actual'"):
            parse_dataset("gender,predicted\nmen,0\n", MAPPING)

    def test_unparseable_label_names_row_and_column(self):
        text = "gender,actual,predicted\nmen,1,1\nmen,yes,0\n"
        with pytest.raises(InputError, match=r"row 3.*'actual'.*'yes'"):
            parse_dataset(text, MAPPING)

    def test_score_outside_range_names_the_row(self):
        mapping = SchemaMapping(sensitive="g", score="s")
        with pytest.raises(InputError, match="row 2"):
            parse_dataset("g,s\na,1.7\n", mapping)

    def test_score_must_be_numeric(self):
        mapping = SchemaMapping(sensitive="g", score="s")
        with pytest.raises(InputError, match="not a number"):
            parse_dataset("g,s\na,high\n", mapping)

    def test_custom_label_spellings(self):
        mapping = SchemaMapping(
            sensitive="g",
            y_true="t",
            y_pred="p",
            positive_label="fraud",
            negative_label="legit",
        )
        records = parse_dataset("g,t,p\na,fraud,legit\nb,legit,legit\n", mapping)
        assert records[0].y_true == 1 and records[0].y_pred == 0
        assert records[1].y_true == 0

    def test_delimiter_autodetect_semicolon_and_tab(self):
        for delim in (";", "\t"):
            text = delim.join(["gender", "actual", "predicted"]) + "\n" + delim.join(["a", "1", "0"]) + "\n"
            records = parse_dataset(text, MAPPING)
            assert records[0].sensitive == "a"

    def test_explicit_delimiter_override(self):
        # Commas inside the sensitive value, semicolon as real delimiter.
        mapping = SchemaMapping(
            sensitive="gender", y_true="actual", y_pred="predicted", delimiter=";"
        )
        records = parse_dataset("gender;actual;predicted\nx,y;1;0\n", mapping)
        assert records[0].sensitive == "x,y"

    def test_ragged_row_is_an_error(self):
        with pytest.raises(InputError, match="row 2"):
            parse_dataset("gender,actual,predicted\nmen,1\n", MAPPING)

    def test_parse_serialize_parse_is_idempotent(self, claims_csv_text):
        records = parse_dataset(claims_csv_text, MAPPING)
        rebuilt = "gender,actual,predicted\n" + "".join(
            f"{r.sensitive},{r.y_true},{r.y_pred}\n" for r in records
        )
        again = parse_dataset(rebuilt, MAPPING)
        assert [
            (r.sensitive, r.y_true, r.y_pred) for r in records
        ] == [(r.sensitive, r.y_true, r.y_pred) for r in again]


class TestSchemaMapping:
    def test_requires_some_prediction_column(self):
        with pytest.raises(InputError):
            SchemaMapping(sensitive="g", y_true="t")

    def test_rejects_duplicate_columns(self):
        with pytest.raises(InputError, match="more than once"):
            SchemaMapping(sensitive="g", y_pred="g")

    def test_from_dict_rejects_unknown_fields(self):
        with pytest.raises(InputError, match="unknown schema field"):
            SchemaMapping.from_dict({"sensitive": "g", "y_pred": "p", "nope": 1})

    def test_dict_round_trip(self):
        mapping = SchemaMapping(
            sensitive="g", y_pred="p", legitimate=("a", "b"), favourable=0
        )
        assert SchemaMapping.from_dict(mapping.to_dict()) == mapping


class TestValidateDataset:
    def test_missing_ground_truth_finding(self):
        records = [
            PredictionRecord(sensitive="a", y_pred=1),
            PredictionRecord(sensitive="b", y_pred=0),
        ]
        findings = validate_dataset(records, [Definition.EQUALISED_ODDS])
        assert any("ground truth required" in f for f in findings)

    def test_complete_records_yield_no_findings(self):
        records = [
            PredictionRecord(sensitive=g, y_true=t, y_pred=p)
            for g in ("a", "b")
            for t in (0, 1)
            for p in (0, 1)
            for _ in range(3)
        ]
        assert validate_dataset(records, [Definition.EQUALISED_ODDS]) == []

    def test_small_group_warning(self):
        records = [
            PredictionRecord(sensitive="a", y_true=1, y_pred=1)
            for _ in range(10)
        ] + [PredictionRecord(sensitive="b", y_true=0, y_pred=0)]
        findings = validate_dataset(records, [], min_group=5)
        assert any("only 1 record" in f for f in findings)
