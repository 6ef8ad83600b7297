import json

import pytest

from scf_workbench.errors import TableFormatError
from scf_workbench.prefcore import Coalition
from scf_workbench.services.lemma_engine import find_dictator_via_proof, lemma_contraction, verify_trace
from scf_workbench.services.rules import borda, dictatorship, random_table
from scf_workbench.table_store import (
    format_table,
    format_trace,
    parse_table,
    parse_trace,
    read_table,
    read_trace,
    write_table,
    write_trace,
)


class TestTableFile:
    def test_layout(self, dictator0):
        lines = format_table(dictator0).splitlines()
        assert lines[:2] == ["gssc 1", "m=3 n=2"]
        assert len(lines) == 2 + 36
        assert lines[2:5] == ["0", "0", "1"]

    @pytest.mark.parametrize("f", [dictatorship(2, 3, 3), borda(3, 2), random_table(4, 2, 3)])
    def test_round_trip(self, f, tmp_path):
        path = write_table(tmp_path / "t.gssc", f)
        assert read_table(path) == f

    def test_stable_bytes(self, dictator1, tmp_path):
        first = write_table(tmp_path / "a.gssc", dictator1).read_bytes()
        second = write_table(tmp_path / "b.gssc", read_table(tmp_path / "a.gssc")).read_bytes()
        assert first == second

    def test_truncated(self, dictator0):
        text = "".join(format_table(dictator0).splitlines(keepends=True)[:-3])
        with pytest.raises(TableFormatError) as info:
            parse_table(text)
        assert "36" in str(info.value)

    def test_bad_header(self, dictator0):
        with pytest.raises(TableFormatError) as info:
            parse_table(format_table(dictator0).replace("gssc 1", "gssc 2"))
        assert info.value.line == 1

    def test_bad_dimension(self):
        with pytest.raises(TableFormatError) as info:
            parse_table("gssc 1\nm=3 n=x\n")
        assert (info.value.line, info.value.offset) == (2, 6)

    def test_entry_out_of_range(self, dictator0):
        lines = format_table(dictator0).splitlines()
        lines[7] = "  3"
        with pytest.raises(TableFormatError) as info:
            parse_table("\n".join(lines))
        assert (info.value.line, info.value.offset) == (8, 2)

    def test_non_integer_entry(self, dictator0):
        lines = format_table(dictator0).splitlines()
        lines[2] = "a"
        with pytest.raises(TableFormatError) as info:
            parse_table("\n".join(lines))
        assert info.value.line == 3

    def test_empty(self):
        with pytest.raises(TableFormatError):
            parse_table("")

    def test_size_guard(self):
        with pytest.raises(TableFormatError):
            parse_table("gssc 1\nm=6 n=3\n")

    @pytest.mark.parametrize("dims", ["m=10000000 n=2", "m=3 n=10000000"])
    def test_huge_dimensions(self, dims):
        with pytest.raises(TableFormatError) as info:
            parse_table(f"gssc 1\n{dims}\n")
        assert info.value.line == 2

    @pytest.mark.parametrize("dims", ["m=٣ n=2", "m=3 n=²"])
    def test_non_ascii_dimension(self, dims):
        with pytest.raises(TableFormatError) as info:
            parse_table(f"gssc 1\n{dims}\n")
        assert info.value.line == 2

    @pytest.mark.parametrize("entry", ["٣", "¹", "１"])
    def test_non_ascii_entry(self, dictator0, entry):
        lines = format_table(dictator0).splitlines()
        lines[5] = entry
        with pytest.raises(TableFormatError) as info:
            parse_table("\n".join(lines))
        assert info.value.line == 6


class TestTraceFile:
    def test_round_trip_keeps_verdict(self, tmp_path):
        f = dictatorship(2, 3, 3)
        trace = find_dictator_via_proof(f).trace
        path = write_trace(tmp_path / "t.json", trace)
        loaded = read_trace(path)
        assert loaded == trace
        assert verify_trace(f, loaded)

    def test_steps_carry_order_indices(self, dictator0):
        trace = lemma_contraction(dictator0, Coalition.everyone(2)).trace
        document = json.loads(format_trace(trace))
        assert document["format"] == "gssc-trace"
        assert document["lemma"] == "CONTRACTION"
        first = document["steps"][0]
        assert first["orders"] == [first["profile_index"] % 6, first["profile_index"] // 6]
        assert document["params"]["coalition"] == [0, 1]

    def test_byte_identical(self, dictator1):
        first = format_trace(find_dictator_via_proof(dictator1).trace)
        second = format_trace(find_dictator_via_proof(dictator1).trace)
        assert first == second

    def test_invalid_json(self):
        with pytest.raises(TableFormatError) as info:
            parse_trace('{"format": "gssc-trace",\n  "version": }')
        assert info.value.line == 2

    def test_wrong_format(self, dictator0):
        document = json.loads(format_trace(find_dictator_via_proof(dictator0).trace))
        document["format"] = "other"
        with pytest.raises(TableFormatError):
            parse_trace(json.dumps(document))

    def test_unknown_justification(self, dictator0):
        document = json.loads(format_trace(find_dictator_via_proof(dictator0).trace))
        document["steps"][0]["justification"] = "HUNCH"
        with pytest.raises(TableFormatError):
            parse_trace(json.dumps(document))

    def test_mismatched_orders(self, dictator0):
        document = json.loads(format_trace(find_dictator_via_proof(dictator0).trace))
        document["steps"][0]["orders"] = [5, 5]
        with pytest.raises(TableFormatError):
            parse_trace(json.dumps(document))

    @pytest.mark.parametrize("field, value", [("changed_voter", True), ("claimed", [True, 0])])
    def test_booleans_are_not_integers(self, dictator0, field, value):
        document = json.loads(format_trace(find_dictator_via_proof(dictator0).trace))
        document["steps"][1][field] = value
        with pytest.raises(TableFormatError):
            parse_trace(json.dumps(document))

    def test_tampered_outcome_is_rejected_after_parsing(self, dictator0):
        document = json.loads(format_trace(find_dictator_via_proof(dictator0).trace))
        document["steps"][1]["outcome"] = (document["steps"][1]["outcome"] + 1) % 3
        verdict = verify_trace(dictator0, parse_trace(json.dumps(document)))
        assert verdict.failing_step == 1
