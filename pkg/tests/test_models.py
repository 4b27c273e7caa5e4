import json

import pytest

from src.errors import BadField
from src.models import (
    GF2_FIELD,
    QQ_FIELD,
    BettiTable,
    CensusRecord,
    FieldSpec,
    Proposition,
    TightDecomposition,
    all_hold,
    failures,
)


class TestFieldSpec:

    def test_parse_rationals(self):
        assert FieldSpec.parse("Q") == QQ_FIELD
        assert FieldSpec.parse(" QQ ").is_rational

    def test_parse_prime(self):
        assert FieldSpec.parse("Fp:2") == GF2_FIELD
        assert str(FieldSpec.parse("Fp:7")) == "Fp:7"

    @pytest.mark.parametrize("text", ["Fp:4", "Fp:1", "Fp:x", "R", "F2"])
    def test_bad_field(self, text):
        with pytest.raises(BadField):
            FieldSpec.parse(text)

    def test_composite_constructor(self):
        with pytest.raises(BadField):
            FieldSpec.prime(9)


class TestBettiTable:

    @pytest.fixture
    def two_points(self):
        return BettiTable(m=2, field=QQ_FIELD, entries={(0, 0): 1, (1, 2): 1, (2, 2): 0})

    def test_zero_entries_are_dropped(self, two_points):
        assert two_points.entries == {(0, 0): 1, (1, 2): 1}
        two_points.add(3, 3, 0)
        assert (3, 3) not in two_points.entries

    def test_sums(self, two_points):
        assert two_points.row_sums() == [1, 1]
        assert two_points.total == 2
        assert two_points.get(1, 1) == 0

    def test_empty_table(self):
        table = BettiTable(m=0, field=QQ_FIELD)
        assert table.row_sums() == []
        assert str(table) == "(empty table)"

    def test_serialized_labels_double_j(self, two_points):
        data = json.loads(two_points.to_json())
        assert data["entries"][1] == {"i": 1, "2j": 4, "beta": 1}
        assert data["row_sums"] == [1, 1]
        assert data["field"] == "Q"

    def test_from_dict_rejects_odd_degree(self):
        data = {"m": 2, "field": "Q", "entries": [{"i": 1, "2j": 3, "beta": 1}]}
        with pytest.raises(ValueError):
            BettiTable.from_dict(data)

    def test_from_dict_keeps_field(self, two_points):
        data = two_points.to_dict()
        data["field"] = "Fp:3"
        restored = BettiTable.from_dict(data)
        assert restored.field == FieldSpec.prime(3)
        assert restored.same_values(two_points)

    def test_layout(self, two_points):
        assert str(two_points).splitlines() == [
            "         0  1",
            "total:   1  1",
            "    0:   1  .",
            "    1:   .  1",
        ]


class TestTightDecomposition:

    def test_blocks_are_normalized(self):
        decomposition = TightDecomposition(2, (1, 3, 2))
        assert decomposition.blocks == (2, 3)
        assert decomposition.m == 7
        assert decomposition.describe() == "Δ^[2] * ∂Δ^[2] * ∂Δ^[3]"

    def test_sphere_join_only(self):
        assert TightDecomposition(0, (2, 2)).describe() == "∂Δ^[2] * ∂Δ^[2]"
        assert TightDecomposition(0, (2, 2)).describe(ascii_only=True) == "dD^[2] * dD^[2]"

    def test_irrelevant(self):
        assert TightDecomposition(0).describe() == "Δ^[0]"
        assert TightDecomposition(0, (1,)) == TightDecomposition(0)

    def test_negative_simplex(self):
        with pytest.raises(ValueError):
            TightDecomposition(-1)


class TestPropositions:

    def test_failures(self):
        results = [Proposition("a", True), Proposition("b", False, "3 < 4")]
        assert not all_hold(results)
        assert failures(results) == [results[1]]
        assert str(results[1]) == "[VIOLATED] b: 3 < 4"
        assert str(results[0]) == "[ok] a"


class TestCensusRecord:

    def test_dict_round_trip(self):
        record = CensusRecord(index="3_3", m=3, facets=((1, 2), (1, 3), (2, 3)), f_vector=(3, 3), mdim=1)
        data = record.to_dict()
        assert "d_value" not in data
        assert data["facets"] == [[1, 2], [1, 3], [2, 3]]
        assert CensusRecord.from_dict(data) == record

    def test_d_value_is_kept(self):
        record = CensusRecord(index="2_1", m=2, facets=((1,), (2,)), f_vector=(2,), mdim=0, d_value=2)
        assert CensusRecord.from_dict(record.to_dict()).d_value == 2
