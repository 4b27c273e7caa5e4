import pytest

from src.complex_core import SimplicialComplex, boundary_simplex, simplex
from src.enumeration.universe import all_complexes, random_complexes
from src.errors import TooManyGenerators
from src.facet_format import load_records
from src.hochster import bigraded_betti
from src.models import GF2_FIELD, QQ_FIELD, Limits
from src.taylor_oracle import oracle_diff, strand_boundary, taylor_betti, taylor_strands


@pytest.fixture
def bipartite():
    return SimplicialComplex.from_facets(5, [(a, b) for a in (1, 2) for b in (3, 4, 5)])


class TestTaylorStrands:

    def test_cells_partition_the_taylor_complex(self, bipartite):
        generators, _, strands = taylor_strands(bipartite)
        cells = sum(len(group) for strand in strands.values() for group in strand.cells.values())
        assert cells == 2 ** len(generators) - 1

    def test_lcm_of_pairs(self):
        square = boundary_simplex(2).join(boundary_simplex(2))
        generators, lcm, _ = taylor_strands(square)
        assert len(generators) == 2
        assert lcm[0b11] == generators[0] | generators[1]

    def test_boundary_squares_to_zero(self, bipartite):
        _, lcm, strands = taylor_strands(bipartite)
        for strand in strands.values():
            for degree in range(3, max(strand.cells) + 1):
                product = strand_boundary(strand, degree - 1, lcm) @ strand_boundary(strand, degree, lcm)
                assert product.is_zero()

    def test_generator_cap(self, bipartite):
        with pytest.raises(TooManyGenerators):
            taylor_strands(bipartite, Limits(max_generators=2))


class TestTaylorBetti:

    @pytest.mark.parametrize("m", [2, 3, 5])
    def test_sphere_is_principal(self, m):
        assert taylor_betti(boundary_simplex(m)).entries == {(0, 0): 1, (1, m): 1}

    def test_simplex(self):
        assert taylor_betti(simplex(3)).entries == {(0, 0): 1}
        assert oracle_diff(simplex(3)) == []

    def test_bipartite(self, bipartite):
        table = taylor_betti(bipartite)
        assert table.total == 12
        assert table.row_sum(3) == 2

    def test_unchanged_by_cone_vertices(self, bipartite):
        assert taylor_betti(bipartite.join(simplex(2))).same_values(taylor_betti(bipartite))


class TestOracle:

    @pytest.mark.parametrize("field_spec", [QQ_FIELD, GF2_FIELD])
    def test_every_complex_up_to_four_vertices(self, field_spec):
        for m in range(0, 5):
            for k in all_complexes(m):
                assert oracle_diff(k, field_spec) == [], k.to_text()

    def test_table_rows(self):
        for row in load_records():
            k = SimplicialComplex.from_facets(row.m, row.facets)
            assert oracle_diff(k) == [], row.index

    def test_disagreement_is_reported(self, mocker, bipartite):
        table = bigraded_betti(bipartite)
        table.add(3, 5, 1)
        mocker.patch("src.taylor_oracle.bigraded_betti", return_value=table)
        found = oracle_diff(bipartite)
        assert len(found) == 1
        assert (found[0].i, found[0].two_j) == (3, 10)
        assert found[0].hochster_value == found[0].taylor_value + 1

    @pytest.mark.slow
    @pytest.mark.parametrize("field_spec", [QQ_FIELD, GF2_FIELD])
    def test_every_complex_on_five_vertices(self, field_spec):
        for k in all_complexes(5):
            assert oracle_diff(k, field_spec) == [], k.to_text()

    @pytest.mark.slow
    @pytest.mark.parametrize("field_spec", [QQ_FIELD, GF2_FIELD])
    def test_random_six_vertex_complexes(self, field_spec):
        samples = random_complexes(6, 500, seed=11, max_generators=12)
        assert len(samples) == 500
        for k in samples:
            assert oracle_diff(k, field_spec) == [], k.to_text()
