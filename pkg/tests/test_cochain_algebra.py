import pytest

from pathhom.chain_complex import homology_summary, omega_class_basis, omega_general
from pathhom.cochain_algebra import (CochainStructure, cochain_dimension, cochain_structure_classes,
                                     cochain_structure_snf, duality_matrix, pairing,
                                     pairing_with_relation, relation_set, relation_set_general,
                                     structure_census)
from pathhom.digraph_core import enumerate_paths
from pathhom.errors import LevelMismatch, MultisquarePresent
from pathhom.exact_linalg import F2, Q
from pathhom.fixtures import builtin_fixture
from pathhom.schemas import CochainReport


def _column_set(m):
    return {m.column(j) for j in range(m.cols)}


class TestRelations:
    def test_g_main_has_only_thick_relations(self, g_main):
        relations = relation_set(g_main, 4)
        assert len(relations.thick_relations) == 15
        assert relations.thin_relations == ()
        assert relations.to_matrix().shape == (12, 15)

    def test_g_prime_thin_relations(self, g_prime):
        relations = relation_set(g_prime, 4)
        assert len(relations.thin_relations) == 6

    def test_triangle_has_none(self, triangle):
        relations = relation_set(triangle, 2)
        assert relations.thick_relations == ()
        assert relations.thin_relations == ()

    def test_refuses_multisquares(self, multisquare):
        with pytest.raises(MultisquarePresent):
            relation_set(multisquare, 2)

    def test_general_matches_short_moves(self, fixture_digraph):
        for n in range(2, 5):
            general = relation_set_general(fixture_digraph, n)
            moves = relation_set(fixture_digraph, n).to_matrix()
            assert _column_set(general) == _column_set(moves)

    def test_general_multisquare_column(self, multisquare):
        assert relation_set_general(multisquare, 2).entries == ((1,), (1,), (1,))


class TestStructure:
    def test_g_main_two_torsion(self, g_main):
        snf = cochain_structure_snf(g_main, 4)
        assert (snf.free_rank, snf.torsion) == (0, (2,))
        assert snf.describe() == "Z/2Z"
        classes = cochain_structure_classes(g_main, 4)
        assert classes.same_structure(snf)
        assert classes.torsion_representatives == (0,)

    def test_arrows_are_free(self, fixture_digraph):
        snf = cochain_structure_snf(fixture_digraph, 1)
        assert snf.free_rank == fixture_digraph.num_arrows
        assert snf.torsion == ()

    def test_cube_and_grid(self):
        assert cochain_structure_snf(builtin_fixture("cube"), 3).describe() == "Z^1"
        assert cochain_structure_snf(builtin_fixture("grid"), 3).describe() == "0"

    def test_describe(self):
        assert CochainStructure(2, 2, (2,)).describe() == "Z^2 + Z/2Z"

    def test_multisquare_has_no_class_structure(self, multisquare):
        census = structure_census(multisquare, 2)
        assert census['snf'].describe() == "Z^2"
        assert census['classes'] is None
        assert census['agree'] is None
        with pytest.raises(MultisquarePresent):
            cochain_structure_classes(multisquare, 2)

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_ranks_match_omega_dimensions(self, small_corpus, multisquare, n):
        for g in list(small_corpus) + [multisquare]:
            snf = cochain_structure_snf(g, n)
            even = sum(1 for d in snf.torsion if d % 2 == 0)
            assert snf.free_rank == omega_general(g, n, Q).dimension
            assert omega_general(g, n, F2).dimension == snf.free_rank + even

    def test_methods_agree_on_corpus(self, small_corpus):
        for g in small_corpus:
            for n in range(5):
                census = structure_census(g, n)
                assert census['agree'] is True

    def test_torsion_only_from_odd_classes(self, fixture_digraph):
        for n in range(5):
            snf = cochain_structure_snf(fixture_digraph, n)
            assert set(snf.torsion) <= {2}

    @pytest.mark.parametrize("f", [Q, F2])
    def test_dimension_matches_omega(self, fixture_digraph, f):
        dims = homology_summary(fixture_digraph, f).omega_dims
        assert [cochain_dimension(fixture_digraph, n, f) for n in range(len(dims))] == list(dims)

    def test_report(self, g_main):
        report = cochain_structure_snf(g_main, 4).to_report(g_main, True)
        assert report.torsion == [2]
        assert report.torsion_representatives == ["x0,x1^0,x2^0,x3^0,x4"]
        assert CochainReport.model_validate_json(report.model_dump_json()) == report


class TestPairing:
    def test_square(self, square):
        (v,) = omega_class_basis(square, 2, Q).vectors
        assert pairing(v, (0, 1, 3), square) == 1
        assert pairing(v, (0, 2, 3), square) == -1

    def test_level_mismatch(self, square):
        (v,) = omega_class_basis(square, 2, Q).vectors
        with pytest.raises(LevelMismatch):
            pairing(v, (0, 1), square)

    def test_not_a_path(self, square):
        (v,) = omega_class_basis(square, 2, Q).vectors
        with pytest.raises(ValueError):
            pairing(v, (0, 3, 1), square)

    @pytest.mark.parametrize("f", [Q, F2])
    def test_chains_annihilate_relations(self, fixture_digraph, f):
        for n in range(2, 5):
            relations = relation_set_general(fixture_digraph, n)
            columns = [relations.column(j) for j in range(relations.cols)]
            for v in omega_general(fixture_digraph, n, f).vectors:
                assert all(pairing_with_relation(v, column) == 0 for column in columns)

    def test_multisquare_chains_annihilate_relations(self, multisquare):
        column = relation_set_general(multisquare, 2).column(0)
        for v in omega_general(multisquare, 2, Q).vectors:
            assert pairing_with_relation(v, column) == 0

    def test_class_basis_is_dual_to_representatives(self, fixture_digraph):
        for n in range(5):
            structure = cochain_structure_classes(fixture_digraph, n)
            basis = omega_class_basis(fixture_digraph, n, Q)
            paths = enumerate_paths(fixture_digraph, n)
            reps = [paths[i] for i in structure.free_representatives]
            matrix = duality_matrix(basis.vectors, reps, fixture_digraph)
            size = len(reps)
            assert matrix == [[int(i == j) for j in range(size)] for i in range(size)]

    def test_g_main_torsion_class_mod_two(self, g_main):
        (v,) = omega_class_basis(g_main, 4, F2).vectors
        rep = enumerate_paths(g_main, 4)[cochain_structure_classes(g_main, 4).torsion_representatives[0]]
        assert duality_matrix([v], [rep], g_main) == [[1]]
