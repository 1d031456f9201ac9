import pytest

from pathhom.chain_complex import (ChainVector, boundary_entry_report, boundary_matrix, boundary_of,
                                   default_n_max, euler_from_classes, faces, homology_summary,
                                   is_omega_member, omega_class_basis, omega_dimension_from_classes,
                                   omega_general, spans_agree)
from pathhom.digraph_core import classify_pairs, count_triangles, enumerate_paths, parse_digraph
from pathhom.errors import MultisquarePresent
from pathhom.exact_linalg import F2, F3, Q, FieldDescriptor
from pathhom.fixtures import builtin_fixture
from pathhom.schemas import HomologyReport
from pathhom.short_moves import build_smoves, classify_components

FIELDS = (Q, F2, F3)


def test_faces_skip_degenerate():
    assert faces((0, 1, 0)) == [(1, (1, 0), False), (1, (0, 1), False)]
    assert faces((0, 1, 2)) == [(1, (1, 2), False), (-1, (0, 2), True), (1, (0, 1), False)]


class TestOmegaGeneral:
    @pytest.mark.parametrize("f", FIELDS)
    def test_low_degrees(self, fixture_digraph, f):
        assert omega_general(fixture_digraph, 0, f).dimension == fixture_digraph.num_vertices
        assert omega_general(fixture_digraph, 1, f).dimension == fixture_digraph.num_arrows

    def test_degree_two_counts_triangles_and_squares(self, fixture_digraph):
        thick = sum(1 for p in classify_pairs(fixture_digraph) if p.is_thick)
        expected = count_triangles(fixture_digraph) + thick
        assert omega_general(fixture_digraph, 2, Q).dimension == expected

    def test_square(self, square):
        (v,) = omega_general(square, 2, Q).vectors
        assert {abs(x) for _, x in v.terms} == {1}
        assert v.coefficient(0) == -v.coefficient(1)

    def test_g_main_level_four(self, g_main):
        assert omega_general(g_main, 4, Q).dimension == 0
        assert omega_general(g_main, 4, F2).dimension == 1
        assert omega_general(g_main, 4, F3).dimension == 0
        assert omega_general(g_main, 2, Q).dimension == 21

    def test_multisquare_digraph(self, multisquare):
        # three 2-paths x->v->y, two independent differences
        assert omega_general(multisquare, 2, Q).dimension == 2

    def test_members_have_path_boundaries(self, fixture_digraph):
        for n in range(5):
            for v in omega_general(fixture_digraph, n, Q).vectors:
                assert is_omega_member(fixture_digraph, v)

    def test_fields_agree_up_to_three(self, small_corpus):
        for g in small_corpus:
            for n in range(4):
                assert len({omega_general(g, n, f).dimension for f in FIELDS}) == 1

    def test_negative_level(self, square):
        with pytest.raises(ValueError):
            omega_general(square, -1, Q)


class TestOmegaClassBasis:
    def test_square(self, square):
        (v,) = omega_class_basis(square, 2, Q).vectors
        assert v.terms == ((0, 1), (1, -1))
        assert v.describe(square) == "e_013 - e_023"

    def test_trapezohedron(self):
        trap = builtin_fixture("trapezohedron")
        basis = omega_class_basis(trap, 3, Q)
        (v,) = basis.vectors
        assert len(v.terms) == len(enumerate_paths(trap, 3)) == 10
        assert {x for _, x in v.terms} == {1, -1}
        assert basis.class_tags == (0,)

    def test_g_main(self, g_main):
        assert omega_class_basis(g_main, 4, Q).vectors == ()
        (v,) = omega_class_basis(g_main, 4, F2).vectors
        assert v.terms == tuple((i, 1) for i in range(12))

    @pytest.mark.parametrize("f", FIELDS)
    def test_grid_thin_class(self, f):
        assert omega_class_basis(builtin_fixture("grid"), 3, f).vectors == ()

    def test_refuses_multisquares(self, multisquare):
        with pytest.raises(MultisquarePresent):
            omega_class_basis(multisquare, 2, Q)

    @staticmethod
    def _assert_agreement(g):
        for n in range(6):
            size = len(enumerate_paths(g, n))
            for f in FIELDS:
                assert spans_agree(omega_general(g, n, f), omega_class_basis(g, n, f), size)

    def test_agrees_with_general_on_fixtures(self, fixture_digraph):
        self._assert_agreement(fixture_digraph)

    def test_agrees_with_general_on_corpus(self, small_corpus):
        for g in small_corpus:
            self._assert_agreement(g)

    def test_dimension_from_classes(self, g_main):
        classes = classify_components(build_smoves(g_main, 4), g_main)
        assert omega_dimension_from_classes(classes, Q) == 0
        assert omega_dimension_from_classes(classes, F2) == 1
        assert omega_dimension_from_classes(classes, FieldDescriptor.prime(5)) == 0

    def test_gf2_dimension_dominates(self, small_corpus):
        for g in small_corpus:
            for n in range(6):
                assert omega_general(g, n, F2).dimension >= omega_general(g, n, Q).dimension


class TestBoundary:
    def test_incidence_matrix(self, square):
        m = boundary_matrix(square, 1, Q, omega_general(square, 1, Q), omega_general(square, 0, Q))
        # columns are arrows 01, 02, 13, 23
        assert m.entries == ((-1, -1, 0, 0), (1, 0, -1, 0), (0, 1, 0, -1), (0, 0, 1, 1))

    def test_square_two_chain(self, square):
        domain = omega_class_basis(square, 2, Q)
        m = boundary_matrix(square, 2, Q, domain, omega_general(square, 1, Q))
        assert m.entries == ((1,), (-1,), (1,), (-1,))

    def test_boundary_of(self, square):
        v = ChainVector.from_mapping(2, {0: 1, 1: -1}, Q)
        assert boundary_of(square, v).terms == ((0, 1), (1, -1), (2, 1), (3, -1))

    @pytest.mark.parametrize("f", FIELDS)
    def test_boundary_squares_to_zero(self, fixture_digraph, f):
        for n in range(2, 5):
            upper = boundary_matrix(fixture_digraph, n, f, omega_general(fixture_digraph, n, f),
                                    omega_general(fixture_digraph, n - 1, f))
            lower = boundary_matrix(fixture_digraph, n - 1, f, omega_general(fixture_digraph, n - 1, f),
                                    omega_general(fixture_digraph, n - 2, f))
            assert (lower @ upper).is_zero()

    def test_level_zero(self, square):
        m = boundary_matrix(square, 0, Q, omega_general(square, 0, Q), None)
        assert m.shape == (0, 4)


class TestHomology:
    def test_square(self, square):
        summary = homology_summary(square, Q)
        assert summary.omega_dims == (4, 4, 1, 0)
        assert summary.ph_dims == (1, 0, 0, 0)
        assert summary.bounded
        assert summary.euler == 1
        assert summary.method_agreement is True

    def test_triangle(self, triangle):
        summary = homology_summary(triangle, Q)
        assert summary.ph_dims[0] == 1
        assert all(d == 0 for d in summary.ph_dims[1:])
        assert summary.euler == 1

    def test_g_main_euler_gap(self, g_main):
        chi_q = homology_summary(g_main, Q).euler
        chi_2 = homology_summary(g_main, F2).euler
        chi_3 = homology_summary(g_main, F3).euler
        assert chi_2 == chi_q + 1
        assert chi_3 == chi_q

    def test_euler_from_classes(self, fixture_digraph):
        for f in (Q, F2):
            assert euler_from_classes(fixture_digraph, f) == homology_summary(fixture_digraph, f).euler

    def test_ph_formula(self, fixture_digraph):
        summary = homology_summary(fixture_digraph, F2)
        ranks = summary.boundary_ranks + (0,)
        for n, d in enumerate(summary.ph_dims):
            assert d == summary.omega_dims[n] - ranks[n] - ranks[n + 1]
        assert summary.euler == sum((-1) ** n * d for n, d in enumerate(summary.ph_dims))

    def test_unbounded_below_cap(self):
        summary = homology_summary(builtin_fixture("cube"), Q, n_max=1)
        assert not summary.bounded
        assert summary.euler is None
        assert len(summary.omega_dims) == 2

    def test_directed_cycle_uses_cap(self):
        g = parse_digraph("a b\nb a\n")
        assert default_n_max(g) == 16
        summary = homology_summary(g, Q, n_max=3)
        assert summary.method_agreement is True

    def test_multisquare_skips_class_check(self, multisquare):
        summary = homology_summary(multisquare, Q)
        assert summary.method_agreement is None
        assert summary.bounded

    def test_corpus_euler_field_independent(self, small_corpus):
        for g in small_corpus:
            classes_ok = all(
                c.is_bipartite or c.is_thin
                for n in range(default_n_max(g) + 1)
                for c in classify_components(build_smoves(g, n), g)
            )
            if classes_ok:
                chis = {homology_summary(g, f).euler for f in FIELDS}
                assert len(chis) == 1

    def test_report(self, square):
        report = homology_summary(square, Q).to_report()
        assert HomologyReport.model_validate_json(report.model_dump_json()) == report

    def test_n_max_must_be_positive(self, square):
        with pytest.raises(ValueError):
            homology_summary(square, Q, n_max=0)


class TestBoundaryEntries:
    def test_square(self, square):
        report = boundary_entry_report(square, Q)
        assert report.all_unit
        assert report.levels[1].entries == {"-1": 2, "1": 2}

    def test_cube(self):
        report = boundary_entry_report(builtin_fixture("cube"), Q, 3)
        assert [level.level for level in report.levels] == [1, 2, 3]

    def test_g_main_mod_two(self, g_main):
        report = boundary_entry_report(g_main, F2)
        level4 = next(level for level in report.levels if level.level == 4)
        assert set(level4.entries) <= {"1"}
        assert not level4.non_unit

    def test_refuses_multisquares(self, multisquare):
        with pytest.raises(MultisquarePresent):
            boundary_entry_report(multisquare, Q)
