import re

import pytest

from pathhom.digraph_core import is_thin_path
from pathhom.fixtures import builtin_fixture
from pathhom.schemas import ShortMoveReport
from pathhom.short_moves import build_smoves, class_census, classify_components, export_dot, smoves_report


def _labelled_edges(smg):
    return sorted((smg.label(a), smg.label(b), color) for a, b, color in smg.edges)


def test_grid_thin_path_of_three():
    grid = builtin_fixture("grid")
    smg = build_smoves(grid, 3)
    assert [smg.label(i) for i in range(smg.num_nodes)] == ["0125", "0145", "0345"]
    assert _labelled_edges(smg) == [("0125", "0145", 2), ("0145", "0345", 1)]
    (cls,) = classify_components(smg, grid)
    assert cls.is_thin
    assert cls.is_bipartite


def test_cube_hexagon_alternates_colors():
    cube = builtin_fixture("cube")
    smg = build_smoves(cube, 3)
    assert smg.num_nodes == 6
    assert len(smg.edges) == 6
    for node in range(6):
        assert sorted(smg.edge_color(node, other) for other in smg.adjacency[node]) == [1, 2]
    (cls,) = classify_components(smg, cube)
    assert cls.is_thick and cls.is_bipartite
    assert len(cls.plus_part) == len(cls.minus_part) == 3


def test_trapezohedron_even_cycle():
    trap = builtin_fixture("trapezohedron")
    smg = build_smoves(trap, 3)
    assert smg.num_nodes == 10
    assert all(len(adj) == 2 for adj in smg.adjacency)
    (cls,) = classify_components(smg, trap)
    assert cls.is_thick and cls.is_bipartite


@pytest.mark.parametrize("name,thin", [("star6", True), ("star6_chords", False)])
def test_star_lines(name, thin):
    g = builtin_fixture(name)
    smg = build_smoves(g, 3)
    assert smg.num_nodes == 9
    assert len(smg.edges) == 8
    (cls,) = classify_components(smg, g)
    assert cls.is_thin == thin
    assert cls.is_bipartite


def test_g_main_odd_class(g_main):
    smg = build_smoves(g_main, 4)
    assert smg.num_nodes == 12
    assert len(smg.edges) == 15
    assert sorted(color for _, _, color in smg.edges) == [1] * 6 + [2] * 3 + [3] * 6
    (cls,) = classify_components(smg, g_main)
    assert cls.is_thick
    assert not cls.is_bipartite
    assert cls.parts is None

    cycle = cls.odd_cycle_witness
    assert len(cycle) == 9
    assert len(set(cycle)) == 9
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        assert smg.edge_color(a, b) is not None


def test_g_prime_same_graph_but_thin(g_main, g_prime):
    main, prime = build_smoves(g_main, 4), build_smoves(g_prime, 4)
    assert main.nodes == prime.nodes
    assert main.edges == prime.edges
    (cls,) = classify_components(prime, g_prime)
    assert cls.is_thin
    assert sum(1 for p in prime.nodes if is_thin_path(g_prime, p)) == 6


@pytest.mark.parametrize("n", [0, 1])
def test_low_levels_have_no_moves(fixture_digraph, n):
    smg = build_smoves(fixture_digraph, n)
    assert smg.edges == ()
    classes = classify_components(smg, fixture_digraph)
    assert len(classes) == smg.num_nodes
    assert all(c.is_thick and c.is_bipartite for c in classes)


def test_representative_is_least_member_and_plus(fixture_digraph):
    for n in range(5):
        for cls in classify_components(build_smoves(fixture_digraph, n), fixture_digraph):
            assert cls.representative == min(cls.members)
            if cls.is_bipartite:
                assert cls.representative in cls.plus_part
                assert cls.sign(cls.representative) == 1


def test_sign_flips_along_edges(fixture_digraph):
    for n in range(2, 5):
        smg = build_smoves(fixture_digraph, n)
        owner = {node: c for c in classify_components(smg, fixture_digraph) for node in c.members}
        for a, b, _ in smg.edges:
            if owner[a].is_bipartite:
                assert owner[a].sign(a) == -owner[a].sign(b)


def test_level_three_classes_are_bipartite(small_corpus):
    for g in small_corpus:
        for cls in classify_components(build_smoves(g, 3), g):
            assert cls.is_bipartite


def test_unsupported_for_multisquares(multisquare):
    classes = classify_components(build_smoves(multisquare, 2), multisquare)
    assert classes
    assert not any(c.supported_for_basis for c in classes)


def test_census(g_main):
    classes = classify_components(build_smoves(g_main, 4), g_main)
    assert class_census(classes) == {'classes': 1, 'thin': 0, 'thick_bipartite': 0, 'thick_non_bipartite': 1}


def test_export_dot():
    grid = builtin_fixture("grid")
    dot = export_dot(build_smoves(grid, 3))
    assert dot.startswith("graph S3 {")
    assert re.search(r'n0 \[label="?0125"?', dot)
    assert re.search(r'n0 -- n1 \[label="?2"?\]', dot)
    assert re.search(r'n1 -- n2 \[label="?1"?\]', dot)
    assert re.search(r'thin="?true"?', dot)
    assert dot.rstrip().endswith("}")


def test_export_dot_cube_parts():
    cube = builtin_fixture("cube")
    dot = export_dot(build_smoves(cube, 3))
    assert len(re.findall(r"n\d+ -- n\d+", dot)) == 6
    assert len(re.findall(r'part="?\+"?', dot)) == 3
    assert len(re.findall(r'part="?-"?', dot)) == 3


def test_report_round_trip(g_main):
    report = smoves_report(build_smoves(g_main, 4))
    assert report.classes[0].odd_cycle is not None
    assert ShortMoveReport.model_validate_json(report.model_dump_json()) == report


def test_negative_level(square):
    with pytest.raises(ValueError):
        build_smoves(square, -1)
