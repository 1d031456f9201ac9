"""
Replication Suite
Replays the reference computations on the built-in digraphs and on a seeded
random corpus. Every check yields a CheckResult; the suite passes only if all do.
"""

import logging
from contextlib import contextmanager
from itertools import product
from threading import RLock
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .chain_complex import (boundary_matrix, homology_summary, omega_class_basis,
                            omega_general, spans_agree)
from .cochain_algebra import (cochain_structure_classes, cochain_structure_snf, pairing,
                              pairing_with_relation, relation_set_general)
from .config import settings
from .corpus import random_corpus
from .digraph_core import Digraph, enumerate_paths, is_multisquare_free, is_thin_path
from .errors import PathHomologyError
from .exact_linalg import F2, F3, Q, FieldDescriptor
from .fixtures import CHORD_ARROWS, builtin_fixture, fixture_names
from .schemas import CheckResult, VerificationReport
from .short_moves import build_smoves, classify_components

logger = logging.getLogger(__name__)

ORACLE_FIELDS = (Q, F2, F3)
RULE = "=" * 80

# CHECK_INVARIANTS is process-wide; one suite at a time may switch it.
INVARIANT_LOCK = RLock()


@contextmanager
def invariant_checks() -> Iterator[None]:
    """
    Turn on the linear-algebra self-checks for the duration of the block.

    The flag lives on the shared settings object, so other threads see it too;
    concurrent blocks are serialized on INVARIANT_LOCK.
    """
    with INVARIANT_LOCK:
        previous = settings.CHECK_INVARIANTS
        settings.CHECK_INVARIANTS = True
        try:
            yield
        finally:
            settings.CHECK_INVARIANTS = previous


def counterexample_outcomes(g: Digraph) -> Dict[str, object]:
    """The four level-4 facts distinguishing the counterexample digraph."""
    snf = cochain_structure_snf(g, 4)
    chi_q = homology_summary(g, Q).euler
    chi_2 = homology_summary(g, F2).euler
    return {
        'omega4_Q': omega_general(g, 4, Q).dimension,
        'omega4_F2': omega_general(g, 4, F2).dimension,
        'integral_omega4': (snf.free_rank, tuple(snf.torsion)),
        'euler_gap': None if chi_q is None or chi_2 is None else chi_2 - chi_q,
    }


EXPECTED_OUTCOMES = {
    'omega4_Q': 0,
    'omega4_F2': 1,
    'integral_omega4': (0, (2,)),
    'euler_gap': 1,
}


def _brute_force_omega2(g: Digraph) -> int:
    """Directed triangles plus pairs at distance two joined by exactly two 2-paths."""
    size = g.num_vertices
    triangles = sum(1 for a, b, c in product(range(size), repeat=3)
                    if g.has_arrow(a, b) and g.has_arrow(b, c) and g.has_arrow(a, c))
    squares = 0
    for x, y in product(range(size), repeat=2):
        if x == y or g.has_arrow(x, y):
            continue
        middles = sum(1 for v in range(size) if g.has_arrow(x, v) and g.has_arrow(v, y))
        if middles == 2:
            squares += 1
    return triangles + squares


class ReplicationSuite:
    """Named checks over the fixtures and a random multisquare-free corpus."""

    def __init__(self, corpus_size: Optional[int] = None, seed: Optional[int] = None):
        self.corpus_size = settings.CORPUS_SIZE if corpus_size is None else corpus_size
        self.seed = seed
        self._corpus: Optional[List[Digraph]] = None

    @property
    def fixtures(self) -> List[Tuple[str, Digraph]]:
        return [(name, builtin_fixture(name)) for name in fixture_names()]

    @property
    def corpus(self) -> List[Digraph]:
        if self._corpus is None:
            self._corpus = random_corpus(self.corpus_size, self.seed)
        return self._corpus

    def _all_digraphs(self) -> List[Tuple[str, Digraph]]:
        return self.fixtures + [(f"corpus[{k}]", g) for k, g in enumerate(self.corpus)]

    def _levels(self, g: Digraph) -> range:
        top = settings.CORPUS_MAX_LEVEL
        while top > 0 and not enumerate_paths(g, top):
            top -= 1
        return range(top + 1)

    # =========================================================================
    # CHECKS
    # =========================================================================

    def check_counterexample(self) -> CheckResult:
        outcomes = counterexample_outcomes(builtin_fixture('g_main'))
        wrong = {k: v for k, v in outcomes.items() if EXPECTED_OUTCOMES[k] != v}
        detail = ("dim Omega_4: Q 0, F2 1; Omega^4(Z) = Z/2Z; chi_F2 = chi_Q + 1"
                  if not wrong else f"unexpected: {wrong}")
        return CheckResult(name="counterexample", passed=not wrong, detail=detail,
                           anchor="counterexample digraph: torsion and Euler characteristic")

    def check_short_move_diagram(self) -> CheckResult:
        main, prime = builtin_fixture('g_main'), builtin_fixture('g_prime')
        s_main, s_prime = build_smoves(main, 4), build_smoves(prime, 4)
        c_main = classify_components(s_main, main)
        c_prime = classify_components(s_prime, prime)
        problems = []
        if (s_main.num_nodes, len(s_main.edges), len(c_main)) != (12, 15, 1):
            problems.append(f"g_main S_4 has {s_main.num_nodes} nodes, {len(s_main.edges)} edges, "
                            f"{len(c_main)} classes")
        elif c_main[0].is_thin or c_main[0].is_bipartite:
            problems.append("g_main class is not thick non-bipartite")
        elif len(c_main[0].odd_cycle_witness or ()) != 9:
            problems.append(f"odd cycle of length {len(c_main[0].odd_cycle_witness or ())}")
        same_graph = ([main.format_path(p) for p in s_main.nodes] ==
                      [prime.format_path(p) for p in s_prime.nodes] and s_main.edges == s_prime.edges)
        if not same_graph:
            problems.append("g_prime S_4 differs from g_main S_4")
        thin_paths = [p for p in s_prime.nodes if is_thin_path(prime, p)]
        if len(c_prime) != 1 or not c_prime[0].is_thin or len(thin_paths) != 6:
            problems.append(f"g_prime: {len(c_prime)} classes, {len(thin_paths)} thin paths")
        return CheckResult(name="short-move-diagram", passed=not problems,
                           anchor="S_4 of the counterexample digraph",
                           detail="; ".join(problems) or "12 nodes, 15 edges, odd cycle of length 9; "
                                                          "g_prime thin with 6 thin paths")

    def check_examples(self) -> CheckResult:
        problems = []

        grid = builtin_fixture('grid')
        s_grid = build_smoves(grid, 3)
        labelled = sorted((s_grid.label(a), s_grid.label(b), c) for a, b, c in s_grid.edges)
        if labelled != [("0125", "0145", 2), ("0145", "0345", 1)] or s_grid.num_nodes != 3:
            problems.append(f"grid S_3 edges {labelled}")

        cube = builtin_fixture('cube')
        s_cube = build_smoves(cube, 3)
        c_cube = classify_components(s_cube, cube)
        alternating = all(sorted(s_cube.edge_color(node, other) for other in s_cube.adjacency[node]) == [1, 2]
                          for node in range(s_cube.num_nodes))
        if s_cube.num_nodes != 6 or len(s_cube.edges) != 6 or len(c_cube) != 1 or not alternating:
            problems.append("cube S_3 is not a single 6-cycle with alternating colours")

        trap = builtin_fixture('trapezohedron')
        s_trap = build_smoves(trap, 3)
        c_trap = classify_components(s_trap, trap)
        is_cycle = all(len(adj) == 2 for adj in s_trap.adjacency) and len(c_trap) == 1
        if (not is_cycle or s_trap.num_nodes % 2 or c_trap[0].is_thin or not c_trap[0].is_bipartite):
            problems.append("trapezohedron S_3 is not a single thick even cycle")

        return CheckResult(name="worked-examples", passed=not problems,
                           anchor="short-move graphs of the grid, cube and trapezohedron",
                           detail="; ".join(problems) or "grid path 0125-2-0145-1-0345, cube hexagon, "
                                                         "trapezohedron even cycle")

    def check_low_degree(self) -> CheckResult:
        problems = []
        for name, g in self.fixtures:
            for f in (Q, F2):
                dims = [omega_general(g, n, f).dimension for n in range(3)]
                expected = [g.num_vertices, g.num_arrows, _brute_force_omega2(g)]
                if dims != expected:
                    problems.append(f"{name} over {f}: {dims} != {expected}")
        return CheckResult(name="low-degree-dimensions", passed=not problems,
                           anchor="Omega_0, Omega_1 and Omega_2 from vertices, arrows, triangles and squares",
                           detail="; ".join(problems) or f"{len(self.fixtures)} fixtures")

    def check_oracle_equivalence(self) -> CheckResult:
        problems = []
        for name, g in self._all_digraphs():
            if not is_multisquare_free(g)[0]:
                continue
            for n in self._levels(g):
                size = len(enumerate_paths(g, n))
                for f in ORACLE_FIELDS:
                    if not spans_agree(omega_general(g, n, f), omega_class_basis(g, n, f), size):
                        problems.append(f"{name} n={n} {f}")
        return CheckResult(name="class-basis-oracle", passed=not problems,
                           anchor="class basis spans Omega_n",
                           detail=_summarize(problems, self._all_digraphs()))

    def check_structure_oracle(self) -> CheckResult:
        problems = []
        for name, g in self._all_digraphs():
            if not is_multisquare_free(g)[0]:
                continue
            for n in self._levels(g):
                snf, classes = cochain_structure_snf(g, n), cochain_structure_classes(g, n)
                if not snf.same_structure(classes):
                    problems.append(f"{name} n={n}: {snf.describe()} vs {classes.describe()}")
        return CheckResult(name="structure-oracle", passed=not problems,
                           anchor="integral cochains from Smith normal form and from classes",
                           detail=_summarize(problems, self._all_digraphs()))

    def check_invariants(self) -> CheckResult:
        problems = []
        for name, g in self._all_digraphs():
            for f in ORACLE_FIELDS:
                for n in self._levels(g):
                    problems += _level_invariants(name, g, n, f)
            if is_multisquare_free(g)[0]:
                for n in range(4):
                    if not all(c.is_bipartite for c in classify_components(build_smoves(g, n), g)):
                        problems.append(f"{name}: non-bipartite S_{n} class")
        return CheckResult(name="invariants", passed=not problems,
                           anchor="d^2 = 0, orthogonality to relations, duality, S_3 bipartite",
                           detail=_summarize(problems, self._all_digraphs()))

    def check_field_independence(self) -> CheckResult:
        problems = []
        for name, g in self._all_digraphs():
            for n in range(4):
                dims = {str(f): omega_general(g, n, f).dimension for f in ORACLE_FIELDS}
                if len(set(dims.values())) > 1:
                    problems.append(f"{name} n={n}: {dims}")
        for k, g in enumerate(self.corpus):
            if _has_torsion_class(g):
                continue
            chis = [homology_summary(g, f).euler for f in ORACLE_FIELDS]
            if chis[0] is not None and len(set(chis)) > 1:
                problems.append(f"corpus[{k}]: chi {chis}")
        return CheckResult(name="field-independence", passed=not problems,
                           anchor="low-degree dimensions and torsion-free Euler characteristics",
                           detail=_summarize(problems, self._all_digraphs()))

    def check_negative_control(self) -> CheckResult:
        main = builtin_fixture('g_main')
        unchanged = []
        for u, v in CHORD_ARROWS:
            outcomes = counterexample_outcomes(main.without_arrow(u, v))
            if outcomes == EXPECTED_OUTCOMES:
                unchanged.append(f"{u}->{v}")
        return CheckResult(name="negative-control", passed=not unchanged,
                           anchor="deleting a chord arrow breaks the counterexample",
                           detail=(f"undetected deletions: {', '.join(unchanged)}" if unchanged
                                   else f"all {len(CHORD_ARROWS)} chord deletions detected"))

    # =========================================================================
    # RUN
    # =========================================================================

    def checks(self) -> List[Tuple[str, Callable[[], CheckResult]]]:
        return [
            ("counterexample", self.check_counterexample),
            ("short-move-diagram", self.check_short_move_diagram),
            ("worked-examples", self.check_examples),
            ("low-degree-dimensions", self.check_low_degree),
            ("class-basis-oracle", self.check_oracle_equivalence),
            ("structure-oracle", self.check_structure_oracle),
            ("invariants", self.check_invariants),
            ("field-independence", self.check_field_independence),
            ("negative-control", self.check_negative_control),
        ]

    def run(self) -> VerificationReport:
        """Run every check with the linear-algebra self-checks switched on."""
        results = []
        for name, check in self.checks():
            logger.info(f"Running check {name}")
            try:
                with invariant_checks():
                    result = check()
            except PathHomologyError as e:
                result = CheckResult(name=name, anchor="", passed=False, detail=f"{type(e).__name__}: {e}")
            if not result.passed:
                logger.error(f"Check {name} failed: {result.detail}")
            results.append(result)
        return VerificationReport(checks=results, passed=all(r.passed for r in results))


# =============================================================================
# HELPERS
# =============================================================================

def _summarize(problems: List[str], digraphs: list) -> str:
    if not problems:
        return f"{len(digraphs)} digraphs"
    shown = "; ".join(problems[:5])
    more = f" (+{len(problems) - 5} more)" if len(problems) > 5 else ""
    return shown + more


def _has_torsion_class(g: Digraph) -> bool:
    """True if some level has a thick non-bipartite class."""
    n = 0
    while enumerate_paths(g, n):
        if any(c.is_thick and not c.is_bipartite for c in classify_components(build_smoves(g, n), g)):
            return True
        n += 1
    return False


def _level_invariants(name: str, g: Digraph, n: int, f: FieldDescriptor) -> List[str]:
    problems = []
    general = omega_general(g, n, f)
    if n >= 2:
        upper = boundary_matrix(g, n, f, general, omega_general(g, n - 1, f))
        lower = boundary_matrix(g, n - 1, f, omega_general(g, n - 1, f), omega_general(g, n - 2, f))
        if not (lower @ upper).is_zero():
            problems.append(f"{name} n={n} {f}: d^2 != 0")

    relations = relation_set_general(g, n)
    columns = [relations.column(j) for j in range(relations.cols)]
    for v in general.vectors:
        if any(pairing_with_relation(v, column) != 0 for column in columns):
            problems.append(f"{name} n={n} {f}: Omega vector pairs with a relation")
            break

    if is_multisquare_free(g)[0]:
        basis = omega_class_basis(g, n, f)
        paths = enumerate_paths(g, n)
        for i, v in enumerate(basis.vectors):
            for j, rep in enumerate(basis.class_tags):
                expected = f.one() if i == j else f.zero()
                if pairing(v, paths[rep], g) != expected:
                    problems.append(f"{name} n={n} {f}: <s_c, {g.format_path(paths[rep])}> "
                                    f"is not a Kronecker delta")
    return problems


def render_text(report: VerificationReport) -> str:
    lines = [RULE, "REPLICATION CHECKS", RULE]
    for result in report.checks:
        mark = "✓" if result.passed else "✗"
        lines.append(f"{mark} {result.name} [{result.anchor}]")
        if result.detail:
            lines.append(f"    {result.detail}")
    lines.append(RULE)
    passed = sum(1 for r in report.checks if r.passed)
    lines.append(f"{passed}/{len(report.checks)} checks passed")
    return "\n".join(lines) + "\n"
