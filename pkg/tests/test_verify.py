import threading

import pytest

from pathhom.config import settings
from pathhom.fixtures import CHORD_ARROWS, builtin_fixture
from pathhom.schemas import CheckResult, VerificationReport
from pathhom.verify import (EXPECTED_OUTCOMES, INVARIANT_LOCK, ReplicationSuite,
                            counterexample_outcomes, invariant_checks, render_text)


@pytest.fixture(scope="module")
def report():
    return ReplicationSuite(corpus_size=4, seed=3).run()


def test_all_checks_pass(report):
    failed = [(r.name, r.detail) for r in report.checks if not r.passed]
    assert failed == []
    assert report.passed
    assert len(report.checks) == 9


def test_check_names_are_unique(report):
    names = [r.name for r in report.checks]
    assert len(set(names)) == len(names)
    assert all(r.anchor for r in report.checks)


def test_counterexample_outcomes(g_main):
    assert counterexample_outcomes(g_main) == EXPECTED_OUTCOMES


@pytest.mark.parametrize("arrow", CHORD_ARROWS)
def test_deleting_a_chord_changes_outcomes(arrow):
    smaller = builtin_fixture("g_main").without_arrow(*arrow)
    outcomes = counterexample_outcomes(smaller)
    assert outcomes != EXPECTED_OUTCOMES
    assert outcomes['omega4_F2'] == 0


def test_g_prime_has_no_torsion(g_prime):
    outcomes = counterexample_outcomes(g_prime)
    assert outcomes['integral_omega4'] == (0, ())
    assert outcomes['euler_gap'] == 0


def test_corpus_is_seeded():
    first = ReplicationSuite(corpus_size=3, seed=5).corpus
    second = ReplicationSuite(corpus_size=3, seed=5).corpus
    assert [g.edge_list_text() for g in first] == [g.edge_list_text() for g in second]


def test_invariant_checks_restores_setting(monkeypatch):
    monkeypatch.setattr(settings, "CHECK_INVARIANTS", False)
    with invariant_checks():
        assert settings.CHECK_INVARIANTS
    assert not settings.CHECK_INVARIANTS


def test_invariant_checks_hold_the_lock(monkeypatch):
    monkeypatch.setattr(settings, "CHECK_INVARIANTS", False)
    acquired = []

    def try_lock():
        acquired.append(INVARIANT_LOCK.acquire(blocking=False))

    with invariant_checks():
        other = threading.Thread(target=try_lock)
        other.start()
        other.join()
    assert acquired == [False]
    assert not settings.CHECK_INVARIANTS


def test_failed_check_is_reported(monkeypatch):
    suite = ReplicationSuite(corpus_size=0)
    failing = CheckResult(name="counterexample", anchor="a", passed=False, detail="broken")
    monkeypatch.setattr(suite, "checks", lambda: [("counterexample", lambda: failing)])
    result = suite.run()
    assert not result.passed
    assert "0/1 checks passed" in render_text(result)


def test_render_text():
    report = VerificationReport(
        checks=[CheckResult(name="one", anchor="first", passed=True, detail="fine"),
                CheckResult(name="two", anchor="second", passed=False, detail="broken")],
        passed=False,
    )
    lines = render_text(report).splitlines()
    assert lines[0] == "=" * 80
    assert "✓ one [first]" in lines
    assert "✗ two [second]" in lines
    assert "    broken" in lines
    assert lines[-1] == "1/2 checks passed"
