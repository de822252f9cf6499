"""Acceptance gate: the twelve corpus criteria.

Each test runs one criterion over the full fixture corpus, prints its
one-line verdict, and asserts it.  Run with ``pytest -v -s
tests/test_acceptance.py`` to see the verdict lines as they pass.
"""

import pytest

from eqhodge.suite import (
    CriterionResult,
    SuiteContext,
    check_analytic_morse,
    check_delocalized_morse,
    check_euler_vanishing,
    check_fibration_trend,
    check_lift_independence,
    check_mckean_singer,
    check_one_form_morse,
    check_oracle_equivalence,
    check_positivity,
    check_s_invariance,
    check_trace_property,
    write_corpus_reports,
)


@pytest.fixture(scope="module")
def ctx():
    return SuiteContext()


def _assert(result):
    print(result.line)
    assert result.passed, result.line


def test_criterion_01_oracle_equivalence(ctx):
    _assert(check_oracle_equivalence(ctx, tol=1e-8))


def test_criterion_02_positive_trace(ctx):
    _assert(check_positivity(ctx, trials=200))


def test_criterion_03_trace_property(ctx):
    _assert(check_trace_property(ctx, pairs=50))


def test_criterion_04_lift_independence(ctx):
    _assert(check_lift_independence(ctx, trials=20))


def test_criterion_05_analytic_morse(ctx):
    _assert(check_analytic_morse(ctx))


def test_criterion_06_deformation_invariance(ctx):
    _assert(check_s_invariance(ctx, tol=1e-6))


def test_criterion_07_delocalized_morse(ctx):
    _assert(check_delocalized_morse(ctx, tol=1e-8))


def test_criterion_08_euler_vanishing(ctx):
    _assert(check_euler_vanishing(ctx, tol=1e-9))


def test_criterion_09_mckean_singer(ctx):
    _assert(check_mckean_singer(ctx, tol=1e-9))


def test_criterion_10_one_form_morse(ctx):
    _assert(check_one_form_morse(ctx))


def test_criterion_11_fibration_trend(ctx):
    _assert(check_fibration_trend(ctx))


def test_criterion_12_determinism(ctx, tmp_path):
    first = write_corpus_reports(tmp_path / "run1", ctx)
    second = write_corpus_reports(tmp_path / "run2", SuiteContext())
    assert [p.name for p in first] == [p.name for p in second]
    identical = all(
        a.read_bytes() == b.read_bytes() for a, b in zip(first, second)
    )
    _assert(CriterionResult(
        12, "determinism", identical,
        f"{len(first)} report files compared byte-for-byte",
    ))
