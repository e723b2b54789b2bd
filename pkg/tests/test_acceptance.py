"""Acceptance criteria, one test per criterion.

Each test runs its randomized oracle suite at the required instance count
(seed 0), enforces the stated wall-clock limit where one applies, and
prints a single PASS/FAIL line.  Every check is exact: grid agreements,
partition certificates and dimension laws admit zero tolerance.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as
they are produced.
"""

import time

from valdim import verify


def _run(label, suite, limit=None, **kwargs):
    start = time.monotonic()
    result = suite(**kwargs)
    elapsed = time.monotonic() - start
    in_time = limit is None or elapsed <= limit
    status = "PASS" if result.ok and in_time else "FAIL"
    budget = "" if limit is None else f" (limit {limit:.0f}s)"
    print(f"\n{status} {label}: {result.cases} cases in {elapsed:.1f}s{budget}")
    for failure in result.failures[:3]:
        print(f"    {failure}")
    assert result.ok, f"{label}: {result.failures[:3]}"
    assert in_time, f"{label}: took {elapsed:.1f}s, limit {limit}s"


def test_criterion_1_figure_values():
    _run("criterion 1 (figure values)", verify.suite_figures, limit=1.0)


def test_criterion_2_elimination_soundness():
    _run(
        "criterion 2 (elimination soundness)",
        verify.suite_elimination,
        limit=30.0,
        seed=0,
        cases=500,
    )


def test_criterion_3_cell_decomposition():
    _run(
        "criterion 3 (cell decomposition)",
        verify.suite_cells,
        limit=60.0,
        seed=0,
        cases=500,
    )


def test_criterion_4_dimension_axioms():
    _run(
        "criterion 4 (dimension axioms)",
        verify.suite_dim_axioms,
        seed=0,
        cases=200,
    )


def test_criterion_5_mixed_engine():
    _run(
        "criterion 5 (mixed engine)",
        verify.suite_mixed,
        limit=120.0,
        seed=0,
        cases=100,
        samples_per_case=100,
    )


def test_criterion_6_tropical():
    _run(
        "criterion 6 (tropical suite)",
        verify.suite_trop,
        limit=60.0,
        seed=0,
        cases=50,
    )


def test_criterion_7_closure_behavior():
    _run(
        "criterion 7 (closure behavior)",
        verify.suite_closure,
        seed=0,
        cases=200,
    )
