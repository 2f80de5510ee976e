"""Acceptance criteria 1-13, one test each.

Each test prints a ``criterion N: PASS|FAIL`` line and records it for the
terminal summary. Run this file directly to print only those lines.
"""

import sys

import pytest

from qmf.suite import SUITES, SuiteConfig, run_one

# wall-clock budgets in seconds; criteria without one only need to be exact
BUDGET = {1: 5.0, 2: 20.0}
TOTAL_BUDGET = 180.0

BY_CRITERION = {c: name for name, (c, _) in SUITES.items()}
_elapsed: dict = {}


def line(n, res):
    ok = res.passed and res.seconds < BUDGET.get(n, float("inf"))
    detail = f"{res.name}, {res.seconds:.2f}s"
    if not res.passed:
        detail += f", counterexample {res.counterexample}"
    elif not ok:
        detail += f", over the {BUDGET[n]:.0f}s budget"
    return ok, f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail})"


@pytest.mark.parametrize("n", sorted(BY_CRITERION))
def test_criterion(n, acceptance_log):
    res = run_one(BY_CRITERION[n], SuiteConfig())
    _elapsed[n] = res.seconds
    ok, msg = line(n, res)
    acceptance_log[n] = msg
    print(msg)
    assert res.passed, res.counterexample
    if n in BUDGET:
        assert res.seconds < BUDGET[n]


def test_total_runtime():
    if len(_elapsed) < len(BY_CRITERION):
        pytest.skip("needs the full criterion run")
    assert sum(_elapsed.values()) < TOTAL_BUDGET


def test_mutation_is_caught():
    from qmf.suite import mutated_binomial
    with mutated_binomial():
        res = run_one("phipsi", SuiteConfig())
    assert not res.passed and res.counterexample is not None


if __name__ == "__main__":
    bad = 0
    for n in sorted(BY_CRITERION):
        ok, msg = line(n, run_one(BY_CRITERION[n], SuiteConfig()))
        bad += not ok
        print(msg, flush=True)
    sys.exit(1 if bad else 0)
