"""One test per acceptance criterion; each prints a single pass/fail line.

Tolerance is exact equality throughout (exact proportionality where only a
scalar multiple is asserted).  Runtime budgets are asserted alongside.
"""

import pytest

from binform.checks import CHECKS, run_check

# criterion number -> (check id, runtime budget in seconds)
CRITERIA = {
    1: ("dimensions", 1),
    2: ("theta33", 5),
    3: ("quartic-T", 10),
    4: ("map-wronskians", 60),
    5: ("tangent-wronskian", 10),
    6: ("hermite", 600),
    7: ("resultant", 1800),
    8: ("theta51", 60),
    9: ("gamma-tau", 900),
    10: ("ktau-triples", 60),
    11: ("evectant-calculus", 300),
    12: ("hermite-evectant", 1800),
    13: ("lambda", 900),
    14: ("involution", 60),
    15: ("properties", 60),
}

BY_ID = {c.id: c for c in CHECKS}


def test_every_check_is_a_criterion():
    assert sorted(cid for cid, _ in CRITERIA.values()) == sorted(BY_ID)


@pytest.mark.parametrize("number", sorted(CRITERIA), ids=lambda n: f"criterion-{n:02d}-{CRITERIA[n][0]}")
def test_criterion(number, acceptance_log):
    cid, budget = CRITERIA[number]
    record = run_check(BY_ID[cid])
    in_budget = record.millis <= budget * 1000
    ok = record.status == "pass" and in_budget
    line = (f"criterion {number:2d} [{cid}] {'PASS' if ok else 'FAIL'} "
            f"({record.millis} ms, budget {budget} s): {record.detail}")
    acceptance_log[number] = line
    print(line)
    assert record.status == "pass", record.detail
    assert in_budget, f"{record.millis} ms exceeds {budget} s"
