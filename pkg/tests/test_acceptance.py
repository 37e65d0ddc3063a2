"""Acceptance criteria 1-12, each at its stated tolerance and time limit.

One PASS/FAIL line per criterion is printed in the pytest terminal
summary (also shown by ``subzeta verify all --text``).
"""

import pytest

from subzeta.suites import SUITES, run_suite

# criterion number -> wall-clock limit in seconds (None: no stated limit)
LIMITS = {1: 60, 2: 30, 4: 300, 5: 300, 9: 120, 12: 600}

# filled as the tests run; printed by the hook in conftest.py
VERDICTS = []

CASES = sorted(SUITES, key=lambda name: SUITES[name][0])


@pytest.mark.parametrize("name", CASES)
def test_criterion(name):
    number = SUITES[name][0]
    res = run_suite(name)
    limit = LIMITS.get(number)
    in_time = limit is None or res.seconds < limit
    ok = res.ok and in_time
    budget = f", limit {limit}s" if limit else ""
    VERDICTS.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2} {name}: "
                    f"{res.seconds:.1f}s{budget}")
    assert res.ok, "\n".join(res.lines)
    assert in_time, f"took {res.seconds:.1f}s, limit {limit}s"
