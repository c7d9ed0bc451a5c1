"""The ten acceptance criteria, run at their full counts with exact arithmetic.

Each test prints one PASS/FAIL line; the last test checks the total time budget.
"""

import time

import pytest

from opsmith.acceptance import CRITERIA

SEED = 0
BUDGET_SECONDS = 60.0
_elapsed: dict = {}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    t = time.perf_counter()
    result = CRITERIA[number](SEED)
    _elapsed[number] = time.perf_counter() - t
    with capsys.disabled():
        print("\n" + result.line())
    assert result.instances > 0
    assert result.ok, "; ".join(result.failures[:5])


def test_total_runtime_within_budget(capsys):
    if len(_elapsed) != len(CRITERIA):
        pytest.skip("runtime budget is only meaningful when every criterion ran")
    total = sum(_elapsed.values())
    with capsys.disabled():
        print(f"\n[{'PASS' if total < BUDGET_SECONDS else 'FAIL'}] total acceptance runtime {total:.1f}s "
              f"(budget {BUDGET_SECONDS:.0f}s)")
    assert total < BUDGET_SECONDS
