"""Acceptance criteria, one test each; every test prints a PASS/FAIL line."""

import pytest

from heatlab import acceptance


@pytest.mark.parametrize("criterion", acceptance.CRITERIA, ids=lambda fn: fn.__name__)
def test_criterion(criterion):
    result = criterion()
    print(result.line())
    for report in result.blocking:
        if not report.passed:
            print(f"    failed: {report.check_name}: quantity={report.quantity!r} oracle={report.oracle!r} "
                  f"err={report.abs_error:.3e} tol={report.tolerance:.1e}")
    assert result.passed
