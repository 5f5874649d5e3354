"""Whole-suite wall-clock budget, named zz so it collects and runs last."""

import time

from conftest import record_acceptance


class TestCriterion8:
    def test_suite_under_budget(self, suite_start):
        elapsed = time.perf_counter() - suite_start
        ok = elapsed < 60.0
        record_acceptance(
            "[%s] criterion 8: full test suite finished in %.1fs "
            "(budget 60s, measured from session start to the last test)"
            % ("PASS" if ok else "FAIL", elapsed)
        )
        assert ok, f"suite took {elapsed:.1f}s, budget is 60s"
