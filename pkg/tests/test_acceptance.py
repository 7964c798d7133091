"""Acceptance criteria 1-14 at 50 digits; one PASS/FAIL line per criterion.

Run directly (``python tests/test_acceptance.py``) for the bare list of lines.
Criteria 7 and 14 contain sub-checks of statements that do not hold as
literally written; they fail here on purpose and the details explain why.
"""

import pytest

from mmvkit.acceptance import CRITERIA, run_criterion
from mmvkit.numerics import PrecisionContext

CTX = PrecisionContext(50)


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion-{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, capsys):
    res = run_criterion(number, CTX)
    with capsys.disabled():
        print("\n" + res.line())
        for d in res.details:
            print(f"     {d}")
    assert res.passed, res.line() + "\n" + "\n".join(res.details)


if __name__ == "__main__":
    for num, _, _ in CRITERIA:
        print(run_criterion(num, CTX).line(), flush=True)
