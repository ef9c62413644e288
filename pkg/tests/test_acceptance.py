"""The twelve acceptance criteria at their stated tolerances.

Each test prints a single ``[PASS]``/``[FAIL]`` line.  Run standalone with
``python tests/test_acceptance.py`` for just the summary.
"""
import pytest

from plurikit.checks import CRITERIA, run_criterion

SEED = 0


@pytest.mark.acceptance
@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1), ids=[c[0].replace(" ", "_") for c in CRITERIA])
def test_criterion(index, capsys):
    res = run_criterion(index, SEED)
    with capsys.disabled():
        print("\n" + res.line())
    assert res.passed, (res.detail, res.reproducer)


if __name__ == "__main__":
    ok = True
    for i in range(1, len(CRITERIA) + 1):
        r = run_criterion(i, SEED)
        ok &= r.passed
        print(r.line())
    raise SystemExit(0 if ok else 1)
