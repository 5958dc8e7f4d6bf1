"""The acceptance gate: every criterion runs at the pinned seed and must
pass inside its wall-clock budget.  One line of output per criterion."""

import pytest

from ratskew.acceptance import CRITERIA, PINNED_SEED, run_criterion

IDS = ["crit%02d-%s" % (n, name.replace(" ", "-")) for n, name, _, _ in CRITERIA]


@pytest.mark.parametrize("num,name,budget", [c[:3] for c in CRITERIA], ids=IDS)
def test_criterion(num, name, budget, capsys):
    r = run_criterion(num, PINNED_SEED)
    with capsys.disabled():
        print("\n%s %2d %s: %s (%.2fs of %.0fs)"
              % ("PASS" if r["ok"] else "FAIL", num, name, r["detail"],
                 r["seconds"], budget))
    assert r["ok"], "criterion %d failed: %s" % (num, r["detail"])
    assert r["seconds"] <= budget, (
        "criterion %d over budget: %.2fs > %.0fs" % (num, r["seconds"], budget))


def test_all_twelve_present():
    assert [c[0] for c in CRITERIA] == list(range(1, 13))
