"""One test per acceptance criterion; each prints its pass/fail line.

Seeded by ``WB_SEED`` (default 0).  The lines are written past pytest's
capture so that they show up in the log of a normal run.
"""

import pytest

from comonad_workbench import acceptance
from comonad_workbench.config import SuiteConfig
from comonad_workbench.fixtures import fixture_path

CFG = SuiteConfig.from_env()


@pytest.mark.parametrize("criterion", acceptance.ALL, ids=lambda f: f.__name__[10:])
def test_criterion(criterion, capsys):
    result = criterion(CFG)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail


def test_cli_subprocess_matches_in_process():
    path = str(fixture_path("kz2.wb"))
    for verb in ("validate", "report"):
        assert acceptance.run_subprocess([verb, path]) == acceptance.run_in_process([verb, path])
