"""Run the acceptance criteria and print one line per criterion.

    python scripts/run_acceptance.py [--seed N] [--only 1,4,9] [--subprocess-cli]

Exits 1 if any criterion fails.
"""

import argparse
import sys
import time
from dataclasses import replace

from comonad_workbench import acceptance
from comonad_workbench.config import SuiteConfig


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, help="overrides WB_SEED")
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.add_argument("--subprocess-cli", action="store_true",
                   help="run criterion 11 through real `python -m` subprocesses")
    p.add_argument("--timing", action="store_true", help="append seconds per criterion")
    ns = p.parse_args()
    cfg = SuiteConfig.from_env()
    if ns.seed is not None:
        cfg = replace(cfg, seed=ns.seed)
    wanted = {int(x) for x in ns.only.split(",")} if ns.only else None
    print(f"# seed {cfg.seed}")
    failed = 0
    for number, crit in enumerate(acceptance.ALL, 1):
        if wanted and number not in wanted:
            continue
        start = time.perf_counter()
        if crit is acceptance.criterion_cli and ns.subprocess_cli:
            result = crit(cfg, runner=acceptance.run_subprocess)
        else:
            result = crit(cfg)
        line = result.line()
        if ns.timing:
            line += f"  [{time.perf_counter() - start:.1f}s]"
        print(line, flush=True)
        failed += not result.ok
    print(f"criteria: {failed} failed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
