"""Print every exact-integer certificate for the tower schedule, with operand sizes.

    python3 scripts/check_bounds.py --n-max 6
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from coarse_wiring.families import (
    PAPER,
    verify_lower_bound_arithmetic,
    verify_phi_precondition,
    verify_theorem_constants,
    verify_upper_bound_chain,
    vol_X,
)


@dataclass
class Config:
    n_max: int = 6


def main(cfg: Config) -> int:
    reports = []
    for n in range(2, cfg.n_max + 1):
        print(f"n={n}: vol_X has {len(str(vol_X(n, PAPER)))} decimal digits")
        reports += [verify_theorem_constants(n), verify_upper_bound_chain(n)]
        reports += [verify_lower_bound_arithmetic(n, m) for m in range(1, n)]
    reports += [verify_phi_precondition(n, PAPER, horizon=2) for n in range(1, cfg.n_max + 1)]
    for r in reports:
        print(r)
    ok = all(r.ok for r in reports)
    print(f"{sum(r.ok for r in reports)}/{len(reports)} reports pass")
    return 0 if ok else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    sys.exit(main(Config(n_max=ap.parse_args().n_max)))
