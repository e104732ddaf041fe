"""Wiring profile of small ladders: connected guests against all subgraphs.

Checks on one instance whether allowing disconnected subgraphs changes the
profile value.

    python3 scripts/profile_run.py --max-vertices 6
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from coarse_wiring.graph import LadderSpec, build_ladder
from coarse_wiring.search import enumerate_subgraphs, wiring_profile_point


@dataclass
class Config:
    guest: LadderSpec = LadderSpec(2, 2, 1)
    host: LadderSpec = LadderSpec(2, 4, 1)
    max_vertices: int = 6
    ks: tuple[int, ...] = (1, 2, 3)


def main(cfg: Config) -> None:
    g, host = build_ladder(cfg.guest, name="G"), build_ladder(cfg.host, name="H")
    print(f"guest {cfg.guest}, host {cfg.host}, subgraphs up to {cfg.max_vertices} vertices")
    print("k,connected_only,candidates,profile,attained_by_vertices,attained_by_edges,seconds")
    for k in cfg.ks:
        for connected in (True, False):
            start = time.perf_counter()
            cands = list(enumerate_subgraphs(g, cfg.max_vertices, connected_only=connected))
            value, arg = wiring_profile_point(k, cfg.max_vertices, cands, host)
            secs = time.perf_counter() - start
            print(f"{k},{connected},{len(cands)},{value},{arg.num_vertices},{arg.num_edges},{secs:.2f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-vertices", type=int, default=Config.max_vertices)
    main(Config(max_vertices=ap.parse_args().max_vertices))
