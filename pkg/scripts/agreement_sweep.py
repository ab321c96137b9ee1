"""Randomized cross-check of the rewrite pipeline against brute-force semantics.

For each random validated network: the verdict must match emptiness of
in.(p.t)*.out, the star-eliminated term must be included in the starred one,
and every explanation must be realizable by some packet.
"""

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass

from netkat_safety.explain import check_safety, witness_packet
from netkat_safety.generators import SpecConfig, random_spec
from netkat_safety.rewrite import star_eliminate
from netkat_safety.semantics import enumerate_loopfree_paths, eval_on_all, is_semantically_empty


@dataclass
class SweepConfig:
    count: int = 500
    seed: int = 0
    max_ports: int = 4
    max_summands: int = 3


def run(cfg: SweepConfig) -> Counter:
    rng = random.Random(cfg.seed)
    spec_cfg = SpecConfig(max_ports=cfg.max_ports, max_summands=cfg.max_summands)
    tally = Counter()
    for _ in range(cfg.count):
        spec = random_spec(rng, spec_cfg)
        v = check_safety(spec, minimize=False)
        empty = is_semantically_empty(spec.end_to_end(), spec.domains)
        tally["unsafe"] += not v.safe
        tally["verdict_disagree"] += v.safe != empty

        starts = [(p,) for p in spec.domains.packets()]
        below = eval_on_all(star_eliminate(spec), spec.domains, starts)
        above = eval_on_all(spec.end_to_end(), spec.domains, starts)
        tally["inclusion_violations"] += sum(not below[h] <= above[h] for h in starts)

        tally["explanations"] += len(v.explanations)
        tally["unrealizable"] += sum(witness_packet(e, spec) is None for e in v.explanations)

        paths = enumerate_loopfree_paths(spec)
        hops = {e.hops for e in v.explanations}
        loop_free = all(None not in h and len(set(h)) == len(h) for h in hops) \
            and all(len(set(p)) == len(p) for p in paths)
        if loop_free:
            tally["path_checked"] += 1
            tally["path_disagree"] += hops != paths
        tally["minimized_away"] += len(v.explanations) - len(check_safety(spec).explanations)
    return tally


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=SweepConfig.count)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--max-ports", type=int, default=SweepConfig.max_ports)
    ap.add_argument("--max-summands", type=int, default=SweepConfig.max_summands)
    args = ap.parse_args()
    cfg = SweepConfig(args.count, args.seed, args.max_ports, args.max_summands)
    t0 = time.perf_counter()
    tally = run(cfg)
    print(f"{cfg.count} networks, seed {cfg.seed}, {time.perf_counter() - t0:.1f}s")
    for key in sorted(tally):
        print(f"  {key:22s} {tally[key]}")


if __name__ == "__main__":
    main()
