"""How many words the checker touches as the hop-by-hop size grows.

Builds a chain of k switches (ports 2i-1, 2i on switch i, link 2i -> 2i+1)
and compares the words examined by the pruned layered expansion against the
size of the unpruned distribution of in.(1+p.t)^n.out, which is
|in| * (1 + |p||t|)^n * |out| words.
"""

import argparse
import time

from netkat_safety import check_safety, parse_network_spec


def chain_text(k: int, dead_end: bool) -> str:
    ports = 2 * k
    policy = [f"pt={2 * i - 1} . pt<-{2 * i}" for i in range(1, k + 1)]
    links = [f"pt={2 * i} . pt<-{2 * i + 1}" for i in range(1, k)]
    if dead_end:
        policy[-1] = f"pt={2 * k - 1} . pt<-{2 * k - 1}"
    topology = links + ["pt=1", f"pt={ports}"]
    return "\n".join([
        f"fields: pt in {{1..{ports}}}",
        "policy: " + " + ".join(policy),
        "topology: " + " + ".join(topology),
        "ingress: pt=1",
        f"egress: pt={ports}",
    ])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-switches", type=int, default=8)
    args = ap.parse_args()
    print(f"{'k':>3} {'n':>3} {'verdict':>7} {'examined':>10} {'unpruned':>14} {'ms':>8}")
    for k in range(1, args.max_switches + 1):
        for dead_end in (False, True):
            spec = parse_network_spec(chain_text(k, dead_end))
            t0 = time.perf_counter()
            v = check_safety(spec)
            ms = (time.perf_counter() - t0) * 1000
            m = len(spec.hbh.summands) * (len(spec.topo.internal_links) + len(spec.topo.perimeter_ports))
            unpruned = (1 + m) ** spec.n
            print(f"{k:>3} {spec.n:>3} {v.label:>7} {v.words_examined:>10} {unpruned:>14} {ms:>8.1f}")


if __name__ == "__main__":
    main()
