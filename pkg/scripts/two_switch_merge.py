"""Two switches, two independently written policies, one unsafe merge.

Each policy alone keeps its hosts isolated; their union opens a path across
the internal link. Prints the verdict and explanations for every case.
"""

from netkat_safety import check_safety, parse_network_spec

TOPOLOGY = "pt=5 . pt<-6 + pt=6 . pt<-5 + pt=1 + pt=2 + pt=3 + pt=4"
P1 = "pt=1 . pt<-5 + pt=6 . pt<-2"
P2 = "pt=3 . pt<-5 + pt=6 . pt<-4"

CASES = [
    ("p1 alone, 1 -> {3,4}", P1, "pt=1", "pt=3 + pt=4"),
    ("p2 alone, 3 -> {1,2}", P2, "pt=3", "pt=1 + pt=2"),
    ("p1 reachability, 1 -> 2", P1, "pt=1", "pt=2"),
    ("p1 + p2, 1 -> {3,4}", f"{P1} + {P2}", "pt=1", "pt=3 + pt=4"),
    ("p1 + p2, 3 -> {1,2}", f"{P1} + {P2}", "pt=3", "pt=1 + pt=2"),
]


def spec_text(policy, ingress, egress):
    return "\n".join([
        "fields: pt in {1..6}",
        f"policy: {policy}",
        f"topology: {TOPOLOGY}",
        f"ingress: {ingress}",
        f"egress: {egress}",
    ])


def main():
    for name, policy, ingress, egress in CASES:
        v = check_safety(parse_network_spec(spec_text(policy, ingress, egress)))
        print(f"{name:28s} {v.label:6s} n={v.n_used} words={v.words_examined}")
        for e in v.explanations:
            print(f"    {e}    hops {list(e.hops)}")


if __name__ == "__main__":
    main()
