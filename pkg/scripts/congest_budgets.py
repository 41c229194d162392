"""Compare the two readings of the CONGEST corruption budget on every bipartite graph up to n nodes.

The closed reading counts v itself among the corrupted nodes around v; the
open reading counts neighbours only. Prints plan and failure counts per n,
plus the first plan the protocol cannot absorb under each reading.
"""

import argparse

from lcllab.congest import congest_bipartite, corruption_within_half
from lcllab.enumeration import connected_graph_classes
from lcllab.graph import is_bipartite
from lcllab.labelings import Labeling, label_bipartite


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nmax", type=int, default=7)
    args = p.parse_args(argv)
    first = {}
    print(f"{'n':>2} {'closed plans':>12} {'fail':>5} {'open plans':>10} {'fail':>5}")
    for n in range(1, args.nmax + 1):
        counts = {True: [0, 0], False: [0, 0]}
        for g in connected_graph_classes(n):
            if not is_bipartite(g):
                continue
            good = label_bipartite(g).labels
            for mask in range(1 << n):
                flips = {v for v in range(n) if mask >> v & 1}
                labs = tuple(1 - a if v in flips else a for v, a in enumerate(good))
                ok = congest_bipartite(g, Labeling(labs, 2)).verdicts.all_accept
                for closed in (True, False):
                    if corruption_within_half(g, flips, closed=closed):
                        counts[closed][0] += 1
                        counts[closed][1] += not ok
                        if not ok:
                            first.setdefault(closed, (g.edges, sorted(flips)))
        print(f"{n:>2} {counts[True][0]:>12} {counts[True][1]:>5} {counts[False][0]:>10} {counts[False][1]:>5}")
    for closed, (edges, flips) in sorted(first.items()):
        print(f"first failure ({'closed' if closed else 'open'}): edges {edges}, flipped {flips}")


if __name__ == "__main__":
    main()
