"""Walk the relevance levels of a goal tree until the contradiction appears.

Builds a Horn tree of configurable depth with the negated goal as support,
prints each distance level with its clause count and verdict, and shows the
support radius the staged driver stops at.  The same walk is available from
the command line as `altpath deepen <file> --support ids:1`.

Usage: python3 scripts/deepening_demo.py [--depth N] [--branching N]
"""

from __future__ import annotations

import argparse

from altpath.dpll import dpll, support_radius
from altpath.generators import horn_tree
from altpath.graph import INF, bfs_from_support, build_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--branching", type=int, default=2)
    args = ap.parse_args()

    cs = horn_tree(args.depth, args.branching)
    support = [cs.ids()[0]]
    dmap = bfs_from_support(build_graph(cs), support)
    levels = sorted({int(d) for d in dmap.clause_distance.values() if d < INF})

    print(f"goal tree: depth {args.depth}, branching {args.branching}, {len(cs.clauses)} clauses")
    print(f"{'level':>6} {'clauses':>8}  verdict")
    for n in levels:
        sub = cs.subset(dmap.relevant_ids(n))
        verdict = dpll(sub).verdict
        print(f"{n:>6} {len(sub.clauses):>8}  {verdict}")
        if verdict == "unsat":
            break
    print(f"support radius: {support_radius(cs, support)}")


if __name__ == "__main__":
    main()
