#!/usr/bin/env python3
"""Print the cell tables of the two-loop quiver side by side.

For each path order, lists the cell labels of a given dimension in their
total order with cell dimensions and partition labels, then the motivic
class.  Defaults reproduce the d=3 tables.
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from cohalab import (
    FramedQuiver,
    PathOrder,
    Quiver,
    cell_dim,
    enumerate_trees,
    format_partition,
    format_tree,
    motivic_class,
    tree_to_partition,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dim", type=int, default=3)
    parser.add_argument("--loops", type=int, default=2)
    parser.add_argument("--framing", type=int, default=1)
    args = parser.parse_args()

    names = "abcdefgh"[: args.loops]
    base = Quiver.make(1, [(c, 0, 0) for c in names])
    frame_names = ["f"] if args.framing == 1 else ["e", "f"][: args.framing]
    if args.framing > 2:
        frame_names = None
    fq = FramedQuiver(base, (args.framing,), frame_names)
    d = (args.dim,)

    for label, order in [("shortlex", PathOrder.shortlex()), ("lex", PathOrder.lex())]:
        print(f"== {label} order, d={args.dim}")
        for s in enumerate_trees(fq, d, order):
            lam = tree_to_partition(fq, s, order)
            print(
                f"  {format_tree(fq, s):24s} d(S)={cell_dim(fq, s, order):3d}"
                f"  partition={format_partition(lam)}"
            )
    print("motivic class:", motivic_class(fq, d))


if __name__ == "__main__":
    main()
