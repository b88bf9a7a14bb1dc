#!/usr/bin/env python3
"""Build the relabeled-cycle pair corpus as JSON files.

Writes one pair file per (n, relabeling) plus a graph6 file with the raw
cycles, ready for `reconlab verify-tutte --pair ...`.
"""

import argparse
import os

from reconlab.graph6 import graph6_encode
from reconlab.hypomorphism import cycle_adjacency, cycle_pair_corpus
from reconlab.serialize import dumps, pair_to_dict


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="corpus", help="output directory")
    parser.add_argument("--n-min", type=int, default=5)
    parser.add_argument("--n-max", type=int, default=8)
    args = parser.parse_args()

    os.makedirs(args.out, exist_ok=True)
    ns = tuple(range(args.n_min, args.n_max + 1))
    with open(os.path.join(args.out, "cycles.g6"), "w") as fh:
        fh.write("# cycle graphs C%d..C%d\n" % (args.n_min, args.n_max))
        for n in ns:
            fh.write(graph6_encode(cycle_adjacency(n).entries) + "\n")

    for pair in cycle_pair_corpus(ns=ns):
        path = os.path.join(args.out, f"{pair['name']}.json")
        with open(path, "w") as fh:
            fh.write(dumps(pair_to_dict(pair["A"], pair["B"], pair["sigma"])) + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
