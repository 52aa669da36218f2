"""Tabulate φ(G), Max-Cut and the exactness verdict over the built-in corpus."""

import argparse

from elliptope import corpus
from elliptope.sdp import DEFAULT_TOL, exactness_numeric


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--tol", type=float, default=DEFAULT_TOL)
    ap.add_argument("names", nargs="*", help="corpus graphs (default: all)")
    args = ap.parse_args()
    names = args.names or corpus.names()
    print(f"{'graph':<16}{'n':>4}{'maxcut':>10}{'phi':>14}{'delta':>12}  verdict")
    for name in names:
        g = corpus.load(name)
        v = exactness_numeric(g, args.tol)
        print(f"{name:<16}{g.n:>4}{str(v.maxcut):>10}{v.phi:>14.6f}{v.delta:>12.2e}  {v.kind.value}")


if __name__ == "__main__":
    main()
