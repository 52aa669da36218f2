"""Run every invariant suite through the library and summarise."""

import argparse

from elliptope.suites import SUITES, run_suite


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for name in SUITES:
        res = run_suite(name, seed=args.seed)
        for r in res:
            if not r.passed:
                print(f"FAIL {name}: {r.name} {r.detail}")
        print(f"{name}: {sum(r.passed for r in res)}/{len(res)} pass")


if __name__ == "__main__":
    main()
