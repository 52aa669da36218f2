"""Replay both K4 counterexamples and print every exact check."""

from elliptope.certificates import replay_counterexample


def main() -> None:
    for which in (1, 2):
        rep = replay_counterexample(which)
        print(f"counterexample {which}: {'PASS' if rep.passed else 'FAIL'}")
        for name, ok in rep.checks.items():
            print(f"  {'ok ' if ok else 'BAD'} {name}")
        print(f"  objective {rep.objective}, d' = {[str(x) for x in rep.d]}")


if __name__ == "__main__":
    main()
