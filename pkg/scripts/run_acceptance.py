"""Run the acceptance criteria and print one verdict line per criterion."""

import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    cmd = [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", str(ROOT / "tests" / "test_acceptance.py")]
    out = subprocess.run(cmd, cwd=ROOT, capture_output=True, text=True)
    lines = [ln for ln in out.stdout.splitlines() if ln.startswith("criterion ")]
    print("\n".join(lines) if lines else out.stdout)
    return out.returncode


if __name__ == "__main__":
    sys.exit(main())
