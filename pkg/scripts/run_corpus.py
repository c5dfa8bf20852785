"""Run every fixture document and compare reports against the goldens.

Exit status is nonzero if any document fails its embedded expectations
or drifts from its golden report byte-for-byte.
"""

from __future__ import annotations

import contextlib
import io
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from bimodcheck import cli

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURE_DIR = ROOT / "fixtures"
GOLDEN_DIR = FIXTURE_DIR / "golden"


def run_one(path: pathlib.Path) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        status = cli.main(["check", str(path), "--format", "json",
                           "--assert"])
    return status, buf.getvalue()


def main() -> int:
    failures = 0
    docs = sorted(FIXTURE_DIR.glob("*.json"))
    if not docs:
        print("no fixture documents found", file=sys.stderr)
        return 2
    for path in docs:
        status, output = run_one(path)
        golden = GOLDEN_DIR / path.name
        if status != 0:
            print(f"FAIL {path.name}: exit {status}")
            failures += 1
        elif not golden.exists():
            print(f"FAIL {path.name}: no golden report")
            failures += 1
        elif output != golden.read_text(encoding="utf-8"):
            print(f"FAIL {path.name}: report drifted from golden")
            failures += 1
        else:
            print(f"PASS {path.name}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
