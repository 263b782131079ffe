"""Rewrite tests/golden/*.txt from the current CLI.  Run from the repository root."""

import io
import sys
from pathlib import Path

from borderhom.cli import main

sys.path.insert(0, str(Path(__file__).parent))
from golden_cases import CASES  # noqa: E402


def run():
    out_dir = Path(__file__).parent / "golden"
    out_dir.mkdir(exist_ok=True)
    for name, (argv, expected) in CASES.items():
        buf = io.StringIO()
        code = main(argv, stdout=buf, stderr=io.StringIO())
        if code != expected:
            raise SystemExit(f"{name}: exit code {code}, expected {expected}")
        (out_dir / f"{name}.txt").write_text(buf.getvalue(), encoding="utf-8")
        print(f"wrote {name}.txt")


if __name__ == "__main__":
    run()
