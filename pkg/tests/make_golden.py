"""Regenerate the golden CLI outputs: python3 tests/make_golden.py"""

import contextlib
import io
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from cli_cases import CASES  # noqa: E402

from orbitint.cli import main  # noqa: E402

root = pathlib.Path(__file__).parent / "golden"
root.mkdir(exist_ok=True)
for name, argv in CASES.items():
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        assert main(argv) == 0, name
    (root / f"{name}.txt").write_text(buf.getvalue())
    print(name, len(buf.getvalue().splitlines()), "lines")
