"""Golden-output regression corpus.

A fixture lives at ``<root>/<command>/<name>.golden``.  Its first line is
``# argv: <shell-quoted argv>`` and the rest is the exact stdout the CLI
produced for that argv.  Comparison regenerates the output and checks it
byte for byte.
"""
from __future__ import annotations

import io
import shlex
from dataclasses import dataclass
from pathlib import Path

from .errors import HwError

HEADER = "# argv: "
DEFAULT_ROOT = Path(__file__).with_name("fixtures")

# the shipped corpus: (command, name, argv)
CORPUS = [
    ("bracket", "virasoro-e2-e-2", ["bracket", "e2", "e-2", "--algebra", "virasoro"]),
    ("bracket", "hv-e1-z-1", ["bracket", "e1", "z-1", "--algebra", "hv"]),
    ("bracket", "virg-quadratic", ["bracket", "e(1,0)", "e(0,1)", "--algebra", "virg"]),
    ("bracket", "sl3-json", ["bracket", "e1", "f1", "--algebra", "sl3", "--format", "json"]),
    ("gram", "virasoro-level-1-csv", ["gram", "--algebra", "virasoro", "--hw", "e0=0", "c=0", "--level", "1",
                                      "--format", "csv"]),
    ("gram", "virasoro-level-2", ["gram", "--algebra", "virasoro", "--hw", "e0=7/3", "c=3", "--level", "2"]),
    ("gram", "hv-level-2-json", ["gram", "--algebra", "hv", "--hw", "e0=1", "z0=2", "c1=1/2", "c2=0", "c3=1",
                                 "--level", "2", "--format", "json"]),
    ("singvec", "virasoro-e-1", ["singvec", "--algebra", "virasoro", "--hw", "e0=0", "c=3", "--start", "e-1"]),
    ("singvec", "hv-z-1", ["singvec", "--algebra", "hv", "--hw", "e0=1", "z0=1", "c1=1", "c2=1", "c3=1",
                           "--start", "z-1", "--format", "json"]),
    ("singvec", "sl2-adjoint", ["singvec", "--algebra", "sl2", "--module", "adjoint", "--start", "f"]),
    ("nilpotency", "heis-tail-3", ["nilpotency", "--algebra", "heisenberg", "--tail", "3", "--gen", "z5",
                                   "--start", "(3*,...)"]),
    ("heis", "witness-3-terms", ["heis", "--tail", "2", "--witness", "(1,2*,...) + 2*(3,2*,...) - (2,1,2*,...)"]),
    ("virg", "depth-2-fifth", ["virg", "--depth", "2", "--threshold", "1/5"]),
]


class FixtureError(HwError):
    """Missing, unreadable or malformed fixture."""


@dataclass
class Fixture:
    path: Path
    argv: list
    expected: str


@dataclass
class Comparison:
    path: Path
    passed: bool
    line: int | None = None
    expected: str | None = None
    actual: str | None = None

    def describe(self) -> str:
        if self.passed:
            return f"{self.path}: ok"
        return f"{self.path}: first divergence at line {self.line}: expected {self.expected!r}, got {self.actual!r}"


def expected_files(root: Path = DEFAULT_ROOT) -> list:
    return [Path(root) / cmd / f"{name}.golden" for cmd, name, _ in CORPUS]


def load_fixture(path) -> Fixture:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FixtureError(f"fixture {path} does not exist") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise FixtureError(f"fixture {path} is unreadable: {exc}") from None
    head, sep, body = text.partition("\n")
    if not head.startswith(HEADER) or not sep:
        raise FixtureError(f"fixture {path} is corrupt: first line must start with {HEADER!r}")
    try:
        argv = shlex.split(head[len(HEADER):])
    except ValueError as exc:
        raise FixtureError(f"fixture {path} is corrupt: {exc}") from None
    if not argv:
        raise FixtureError(f"fixture {path} is corrupt: empty argv")
    return Fixture(path, argv, body)


def render(argv) -> tuple[int, str]:
    from .cli import run

    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue()


def _first_divergence(expected: str, actual: str):
    exp, act = expected.splitlines(keepends=True), actual.splitlines(keepends=True)
    for k in range(max(len(exp), len(act))):
        a = exp[k] if k < len(exp) else None
        b = act[k] if k < len(act) else None
        if a != b:
            # line numbers count the header as line 1
            return k + 2, a, b
    return None


def compare_fixture(path) -> Comparison:
    fx = load_fixture(path)
    _, actual = render(fx.argv)
    diff = _first_divergence(fx.expected, actual)
    if diff is None:
        return Comparison(fx.path, True)
    line, a, b = diff
    return Comparison(fx.path, False, line, a, b)


def write_fixture(path, argv) -> None:
    code, out = render(argv)
    if code != 0:
        raise FixtureError(f"argv {argv} exited with {code}")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(HEADER + shlex.join(argv) + "\n" + out, encoding="utf-8")


def regenerate(root: Path = DEFAULT_ROOT) -> list:
    paths = []
    for cmd, name, argv in CORPUS:
        p = Path(root) / cmd / f"{name}.golden"
        write_fixture(p, argv)
        paths.append(p)
    return paths


def compare_all(root: Path = DEFAULT_ROOT) -> list:
    root = Path(root)
    found = sorted(root.glob("*/*.golden")) if root.is_dir() else []
    if not found:
        listing = "\n  ".join(str(p) for p in expected_files(root))
        raise FixtureError(f"no fixtures found under {root}; expected:\n  {listing}")
    return [compare_fixture(p) for p in found]


if __name__ == "__main__":  # pragma: no cover
    for p in regenerate():
        print(p)
