from collections import OrderedDict
from pathlib import Path

import pytest

from distfield import from_points
from distfield.grid import read_points

DATA = Path(__file__).parent / "data"
P6_POINTS = read_points((DATA / "p6.txt").read_text())

# criterion -> list of (part, ok, detail), filled by tests/test_acceptance.py
ACCEPTANCE = OrderedDict()


def p6_image():
    return from_points(9, 10, P6_POINTS)


@pytest.fixture
def p6():
    return p6_image()


@pytest.fixture
def acceptance():
    def record(criterion, part, ok, detail=""):
        ACCEPTANCE.setdefault(criterion, []).append((part, bool(ok), detail))
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        ok = all(p[1] for p in parts)
        tr.write_line(f"criterion {crit}: {'PASS' if ok else 'FAIL'} "
                      f"({sum(p[1] for p in parts)}/{len(parts)} checks)")
        for part, pok, detail in parts:
            tail = f": {detail}" if detail else ""
            tr.write_line(f"    [{'pass' if pok else 'FAIL'}] {part}{tail}")
