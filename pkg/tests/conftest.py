from __future__ import annotations

from fractions import Fraction

import pytest

from vsmooth.functions import combine, make_arcsinh_sqrt, make_log1p, make_root

ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, passed: bool, detail: str = "") -> None:
    """Log one acceptance criterion outcome for the end-of-run summary."""
    ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] {criterion}: {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def builtin_models():
    return {
        "root_half": make_root(Fraction(1, 2)),
        "root_third": make_root(Fraction(1, 3)),
        "root_0.7": make_root(0.7),
        "log1p": make_log1p(),
        "arcsinh_sqrt": make_arcsinh_sqrt(),
        "mix": combine([make_log1p(), make_root(Fraction(1, 2))], [1.0, 2.0]),
    }
