import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cmcompanion import QuadField, class_group, hecke_char_new, synthesize, trivial_finite_type  # noqa: E402

ACCEPTANCE = {}


@pytest.fixture(scope="session")
def K8():
    return QuadField.from_disc(-8)


@pytest.fixture(scope="session")
def psi_f(K8):
    return hecke_char_new(K8, trivial_finite_type(K8), 2, class_group(K8))


@pytest.fixture(scope="session")
def f25(psi_f):
    return synthesize(psi_f, 25)


@pytest.fixture(scope="session")
def K20():
    return QuadField.from_disc(-20)


@pytest.fixture(scope="session")
def psi20(K20):
    return hecke_char_new(K20, trivial_finite_type(K20), 2, class_group(K20), [0])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            ok, detail = ACCEPTANCE[key]
            terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
