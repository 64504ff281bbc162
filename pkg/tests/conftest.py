from __future__ import annotations

import json

import numpy as np
import pytest

from multipoint_sl import dirichlet_spec, make_spec, neumann_spec
from multipoint_sl.sampling import random_batch

BATCH_SEED = 20240611


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def dirichlet():
    return dirichlet_spec()


@pytest.fixture
def neumann():
    return neumann_spec()


@pytest.fixture
def robin():
    zero = [(0.0, 0.0, 0.0)]
    return make_spec((1.0, -1.0, zero), (1.0, 1.0, zero))


@pytest.fixture
def multipoint():
    return make_spec(
        (1.0, -0.5, [(0.3, 0.2, 0.1), (-0.2, -0.1, 0.05)]),
        (0.7, 0.4, [(-0.5, 0.1, -0.1)]),
    )


@pytest.fixture(scope="session")
def batch():
    """The seeded 100-spec batch shared by the agreement and property checks."""
    return random_batch(BATCH_SEED, 100)


@pytest.fixture
def write_spec(tmp_path):
    def write(data, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return write


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    """Store and print the one-line outcome of an acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> bool:
        _ACCEPTANCE[number] = (bool(passed), detail)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} ({detail})")
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
