import json
from pathlib import Path

import pytest
from hypothesis import settings

from cetkit import Ideal, QuotientRingSpec, RingSpec

settings.register_profile("cetkit", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("cetkit")

FIXTURES = Path(__file__).with_name("fixtures")
CORPUS = Path(__file__).resolve().parents[1] / "src" / "cetkit" / "data" / "corpus.json"


@pytest.fixture(scope="session")
def gb_oracle():
    return json.loads((FIXTURES / "gb_oracle.json").read_text())


@pytest.fixture
def R2():
    return RingSpec(("x", "y"), "QQ")


@pytest.fixture
def R3():
    return RingSpec(("x", "y", "z"), "QQ")


@pytest.fixture
def R4():
    return RingSpec(("x", "y", "z", "w"), "QQ")


@pytest.fixture
def twisted_cubic(R4):
    return Ideal(R4, [R4("x*z-y^2"), R4("y*w-z^2"), R4("x*w-y*z")])


@pytest.fixture
def cubic_surface(R3):
    return QuotientRingSpec(R3, Ideal(R3, [R3("x^3+y^3+z^3")]))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for i in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[i])
