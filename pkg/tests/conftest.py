import os
import sys

# Make the app package importable from tests/
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "../")))

import pytest  # noqa: E402

from app.models.schemas import ExponentVector  # noqa: E402
from app.services.ideal_core import Monomial, Universe, VarId  # noqa: E402


def parse_monomial(text: str) -> Monomial:
    """`a1b1d1d2` or `ab^2` style, over the letters a..d."""
    exps: dict = {}
    k = 0
    while k < len(text):
        base = "abcd".index(text[k])
        k += 1
        digits = ""
        while k < len(text) and text[k].isdigit():
            digits += text[k]
            k += 1
        power = 1
        if k < len(text) and text[k] == "^":
            k += 1
            exponent = ""
            while k < len(text) and text[k].isdigit():
                exponent += text[k]
                k += 1
            power = int(exponent)
        var = VarId(base, int(digits) if digits else 1)
        exps[var] = exps.get(var, 0) + power
    return Monomial.of(exps)


def monomials(*texts: str) -> set:
    return {parse_monomial(t) for t in texts}


@pytest.fixture
def worked_vector():
    return ExponentVector.of(2, 1, 1, 1, 1, 2)


@pytest.fixture
def worked_ideal_generators():
    return monomials("abd^2", "b^2cd", "abcd", "a^2cd", "abc^2")


@pytest.fixture
def worked_polarization_generators():
    return monomials("a1b1d1d2", "b1b2c1d1", "a1b1c1d1", "a1a2c1d1", "a1b1c1c2")


@pytest.fixture
def worked_dual_generators():
    return monomials(
        "a1b1", "a2b1", "a1b2", "a1c1", "a1d1", "b1c1", "b1d1", "c1d1", "c2d1", "c1d2"
    )


@pytest.fixture
def abcd():
    return Universe.standard(4)
