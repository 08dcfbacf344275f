from fractions import Fraction

import pytest

from qualprob.algebra import Space


@pytest.fixture
def w2():
    return Space("worlds", ("w1", "w2"))


@pytest.fixture
def w3():
    return Space("worlds", ("w1", "w2", "w3"))


@pytest.fixture
def w4():
    return Space("worlds", ("w1", "w2", "w3", "w4"))


def F(x) -> Fraction:
    return Fraction(x)
