from typing import Literal

import pytest

from discriminators.families import SequenceHandle

ODD_T = [3, 5, 7, 9, 11, 15, 17, -3, -5, 31, 33]


class ConstantSequence(SequenceHandle):
    """s(n) = value for every n; never injective past one term."""

    family: Literal["constant"] = "constant"
    value: int = 7

    def term(self, i: int) -> int:
        return self.value


def naive_discriminator(terms):
    """Smallest m with all terms distinct mod m, by direct search."""
    m = 1
    while len({x % m for x in terms}) != len(terms):
        m += 1
    return m


@pytest.fixture
def constant_sequence():
    return ConstantSequence()
