import pytest
from hypothesis import given, strategies as st

from utils.errors import UsageError
from utils.ranges import describe_grid, parse_int_grid


@pytest.mark.parametrize(
    "text,expected",
    [
        ("0..8", list(range(9))),
        ("3,5,7", [3, 5, 7]),
        ("1,4..6,10", [1, 4, 5, 6, 10]),
        ("-3,3", [-3, 3]),
        ("-5..-3", [-5, -4, -3]),
        ("7,3,7", [3, 7]),
        (" 2 .. 4 ", [2, 3, 4]),
        ("4..4", [4]),
    ],
)
def test_parse_int_grid(text, expected):
    assert parse_int_grid(text) == expected


@pytest.mark.parametrize("text", ["", "  ", "a", "1,,2", "5..3", "1..x", "3.5"])
def test_parse_int_grid_rejects(text):
    with pytest.raises(UsageError):
        parse_int_grid(text)


def test_describe_grid():
    assert describe_grid([0, 1, 2, 5, 7, 8]) == "0..2,5,7..8"
    assert describe_grid([4]) == "4"
    assert describe_grid([]) == ""


@given(st.sets(st.integers(-50, 50), min_size=1))
def test_describe_grid_parses_back(values):
    ordered = sorted(values)
    assert parse_int_grid(describe_grid(ordered)) == ordered
