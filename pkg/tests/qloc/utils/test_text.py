import math

import pytest

from qloc import utils
from qloc.exceptions import InvalidInput


def test_text_shorten():
    assert "abc" == utils.text.shorten("abc", 5)
    assert "abcd…" == utils.text.shorten("abcdefgh", 5)


@pytest.mark.parametrize(
    "result,string",
    [
        (True, "yes"),
        (True, "1"),
        (False, "False"),
        (None, "maybe"),
    ],
)
def test_text_parse_bool(result, string: str):
    assert result == utils.text.parse_bool(string)


@pytest.mark.parametrize(
    "result,string",
    [
        (math.pi, "pi"),
        (-math.pi, "-pi"),
        (0.25 * math.pi, "0.25pi"),
        (0.5 * math.pi, "pi/2"),
        (-0.1 * math.pi, "-0.1*pi"),
        (0.785, "0.785"),
    ],
)
def test_text_parse_angle(result: float, string: str):
    assert result == pytest.approx(utils.text.parse_angle(string))


def test_text_parse_angle__negative():
    with pytest.raises(InvalidInput):
        utils.text.parse_angle("half a turn")


def test_text_parse_pair():
    assert (0.3, 0.35) == utils.text.parse_pair("0.3,0.35")
    k0 = utils.text.parse_pair("0.5pi,-0.1pi", angle=True)
    assert (0.5 * math.pi, -0.1 * math.pi) == pytest.approx(k0)


def test_text_parse_pair__negative():
    with pytest.raises(InvalidInput):
        utils.text.parse_pair("1,b")


def test_text_create_table():
    class Item:
        a: int
        b: str

        def __init__(self, a, b):
            self.a = a
            self.b = b

    iterable = [Item(1, "a"), Item(123456789, "b"), Item(3, "abcdefghijk")]
    header = {
        "a": "Integer",
        "b": "String",
    }
    expected = "Integer    String\n1          a\n123456789  b\n3          abcdefghijk\n"
    table: str = utils.text.create_table(iterable, header, rich=False)
    assert expected == table


def test_text_create_table_noattr():
    class Item:
        a: int
        b: str

        def __init__(self, a, b):
            self.a = a
            if a != 2:
                self.b = b

    iterable = [Item(1, "a"), Item(2, "b"), Item(3, "c")]
    header = {
        "a": "int",
        "b": "str",
    }
    expected = "int  str\n1    a\n2\n3    c\n"
    table: str = utils.text.create_table(iterable, header, rich=False)
    assert expected == table


def test_text_create_table_dicts():
    rows = [{"t": 0.0, "ipr": 0.123456789}, {"t": 1.0, "ipr": None}]
    expected = "t  IPR\n0  0.123457\n1\n"
    assert expected == utils.text.create_table(rows, {"t": "t", "ipr": "IPR"}, rich=False)


def test_text_create_table_colors():
    class Item:
        a: int
        b: str

        def __init__(self, a, b):
            self.a = a
            self.b = b

    iterable = [Item(1, "a"), Item(123456789, "b"), Item(3, "abcdefghijk")]
    header = {
        "a": "Integer",
        "b": "String",
    }
    expected = (
        "\x1b[1;34mInteger    String\x1b[0m\n"
        "1          a\n"
        "\x1b[36m123456789  b\x1b[0m\n"
        "3          abcdefghijk\n"
    )

    table: str = utils.text.create_table(iterable, header)
    assert expected == table
