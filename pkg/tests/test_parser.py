import pytest

from ocp_moments.error import ParseError
from ocp_moments.parser import CacheHeader, parse_header, parse_n_list, parse_n_range


def test_parse_header():
    header = parse_header("#vdm-coeff v1 N=2 gamma=4 count=2 checksum=3")
    assert header == CacheHeader(version=1, N=2, gamma=4, count=2, checksum=3)


def test_parse_header_any_field_order():
    header = parse_header("#vdm-coeff v7 checksum=9 count=1 gamma=2 N=5")
    assert header == CacheHeader(version=7, N=5, gamma=2, count=1, checksum=9)


@pytest.mark.parametrize(
    "text",
    [
        "#vdm-coeff v1 N=2 gamma=4 count=2",
        "#vdm-coeff v1 N=2 N=2 gamma=4 count=2 checksum=3",
        "#vdm-coeff N=2 gamma=4 count=2 checksum=3",
        "vdm N=2",
        "",
    ],
)
def test_parse_header_errors(text):
    with pytest.raises(ParseError):
        parse_header(text, file="cache.txt")


def test_parse_header_error_position():
    with pytest.raises(ParseError) as info:
        parse_header("#vdm-coeff v1 N=x", file="cache.txt")
    assert info.value.pos.file == "cache.txt"
    assert info.value.pos.line == 1
    assert str(info.value).startswith("cache.txt:1:")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("2..5", [2, 3, 4, 5]),
        ("3", [3]),
        ("2..4,7", [2, 3, 4, 7]),
        ("5, 3, 3..4", [3, 4, 5]),
    ],
)
def test_parse_n_range(text, expected):
    assert parse_n_range(text) == expected


@pytest.mark.parametrize("text", ["5..2", "a", "2..", "1,,2"])
def test_parse_n_range_errors(text):
    with pytest.raises(ParseError):
        parse_n_range(text)


def test_parse_n_list():
    assert parse_n_list("2,3") == [2, 3]
    assert parse_n_list("4") == [4]
    assert parse_n_list("3,2,3") == [3, 2]
    with pytest.raises(ParseError):
        parse_n_list("2..3")
