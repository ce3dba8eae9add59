"""Parser for cache headers and number ranges."""

from __future__ import annotations

__all__ = [
    "CacheHeader",
    "get_parser",
    "parse_header",
    "parse_n_range",
    "parse_n_list",
]

import importlib.resources
from functools import cache
from dataclasses import dataclass

from lark import Lark, Tree, Token
from lark.exceptions import UnexpectedInput

from .error import EngineError, ParseError, Position

GRAMMAR_ANCHOR = __package__
GRAMMAR_FILE = "grammar.lark"

HEADER_FIELDS = ("N", "gamma", "count", "checksum")


@dataclass(frozen=True, slots=True)
class CacheHeader:
    version: int
    N: int
    gamma: int
    count: int
    checksum: int


@cache
def get_parser() -> Lark:
    text = importlib.resources.files(GRAMMAR_ANCHOR).joinpath(GRAMMAR_FILE).read_text()
    return Lark(
        text,
        parser="lalr",
        start=["header", "n_range", "n_list"],
        strict=True,
        propagate_positions=True,
    )


def _parse(text: str, start: str, file: str) -> Tree:
    try:
        return get_parser().parse(text, start=start)
    except UnexpectedInput as e:
        pos = Position(file=file, line=e.line, col=e.column)
        raise ParseError(f"invalid {start.replace('_', ' ')}: {text!r}", pos) from e


def parse_header(text: str, file: str = "<header>", line: int = 1) -> CacheHeader:
    tree = _parse(text.strip(), "header", file)

    version_token, *fields = tree.children
    version = int(str(version_token)[1:])

    values: dict[str, int] = {}
    for child in fields:
        match child:
            case Tree(data="field", children=[Token() as name, Token() as value]):
                if name in values:
                    raise ParseError(
                        f"duplicate field {name!r}",
                        Position(file, line, child.meta.column),
                    )
                values[str(name)] = int(value)
            case _ as unexpected:
                raise EngineError(f"{unexpected=}")

    missing = [name for name in HEADER_FIELDS if name not in values]
    if missing:
        raise ParseError(f"missing header fields {missing}", Position(file, line, 1))

    return CacheHeader(version=version, **{name: values[name] for name in HEADER_FIELDS})


def parse_n_range(text: str) -> list[int]:
    """'2..8', '3' or '2..5,7,9' into a sorted list of distinct values."""
    tree = _parse(text, "n_range", "<N-range>")

    ret: set[int] = set()
    for item in tree.children:
        match item:
            case Tree(data="span", children=[lo, hi]):
                lo, hi = int(lo), int(hi)
                if lo > hi:
                    raise ParseError(
                        f"empty range {lo}..{hi}",
                        Position("<N-range>", item.meta.line, item.meta.column),
                    )
                ret.update(range(lo, hi + 1))
            case Tree(data="single", children=[value]):
                ret.add(int(value))
            case _ as unexpected:
                raise EngineError(f"{unexpected=}")
    return sorted(ret)


def parse_n_list(text: str) -> list[int]:
    """'2,3' into a list of values in input order, repeats dropped."""
    tree = _parse(text, "n_list", "<n-list>")
    return list(dict.fromkeys(int(token) for token in tree.children))
