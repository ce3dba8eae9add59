"""Rendering of tables and reports."""

from __future__ import annotations

__all__ = ["ENVIRONMENT", "render", "decimal_text", "exact_text", "write_records"]

import csv
import io
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

import click
import jinja2
import json5

from .numeric import render_decimal
from .templates import load_template

ENVIRONMENT = jinja2.Environment(
    trim_blocks=True,
    lstrip_blocks=True,
    undefined=jinja2.StrictUndefined,
    loader=jinja2.FunctionLoader(load_template),
    autoescape=False,
)


def render(template: str, **kwargs) -> str:
    tpl = ENVIRONMENT.get_template(template)
    return tpl.render(**kwargs)


def decimal_text(value: Fraction | int | float | None) -> str:
    if value is None:
        return ""
    return render_decimal(value).text


ENVIRONMENT.filters["decimal"] = decimal_text


def exact_text(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


ENVIRONMENT.filters["exact"] = exact_text


def check_line(check: Any) -> str:
    status = "PASS" if check.passed else "FAIL"
    if check.detail:
        return f"{status}  {check.name}  ({check.detail})"
    return f"{status}  {check.name}"


ENVIRONMENT.filters["check_line"] = check_line


def _cell(value: Any) -> str:
    match value:
        case None:
            return ""
        case str():
            return value
        case Fraction():
            return exact_text(value)
        case float():
            return decimal_text(value)
        case _:
            return str(value)


def write_records(
    records: Sequence[dict[str, Any]],
    columns: Sequence[str],
    output: str,
    out: Path | None = None,
) -> None:
    """Write records as CSV (with header row) or as a JSON list of objects."""
    rows = [{col: _cell(record.get(col)) for col in columns} for record in records]

    match output:
        case "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
            text = buf.getvalue()
        case "json":
            text = json5.dumps(rows, indent=2, quote_keys=True, trailing_commas=False) + "\n"
        case _ as unexpected:
            raise ValueError(f"{unexpected=}")

    with click.open_file("-" if out is None else str(out), "w") as fobj:
        fobj.write(text)
