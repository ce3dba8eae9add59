"""Template bundles for jinja2.

A bundle is a file `<prefix>.jinja` holding several templates, each
introduced by a header comment `{#- name: "..." -#}` written in json5.
Templates are addressed as `<prefix>:<name>`.
"""

from __future__ import annotations

__all__ = ["TemplateText", "parse_bundle", "load_template"]

import importlib.resources
from dataclasses import dataclass
from typing import cast

import json5

HEAD_OPEN = "{#-"
HEAD_CLOSE = "-#}"

_TEMPLATE_ANCHOR = __name__
_TEMPLATES: dict[str, TemplateText] = {}


@dataclass(frozen=True, slots=True)
class TemplateText:
    name: str
    source: str
    filename: str


def _line_col(text: str, offset: int) -> tuple[int, int]:
    before = text[:offset]
    line = before.count("\n") + 1
    return line, offset - (before.rfind("\n") + 1) + 1


def parse_bundle(prefix: str, text: str, filename: str) -> dict[str, TemplateText]:
    ret: dict[str, TemplateText] = {}

    start = text.find(HEAD_OPEN)
    while start != -1:
        try:
            end = text.find(HEAD_CLOSE, start)
            if end == -1:
                raise ValueError("unterminated template header")

            header = cast(dict, json5.loads("{" + text[start + len(HEAD_OPEN) : end] + "}"))
            name = f"{prefix}:{header['name']}"

            body_start = end + len(HEAD_CLOSE)
            next_start = text.find(HEAD_OPEN, body_start)
            body_end = len(text) if next_start == -1 else next_start

            # Keep the final newline of a body; drop the blank line before the next header.
            source = text[body_start:body_end].lstrip("\n").rstrip("\n") + "\n"
            ret[name] = TemplateText(name, source, filename)
            start = next_start
        except Exception as e:
            line, col = _line_col(text, start)
            e.add_note("Failed to parse template bundle")
            e.add_note(f"Position: {filename}:{line}:{col}")
            raise e

    return ret


def load_template(name: str) -> tuple[str, str, None] | None:
    if name not in _TEMPLATES:
        prefix = name.split(":")[0]
        resource = importlib.resources.files(_TEMPLATE_ANCHOR).joinpath(prefix + ".jinja")
        if resource.is_file():
            _TEMPLATES.update(parse_bundle(prefix, resource.read_text(), str(resource)))

    if name in _TEMPLATES:
        tpl = _TEMPLATES[name]
        return tpl.source, tpl.filename, None

    return None
