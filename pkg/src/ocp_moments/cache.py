"""On-disk cache of coefficient tables."""

from __future__ import annotations

__all__ = [
    "FORMAT_VERSION",
    "cache_file_name",
    "save_table",
    "load_table",
    "cached_expand",
]

import logging
from pathlib import Path

from pydantic import ValidationError

from .error import ParseError, FormatVersionError, ChecksumError, Position, PlasmaError
from .expansion import CoefficientTable, expand, CHECKSUM_MODULUS
from .models import PlasmaParams
from .parser import parse_header
from .partitions import DEFAULT_MEMBER_LIMIT, Partition
from .report import render

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def cache_file_name(params: PlasmaParams) -> str:
    return f"vdm_N{params.N}_G{params.Gamma}.txt"


def save_table(table: CoefficientTable, path: Path) -> None:
    text = render(
        "ocpm:cache_file",
        version=FORMAT_VERSION,
        N=table.params.N,
        gamma=table.params.Gamma,
        count=len(table),
        checksum=table.checksum(),
        entries=table.items(),
    )
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text, encoding="utf-8", newline="\n")
    tmp.replace(path)


def _parse_entry(line: str, N: int, file: str, lineno: int) -> tuple[Partition, int]:
    try:
        parts_text, value_text = line.split("\t")
        parts = [int(v) for v in parts_text.split(",")]
        value = int(value_text)
        if len(parts) != N:
            raise ValueError(f"expected {N} parts")
        return Partition(parts), value
    except ValueError as e:
        raise ParseError(f"bad entry {line!r}: {e}", Position(file, lineno, 1)) from e


def load_table(path: Path) -> CoefficientTable:
    file = str(path)
    text = path.read_text(encoding="utf-8")
    if "\n" not in text:
        raise ChecksumError("truncated header", Position(file, 1, len(text) + 1))

    header_line, *lines = text.split("\n")
    header = parse_header(header_line, file)
    if header.version != FORMAT_VERSION:
        raise FormatVersionError(
            f"version {header.version}, expected {FORMAT_VERSION}",
            Position(file, 1, 1),
        )
    if lines and lines[-1] == "":
        lines.pop()
    else:
        raise ChecksumError("missing final newline", Position(file, len(lines) + 1, 1))

    if len(lines) != header.count:
        raise ChecksumError(
            f"{len(lines)} entries, header says {header.count}",
            Position(file, len(lines) + 1, 1),
        )

    try:
        params = PlasmaParams(N=header.N, Gamma=header.gamma)
    except ValidationError as e:
        message = "; ".join(err["msg"] for err in e.errors())
        raise ParseError(f"bad header values: {message}", Position(file, 1, 1)) from e

    entries: dict[Partition, int] = {}
    for lineno, line in enumerate(lines, start=2):
        mu, c = _parse_entry(line, header.N, file, lineno)
        entries[mu] = c

    checksum = sum(abs(c) for c in entries.values()) % CHECKSUM_MODULUS
    if checksum != header.checksum or len(entries) != header.count:
        raise ChecksumError(
            f"checksum {checksum}, header says {header.checksum}", Position(file, 1, 1)
        )

    return CoefficientTable(params=params, entries=entries)


def cached_expand(
    params: PlasmaParams,
    cache_dir: Path,
    member_limit: int = DEFAULT_MEMBER_LIMIT,
) -> tuple[CoefficientTable, bool]:
    """Load the table for params from cache_dir, computing it on a miss.

    Returns the table and whether it came from the cache.
    """
    path = cache_dir / cache_file_name(params)
    if path.exists():
        try:
            table = load_table(path)
            if table.params == params:
                logger.info("%s: loaded %s", params.label, path)
                return table, True
            logger.warning("%s: %s holds %s, recomputing", params.label, path, table.label)
        except PlasmaError as e:
            logger.warning("%s: unusable cache file, recomputing: %s", params.label, e)

    table = expand(params, member_limit=member_limit)
    save_table(table, path)
    logger.info("%s: saved %s", params.label, path)
    return table, False
