"""Canonical configuration file format and JSON report serialization."""

from __future__ import annotations

import hashlib
import json
import math
import re
from fractions import Fraction
from pathlib import Path

from .configuration import ColoredConfiguration
from .errors import ParseError

REPORT_SCHEMA_VERSION = 1

_FLOAT_TOKEN = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


def configuration_text(cfg: ColoredConfiguration) -> str:
    """Canonical UTF-8 text: shortest round-trip decimal coordinates."""
    lines = [f"dim {cfg.dim} classes {len(cfg.classes)}"]
    for i, cls in enumerate(cfg.classes):
        lines.append(f"class {i} size {cls.shape[0]}")
        for row in cls.tolist():
            lines.append(" ".join(repr(float(x)) for x in row))
    return "\n".join(lines) + "\n"


def configuration_hash(cfg: ColoredConfiguration) -> str:
    return hashlib.sha256(configuration_text(cfg).encode("utf-8")).hexdigest()


class _Cursor:
    def __init__(self, text: str):
        self.lines = text.split("\n")
        self.index = 0

    @property
    def line_no(self) -> int:
        return self.index + 1

    def next_line(self, what: str) -> str:
        while self.index < len(self.lines):
            line = self.lines[self.index]
            self.index += 1
            if line.strip():
                return line
        raise ParseError(f"unexpected end of file, expected {what}", self.line_no)

    def finished(self) -> bool:
        return all(not l.strip() for l in self.lines[self.index :])


def _tokens_with_columns(line: str) -> list[tuple[str, int]]:
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", line)]


def _parse_int(tok: str, col: int, line_no: int, what: str) -> int:
    if not tok.isdigit():
        raise ParseError(f"expected {what}, got {tok!r}", line_no, col)
    return int(tok)


def _parse_float(tok: str, col: int, line_no: int) -> float:
    if not _FLOAT_TOKEN.match(tok):
        raise ParseError(f"expected a finite decimal, got {tok!r}", line_no, col)
    value = float(tok)
    if not math.isfinite(value):
        raise ParseError(f"non-finite coordinate {tok!r}", line_no, col)
    return value


def parse_configuration(text: str) -> ColoredConfiguration:
    cur = _Cursor(text)
    header = cur.next_line("header")
    toks = _tokens_with_columns(header)
    line_no = cur.line_no - 1
    if len(toks) != 4 or toks[0][0] != "dim" or toks[2][0] != "classes":
        raise ParseError(
            "header must read 'dim <d> classes <k>'",
            line_no,
            toks[0][1] if toks else 1,
        )
    dim = _parse_int(toks[1][0], toks[1][1], line_no, "dimension")
    nclasses = _parse_int(toks[3][0], toks[3][1], line_no, "class count")
    if dim < 1:
        raise ParseError("dimension must be >= 1", line_no, toks[1][1])
    classes = []
    for i in range(nclasses):
        head = cur.next_line(f"class {i} header")
        line_no = cur.line_no - 1
        toks = _tokens_with_columns(head)
        if len(toks) != 4 or toks[0][0] != "class" or toks[2][0] != "size":
            raise ParseError(
                "class header must read 'class <i> size <n>'",
                line_no,
                toks[0][1] if toks else 1,
            )
        idx = _parse_int(toks[1][0], toks[1][1], line_no, "class index")
        size = _parse_int(toks[3][0], toks[3][1], line_no, "class size")
        if idx != i:
            raise ParseError(f"expected class index {i}", line_no, toks[1][1])
        if size < 1:
            raise ParseError("class size must be >= 1", line_no, toks[3][1])
        rows = []
        for _ in range(size):
            body = cur.next_line("coordinate line")
            line_no = cur.line_no - 1
            coord_toks = _tokens_with_columns(body)
            if len(coord_toks) != dim:
                raise ParseError(
                    f"expected {dim} coordinates, got {len(coord_toks)}",
                    line_no,
                    coord_toks[0][1] if coord_toks else 1,
                )
            rows.append(
                [_parse_float(t, c, line_no) for t, c in coord_toks]
            )
        classes.append(rows)
    if not cur.finished():
        raise ParseError("trailing content after last class", cur.line_no)
    try:
        return ColoredConfiguration(classes)
    except Exception as exc:
        raise ParseError(str(exc), 1) from exc


def read_configuration(path: str | Path) -> ColoredConfiguration:
    return parse_configuration(Path(path).read_text(encoding="utf-8"))


def write_configuration(cfg: ColoredConfiguration, path: str | Path) -> None:
    Path(path).write_text(configuration_text(cfg), encoding="utf-8")


def rational_json(value: Fraction) -> dict:
    return {"num": value.numerator, "den": value.denominator}


def report_json(report: dict) -> str:
    """Deterministic serialization: sorted keys, fixed separators."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def write_report(report: dict, path: str | Path) -> None:
    Path(path).write_text(report_json(report), encoding="utf-8")
