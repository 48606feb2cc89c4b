"""Text formats for loops, designs and rectangles, plus JSON run reports.

Loop file: a line with ``n``, then ``n`` lines of ``n`` symbols.
Design file: a line ``v b``, then ``b`` lines of 0-based point indices.
Rectangle file: a line ``rows m``, then the rows.
Blank lines and ``#`` comments are ignored on input.
"""
from __future__ import annotations

import json
import os
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

from .catalog import catalog
from .designs import IncidenceStructure
from .errors import ParseError
from .loop import LoopTable, validate


def _lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((no, line.split()))
    return out


def _ints(no: int, tokens: list[str]) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(no, f"expected integers, got {' '.join(tokens)!r}") from None


def loads_loop(text: str, name: str | None = None) -> LoopTable:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty loop file")
    no, head = lines[0]
    if len(head) != 1:
        raise ParseError(no, "first line must hold the order n")
    n = _ints(no, head)[0]
    body = lines[1:]
    if len(body) != n:
        raise ParseError(body[-1][0] if body else no, f"expected {n} table rows, found {len(body)}")
    rows = []
    for no, tokens in body:
        row = _ints(no, tokens)
        if len(row) != n:
            raise ParseError(no, f"expected {n} symbols, found {len(row)}")
        rows.append(row)
    return validate(rows, name)


def dumps_loop(q: LoopTable) -> str:
    width = len(str(q.n - 1))
    rows = [" ".join(str(v).rjust(width) for v in row) for row in q.cayley]
    return "\n".join([str(q.n)] + rows) + "\n"


def parse_loop(path: str | os.PathLike) -> LoopTable:
    p = Path(path)
    return loads_loop(p.read_text(), p.stem)


def write_loop(q: LoopTable, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_loop(q))


def load_loop(spec: str) -> LoopTable:
    """``catalog:NAME`` or a loop file path; bare catalog names work when no such file exists."""
    if spec.startswith("catalog:"):
        return catalog(spec)
    if os.path.exists(spec):
        return parse_loop(spec)
    return catalog(spec)


def loads_design(text: str) -> IncidenceStructure:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty design file")
    no, head = lines[0]
    vb = _ints(no, head)
    if len(vb) != 2:
        raise ParseError(no, "first line must be 'v b'")
    v, b = vb
    body = lines[1:]
    if len(body) != b:
        raise ParseError(body[-1][0] if body else no, f"expected {b} blocks, found {len(body)}")
    blocks = []
    for no, tokens in body:
        pts = _ints(no, tokens)
        if any(not 0 <= p < v for p in pts):
            raise ParseError(no, f"points must lie in 0..{v - 1}")
        if len(set(pts)) != len(pts):
            raise ParseError(no, "repeated point in a block")
        blocks.append(frozenset(pts))
    return IncidenceStructure(tuple(range(v)), tuple(blocks))


def dumps_design(d: IncidenceStructure) -> str:
    norm, _ = d.normalized()
    lines = [f"{norm.v} {norm.b}"]
    lines += [" ".join(map(str, sorted(b))) for b in norm.blocks]
    return "\n".join(lines) + "\n"


def parse_design(path: str | os.PathLike) -> IncidenceStructure:
    return loads_design(Path(path).read_text())


def write_design(d: IncidenceStructure, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps_design(d))


def dumps_rectangle(rect: Sequence[Sequence[int]]) -> str:
    m = len(rect[0]) if rect else 0
    return "\n".join([f"{len(rect)} {m}"] + [" ".join(map(str, r)) for r in rect]) + "\n"


def loads_rectangle(text: str) -> tuple[tuple[int, ...], ...]:
    lines = _lines(text)
    if not lines:
        raise ParseError(1, "empty rectangle file")
    no, head = lines[0]
    dims = _ints(no, head)
    if len(dims) != 2:
        raise ParseError(no, "first line must be 'rows m'")
    rows, m = dims
    body = [tuple(_ints(no, t)) for no, t in lines[1:]]
    if len(body) != rows or any(len(r) != m for r in body):
        raise ParseError(no, f"expected {rows} rows of {m} symbols")
    return tuple(body)


# -- reports ----------------------------------------------------------------


def _jsonable(obj: Any) -> Any:
    if isinstance(obj, (frozenset, set)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, Counter):
        return {str(k): v for k, v in sorted(obj.items())}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if hasattr(obj, "item"):  # numpy scalars
        return obj.item()
    return obj


@dataclass
class RunReport:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    parameters: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    timing: float | None = None
    truncated: bool = False

    def to_dict(self, with_timing: bool = False) -> dict[str, Any]:
        d = {
            "command": self.command,
            "inputs": _jsonable(self.inputs),
            "parameters": _jsonable(self.parameters),
            "results": _jsonable(self.results),
            "truncated": self.truncated,
        }
        if with_timing and self.timing is not None:
            d["timing"] = round(self.timing, 3)
        return d

    def to_json(self, with_timing: bool = False) -> str:
        return json.dumps(self.to_dict(with_timing), indent=2, sort_keys=True) + "\n"


def emit_report(report: RunReport, path: str | os.PathLike | None = None, with_timing: bool = False) -> str:
    text = report.to_json(with_timing)
    if path is not None:
        Path(path).write_text(text)
    return text


def read_report(path: str | os.PathLike) -> dict[str, Any]:
    return json.loads(Path(path).read_text())


def format_table(rows: Iterable[Sequence[Any]], header: Sequence[str] | None = None) -> str:
    """Left-aligned columns separated by two spaces."""
    rows = [[str(c) for c in r] for r in rows]
    if header:
        rows.insert(0, list(header))
    if not rows:
        return ""
    widths = [max(len(r[i]) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
