"""Reading and writing the SHG (one family) and SHGM (t families) text formats.

SHG::

    SHG 1
    n=5 k=2
    1 2
    1 3

SHGM::

    SHGM 1
    n=5 t=2
    family k=2
    1 2
    family k=1
    3

Lines starting with ``#`` (after optional whitespace) and blank lines are
ignored anywhere.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

from .errors import ParseError, ValidationError
from .family import ColoredFamilies, SetFamily, make_family

_HEADER_SHG = "SHG 1"
_HEADER_SHGM = "SHGM 1"


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _parse_kv(line: str, lineno: int, keys: tuple) -> dict:
    pattern = r"\s+".join(rf"{key}=(-?\d+)" for key in keys)
    match = re.fullmatch(pattern, line)
    if match is None:
        want = " ".join(f"{key}=<int>" for key in keys)
        raise ParseError(f"expected '{want}', got {line!r}", lineno)
    return {key: int(val) for key, val in zip(keys, match.groups())}


def _parse_edge(line: str, lineno: int, n: int, k: int) -> tuple:
    try:
        verts = [int(tok) for tok in line.split()]
    except ValueError:
        raise ParseError(f"edge line must be integers, got {line!r}", lineno) from None
    if len(verts) != k:
        raise ParseError(f"edge has {len(verts)} vertices, expected k={k}", lineno)
    if any(b <= a for a, b in zip(verts, verts[1:])):
        raise ParseError(f"edge vertices must be strictly increasing: {line!r}", lineno)
    for v in verts:
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} outside 1..{n}", lineno)
    return tuple(verts)


def _family(n, k, edges, lineno):
    try:
        return make_family(n, k, edges)
    except ValidationError as exc:
        raise ParseError(str(exc), lineno) from None


def parse_shg(text: str) -> SetFamily:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    if header != _HEADER_SHG:
        raise ParseError(f"expected header {_HEADER_SHG!r}, got {header!r}", lineno)
    if len(lines) < 2:
        raise ParseError("missing 'n=<int> k=<int>' line", lineno + 1)
    lineno, line = lines[1]
    params = _parse_kv(line, lineno, ("n", "k"))
    n, k = params["n"], params["k"]
    if n < 0 or k < 1:
        raise ParseError(f"need n >= 0 and k >= 1, got n={n} k={k}", lineno)
    edges = [_parse_edge(line, no, n, k) for no, line in lines[2:]]
    return _family(n, k, edges, lineno)


def parse_shgm(text: str) -> ColoredFamilies:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, header = lines[0]
    if header != _HEADER_SHGM:
        raise ParseError(f"expected header {_HEADER_SHGM!r}, got {header!r}", lineno)
    if len(lines) < 2:
        raise ParseError("missing 'n=<int> t=<int>' line", lineno + 1)
    lineno, line = lines[1]
    params = _parse_kv(line, lineno, ("n", "t"))
    n, t = params["n"], params["t"]
    if n < 0 or t < 1:
        raise ParseError(f"need n >= 0 and t >= 1, got n={n} t={t}", lineno)

    blocks = []
    for no, line in lines[2:]:
        if line.startswith("family"):
            k = _parse_kv(line[len("family"):].strip(), no, ("k",))["k"]
            if k < 1:
                raise ParseError(f"family uniformity must be >= 1, got k={k}", no)
            blocks.append((no, k, []))
        elif not blocks:
            raise ParseError("edge before the first 'family k=<int>' line", no)
        else:
            _, k, edges = blocks[-1]
            edges.append(_parse_edge(line, no, n, k))
    if len(blocks) != t:
        last = lines[-1][0]
        raise ParseError(f"header declares t={t} families, found {len(blocks)}", last)
    return ColoredFamilies(n, tuple(_family(n, k, edges, no) for no, k, edges in blocks))


def parse_any(text: str) -> Union[SetFamily, ColoredFamilies]:
    """Dispatch on the header line."""
    for lineno, line in _content_lines(text):
        if line == _HEADER_SHGM:
            return parse_shgm(text)
        if line == _HEADER_SHG:
            return parse_shg(text)
        raise ParseError(f"unknown header {line!r}", lineno)
    raise ParseError("empty input", 1)


def _edge_lines(F: SetFamily):
    return [" ".join(map(str, e)) for e in F]


def format_shg(F: SetFamily) -> str:
    return "\n".join([_HEADER_SHG, f"n={F.n} k={F.k}", *_edge_lines(F)]) + "\n"


def format_shgm(fams: ColoredFamilies) -> str:
    out = [_HEADER_SHGM, f"n={fams.n} t={fams.t}"]
    for F in fams:
        out.append(f"family k={F.k}")
        out.extend(_edge_lines(F))
    return "\n".join(out) + "\n"


def format_any(obj) -> str:
    return format_shgm(obj) if isinstance(obj, ColoredFamilies) else format_shg(obj)


def read(path) -> Union[SetFamily, ColoredFamilies]:
    return parse_any(Path(path).read_text())


def write(path, obj) -> None:
    Path(path).write_text(format_any(obj))
