"""
Formats
OFF input, XPC complexes, OBJ export and TSV reports
"""

import logging
from fractions import Fraction
from pathlib import Path

import numpy as np

from .complex_core import CrossPolytopalComplex, OctaCell, SimplicialPolytope
from .errors import ParseError
from .exact_geom import Point, orient

logger = logging.getLogger(__name__)

XPC_HEADER = "xpc 1"


def _read_text(path):
    """UTF-8 text of path; undecodable bytes become a ParseError on their line"""
    data = path.read_bytes()
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        raise ParseError(f"invalid UTF-8 ({exc.reason})", str(path), line) from None


def _content_lines(text):
    """(line number, stripped content) for every non-blank, non-comment line"""
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


class _LineReader:
    def __init__(self, text, path):
        self.path = path
        self._lines = list(_content_lines(text))
        self._pos = 0
        self.last_line = 0

    def next(self, what):
        if self._pos >= len(self._lines):
            raise ParseError(f"unexpected end of file, expected {what}", self.path, self.last_line + 1)
        number, line = self._lines[self._pos]
        self._pos += 1
        self.last_line = number
        return number, line.split()

    def at_end(self):
        return self._pos >= len(self._lines)

    def fail(self, message, line=None):
        return ParseError(message, self.path, self.last_line if line is None else line)

    def integer(self, token, line):
        try:
            return int(token)
        except ValueError:
            raise self.fail(f"expected an integer, got {token!r}", line) from None

    def rational(self, token, line):
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise self.fail(f"expected a rational number, got {token!r}", line) from None

    def point(self, tokens, line):
        if len(tokens) != 3:
            raise self.fail(f"expected 3 coordinates, got {len(tokens)}", line)
        return Point(*(self.rational(tok, line) for tok in tokens))

    def indices(self, tokens, count, limit, line, distinct=False):
        if len(tokens) < count:
            raise self.fail(f"expected {count} vertex indices, got {len(tokens)}", line)
        values = [self.integer(tok, line) for tok in tokens[:count]]
        bad = [v for v in values if not 0 <= v < limit]
        if bad:
            raise self.fail(f"vertex index {bad[0]} out of range 0..{limit - 1}", line)
        if distinct and len(set(values)) != count:
            raise self.fail(f"repeated vertex index in {values}", line)
        return values


def parse_off(text, path=None):
    """
    Parse OFF text with decimal or "p/q" coordinates

    Only triangular facets are accepted. Facet orientation is kept as written.

    Raises:
        ParseError: with the offending line number
    """
    reader = _LineReader(text, path)
    number, tokens = reader.next("OFF header")
    if tokens[0].upper() != "OFF":
        raise reader.fail(f"expected OFF header, got {tokens[0]!r}", number)
    counts = tokens[1:]
    if not counts:
        number, counts = reader.next("vertex and facet counts")
    if len(counts) < 2:
        raise reader.fail("expected vertex and facet counts", number)
    n_vertices, n_facets = reader.integer(counts[0], number), reader.integer(counts[1], number)
    if n_vertices < 0 or n_facets < 0:
        raise reader.fail("counts must be non-negative", number)

    vertices = []
    for _ in range(n_vertices):
        number, tokens = reader.next(f"{n_vertices} vertex lines")
        vertices.append(reader.point(tokens, number))

    facets = []
    for _ in range(n_facets):
        number, tokens = reader.next(f"{n_facets} facet lines")
        size = reader.integer(tokens[0], number)
        if size != 3:
            raise reader.fail(f"only triangular facets are supported, got a {size}-gon", number)
        facets.append(tuple(reader.indices(tokens[1:], 3, n_vertices, number)))

    if not reader.at_end():
        number, _ = reader.next("end of file")
        raise reader.fail("unexpected trailing data", number)
    return SimplicialPolytope(vertices, facets)


def dumps_off(p):
    lines = ["OFF", f"{len(p.vertices)} {len(p.facets)} {len(p.edges())}"]
    lines.extend(f"{v.x} {v.y} {v.z}" for v in p.vertices)
    lines.extend(f"3 {a} {b} {c}" for a, b, c in p.facets)
    return "\n".join(lines) + "\n"


def write_off(p, path):
    """Exact OFF writer (coordinates as p/q tokens)"""
    Path(path).write_text(dumps_off(p), encoding="utf-8")


class PolytopeLoader:
    """Loader for OFF polytope files"""

    def __init__(self, orient_facets=True, validate=True):
        """
        Initialize loader

        Args:
            orient_facets: re-orient facets outward after parsing
            validate: raise InvalidPolytope unless the input is a convex
                      simplicial 3-polytope
        """
        self.orient_facets = orient_facets
        self.validate = validate

    def load(self, filepath):
        """
        Load a polytope from an OFF file

        Args:
            filepath: Path to OFF file

        Returns:
            SimplicialPolytope
        """
        filepath = Path(filepath)
        if not filepath.exists():
            raise FileNotFoundError(f"File not found: {filepath}")

        polytope = parse_off(_read_text(filepath), path=str(filepath))
        if self.orient_facets:
            polytope = polytope.oriented()
        if self.validate:
            polytope.validate()

        f0, f1, f2 = polytope.f_vector()
        logger.info("loaded %s: f0=%d f1=%d f2=%d", filepath.name, f0, f1, f2)
        return polytope


def load_off_file(filepath, validate=True):
    """Convenience function to load an OFF file"""
    return PolytopeLoader(validate=validate).load(filepath)


def dumps_xpc(c):
    lines = [XPC_HEADER, f"vertices {len(c.vertices)}"]
    lines.extend(f"{v.x} {v.y} {v.z}" for v in c.vertices)
    lines.append(f"cells {len(c.cells)}")
    for cell in c.cells:
        tag = "" if cell.cell_type is None else f" {cell.cell_type}"
        lines.append(" ".join(str(i) for i in cell.vertices) + tag)
    boundary = c.boundary
    lines.append(f"boundary {len(boundary)}")
    lines.extend(" ".join(str(i) for i in tri) for tri in boundary)
    return "\n".join(lines) + "\n"


def _block(reader, name):
    number, tokens = reader.next(f"'{name}' block")
    if len(tokens) != 2 or tokens[0] != name:
        raise reader.fail(f"expected '{name} <count>'", number)
    count = reader.integer(tokens[1], number)
    if count < 0:
        raise reader.fail("count must be non-negative", number)
    return count


def loads_xpc(text, path=None):
    """
    Parse XPC text

    The boundary block, when present, is checked for syntax only; the
    boundary is always derived from the cells.
    """
    reader = _LineReader(text, path)
    number, tokens = reader.next("xpc header")
    if " ".join(tokens) != XPC_HEADER:
        raise reader.fail(f"expected header '{XPC_HEADER}'", number)

    vertices = []
    for _ in range(_block(reader, "vertices")):
        number, tokens = reader.next("vertex line")
        vertices.append(reader.point(tokens, number))

    cells = []
    for _ in range(_block(reader, "cells")):
        number, tokens = reader.next("cell line")
        if len(tokens) not in (6, 7):
            raise reader.fail(f"expected 6 vertex indices and an optional type, got {len(tokens)} tokens", number)
        ids = reader.indices(tokens, 6, len(vertices), number, distinct=True)
        cell_type = reader.integer(tokens[6], number) if len(tokens) == 7 else None
        if cell_type is not None and cell_type not in (1, 2, 3, 4):
            raise reader.fail(f"cell type must be 1-4, got {cell_type}", number)
        cells.append(OctaCell(tuple(ids), cell_type))

    if not reader.at_end():
        for _ in range(_block(reader, "boundary")):
            number, tokens = reader.next("boundary line")
            reader.indices(tokens, 3, len(vertices), number, distinct=True)
    if not reader.at_end():
        number, _ = reader.next("end of file")
        raise reader.fail("unexpected trailing data", number)
    return CrossPolytopalComplex(tuple(vertices), tuple(cells))


def write_xpc(c, path):
    Path(path).write_text(dumps_xpc(c), encoding="utf-8")


def read_xpc(path):
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")
    return loads_xpc(_read_text(path), path=str(path))


def _decimal(q):
    return np.format_float_positional(float(q), unique=True, trim="-")


def dumps_obj(c):
    """Triangle mesh of all cell facets, outward per cell, coordinates as floats"""
    lines = [f"# octa export: {len(c.vertices)} vertices, {8 * len(c.cells)} triangles"]
    lines.extend(f"v {_decimal(v.x)} {_decimal(v.y)} {_decimal(v.z)}" for v in c.vertices)
    for cell in c.cells:
        lines.append(f"g cell_type_{cell.cell_type}" if cell.cell_type is not None else "g cell")
        for a, b, x in cell.triangles():
            inner = cell.antipode(a)
            if orient(c.vertices[a], c.vertices[b], c.vertices[x], c.vertices[inner]) > 0:
                b, x = x, b
            lines.append(f"f {a + 1} {b + 1} {x + 1}")
    return "\n".join(lines) + "\n"


def write_obj(c, path):
    Path(path).write_text(dumps_obj(c), encoding="utf-8")


def dumps_report(report):
    rows = []
    for name, status, detail in report.rows():
        detail = " ".join(str(detail).split())
        rows.append(f"{name}\t{status}\t{detail}")
    return "\n".join(rows) + "\n"


def write_report(report, path):
    """One check per line: name TAB pass|fail TAB detail"""
    Path(path).write_text(dumps_report(report), encoding="utf-8")
