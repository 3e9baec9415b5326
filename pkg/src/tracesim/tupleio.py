"""Tuple file format: the on-disk shape of a d-tuple of n x n matrices.

JSON object with keys:

    field     "rational" | "float64" | "complex128"
    star      "transpose" | "conjugate"   (optional; kind-appropriate default)
    n, d      dimensions
    matrices  d arrays of n*n entries, row-major

Entries are "p/q" or "p" strings for rationals (denominator positive by
syntax), plain numbers for float64, and [re, im] pairs for complex128.
Parsing then printing then parsing is the identity.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import TupleFileError
from .fields import Field, Kind, StarMode
from .matrices import Matrix, MatrixTuple

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")

_FIELD_NAMES = {k.value: k for k in Kind}
_STAR_NAMES = {s.value: s for s in StarMode}


def field_from_names(field_name: str, star_name: str | None) -> Field:
    if field_name not in _FIELD_NAMES:
        raise TupleFileError("unknown field %r" % field_name)
    kind = _FIELD_NAMES[field_name]
    if star_name is None:
        star = StarMode.CONJUGATE_TRANSPOSE if kind is Kind.COMPLEX128 else StarMode.TRANSPOSE
    else:
        if star_name not in _STAR_NAMES:
            raise TupleFileError("unknown star mode %r" % star_name)
        star = _STAR_NAMES[star_name]
    try:
        return Field(kind, star)
    except Exception as exc:
        raise TupleFileError(str(exc))


def parse_entry(field: Field, raw):
    kind = field.kind
    if kind is Kind.RATIONAL:
        if not isinstance(raw, str) or not _RATIONAL_RE.match(raw):
            raise TupleFileError("rational entries are 'p' or 'p/q' strings, got %r" % (raw,))
        try:
            return Fraction(raw)
        except ZeroDivisionError:
            raise TupleFileError("zero denominator in %r" % (raw,))
    if kind is Kind.REAL64:
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise TupleFileError("float64 entries are numbers, got %r" % (raw,))
        return float(raw)
    if (not isinstance(raw, (list, tuple)) or len(raw) != 2
            or any(isinstance(x, bool) or not isinstance(x, (int, float)) for x in raw)):
        raise TupleFileError("complex128 entries are [re, im] pairs, got %r" % (raw,))
    return complex(raw[0], raw[1])


def format_entry(field: Field, value):
    if field.kind is Kind.RATIONAL:
        return str(value)
    if field.kind is Kind.REAL64:
        return value
    return [value.real, value.imag]


def tuple_from_dict(doc: dict) -> MatrixTuple:
    try:
        field = field_from_names(doc["field"], doc.get("star"))
        n = int(doc["n"])
        d = int(doc["d"])
        matrices = doc["matrices"]
    except KeyError as exc:
        raise TupleFileError("missing key %s" % exc)
    if n < 1 or d < 1:
        raise TupleFileError("n and d must be positive")
    if not isinstance(matrices, list) or len(matrices) != d:
        raise TupleFileError("expected %d matrices" % d)
    mats = []
    for entries in matrices:
        if not isinstance(entries, list) or len(entries) != n * n:
            raise TupleFileError("each matrix needs n*n = %d entries" % (n * n))
        vals = [parse_entry(field, e) for e in entries]
        mats.append(Matrix(field, n, n, tuple(vals)))
    return MatrixTuple.of(*mats)


def tuple_to_dict(x: MatrixTuple) -> dict:
    return {
        "field": x.field.kind.value,
        "star": x.field.star_mode.value,
        "n": x.n,
        "d": x.d,
        "matrices": [[format_entry(x.field, e) for e in m.entries] for m in x.matrices],
    }


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise TupleFileError("cannot read %s: %s" % (path, exc))
    except json.JSONDecodeError as exc:
        raise TupleFileError("%s is not valid JSON: %s" % (path, exc))
    if not isinstance(doc, dict):
        raise TupleFileError("%s: top level must be an object" % path)
    return doc


def load_tuple(path: str) -> MatrixTuple:
    return tuple_from_dict(_read_json(path))


def load_rect_matrix(path: str) -> Matrix:
    """Single possibly-rectangular matrix (the Sylvester right-hand side).

    Same format as a d=1 tuple file plus an optional "cols" key; entries
    are n*cols row-major.
    """
    doc = _read_json(path)
    try:
        field = field_from_names(doc["field"], doc.get("star"))
        n = int(doc["n"])
        cols = int(doc.get("cols", n))
        matrices = doc["matrices"]
    except KeyError as exc:
        raise TupleFileError("missing key %s" % exc)
    if int(doc.get("d", 1)) != 1 or not isinstance(matrices, list) or len(matrices) != 1:
        raise TupleFileError("expected a single matrix")
    entries = matrices[0]
    if not isinstance(entries, list) or len(entries) != n * cols:
        raise TupleFileError("matrix needs n*cols = %d entries" % (n * cols))
    return Matrix(field, n, cols, tuple(parse_entry(field, e) for e in entries))


def dump_tuple(x: MatrixTuple) -> str:
    return json.dumps(tuple_to_dict(x), indent=2) + "\n"


def save_tuple(x: MatrixTuple, path: str):
    with open(path, "w") as fh:
        fh.write(dump_tuple(x))


def matrix_entry_row_strings(m: Matrix) -> list:
    """Rows rendered in tuple-file entry syntax, for witness printing."""
    rows = []
    for i in range(m.rows):
        cells = []
        for j in range(m.cols):
            e = format_entry(m.field, m.at(i, j))
            cells.append(json.dumps(e) if isinstance(e, list) else str(e))
        rows.append(" ".join(cells))
    return rows
