"""Text formats for matrix polynomials and real Jordan data.

Both are JSON documents; any text from ``#`` to the end of a line is a
comment and is removed before parsing.

Polynomial file::

    {"kind": "Q", "n": 2, "degree": 2,
     "coeffs": [[[1, 0], [0, 1]], [[2, -3], [-3, 4]], [[2, -4], [-4, 8]]]}

Jordan file (for M_r of the normalized polynomial)::

    {"S": [[...], ...],
     "blocks": [{"kind": "real", "lambda": 0.0, "size": 2, "col_start": 0},
                {"kind": "complex", "alpha": -1.5, "beta": 1.66, "size": 2, "col_start": 2}]}
"""

from __future__ import annotations

import json
import re

import numpy as np

from .eigenstructure import JordanBlockDesc, RealJordanData
from .errors import InputError
from .matpoly import MatPoly

_COMMENT = re.compile(r"#[^\n]*")


class ParseError(InputError):
    stage = "parse"


def _load(text: str):
    try:
        return json.loads(_COMMENT.sub("", text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid document: {exc}") from exc


def _matrix(rows, nrows, ncols, what):
    if not isinstance(rows, list) or len(rows) != nrows:
        raise ParseError(f"{what}: expected {nrows} rows")
    for r in rows:
        if not isinstance(r, list) or len(r) != ncols:
            raise ParseError(f"{what}: expected rows of length {ncols}")
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"{what}: non-numeric entry {v!r}")
    return np.array(rows, dtype=float)


def parse_poly(text: str, kind: str | None = None) -> MatPoly:
    doc = _load(text)
    if not isinstance(doc, dict):
        raise ParseError("polynomial file must be an object")
    for key in ("n", "degree", "coeffs"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    n, degree = doc["n"], doc["degree"]
    if not (isinstance(n, int) and n > 0 and isinstance(degree, int) and degree >= 0):
        raise ParseError("n must be a positive integer and degree a non-negative integer")
    if kind is not None and doc.get("kind", kind) != kind:
        raise ParseError(f"expected a {kind} polynomial, file declares kind {doc['kind']!r}")
    coeffs = doc["coeffs"]
    if not isinstance(coeffs, list) or len(coeffs) != degree + 1:
        raise ParseError(f"expected {degree + 1} coefficient matrices")
    stack = np.array([_matrix(c, n, n, f"coeffs[{i}]") for i, c in enumerate(coeffs)])
    return MatPoly(stack)


def format_poly(p: MatPoly, kind: str | None = None) -> str:
    lines = ["{"]
    if kind is not None:
        lines.append(f'  "kind": "{kind}",')
    lines.append(f'  "n": {p.n},')
    lines.append(f'  "degree": {p.degree},')
    lines.append('  "coeffs": [')
    for i, C in enumerate(p.coeffs):
        rows = ", ".join("[" + ", ".join(f"{v:.17g}" for v in row) + "]" for row in C)
        sep = "," if i < p.degree else ""
        lines.append(f"    [{rows}]{sep}")
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_poly(path, kind: str | None = None) -> MatPoly:
    with open(path) as fh:
        return parse_poly(fh.read(), kind)


def write_poly(path, p: MatPoly, kind: str | None = None):
    with open(path, "w") as fh:
        fh.write(format_poly(p, kind))


def parse_jordan(text: str) -> RealJordanData:
    doc = _load(text)
    if not isinstance(doc, dict) or "S" not in doc or "blocks" not in doc:
        raise ParseError("Jordan file needs fields 'S' and 'blocks'")
    S = doc["S"]
    if not isinstance(S, list) or not S:
        raise ParseError("S must be a non-empty list of rows")
    S = _matrix(S, len(S), len(S), "S")
    blocks = []
    for i, b in enumerate(doc["blocks"]):
        try:
            if b["kind"] == "real":
                blocks.append(JordanBlockDesc("real", int(b["size"]), int(b["col_start"]),
                                              lam=float(b["lambda"])))
            else:
                blocks.append(JordanBlockDesc(b["kind"], int(b["size"]), int(b["col_start"]),
                                              alpha=float(b["alpha"]), beta=float(b["beta"])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"blocks[{i}]: {exc}") from exc
    return RealJordanData(S=S, blocks=blocks)


def format_jordan(jd: RealJordanData) -> str:
    blocks = []
    for b in jd.blocks:
        d = {"kind": b.kind, "size": b.size, "col_start": b.col_start}
        if b.kind == "real":
            d["lambda"] = b.lam
        else:
            d["alpha"], d["beta"] = b.alpha, b.beta
        blocks.append(d)
    rows = ",\n    ".join("[" + ", ".join(f"{v:.17g}" for v in row) + "]" for row in jd.S)
    return ('{\n  "S": [\n    ' + rows + '\n  ],\n  "blocks": '
            + json.dumps(blocks) + "\n}\n")


def read_jordan(path) -> RealJordanData:
    with open(path) as fh:
        return parse_jordan(fh.read())


def write_jordan(path, jd: RealJordanData):
    with open(path, "w") as fh:
        fh.write(format_jordan(jd))
