"""Solution documents: JSON with ``n`` and exactly one representation key.

- ``r``: ``n^2`` pairs, ``r[x*n + y] = r(x, y)``
- ``sigma_gamma``: ``[sigmas, gammas]``, each ``n`` image arrays
- ``sd_sigma``: ``n`` image arrays, the SD set ``r(x, y) = (sigma_x(y), x)``

All indices are 0-based.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InvalidInput, ParseError, SchemaError
from .permutation import Permutation
from .qset import (QuadraticSet, is_non_degenerate, is_sd, make_from_r_table,
                   make_from_sigma_gamma, make_sd)

KEYS = ("r", "sigma_gamma", "sd_sigma")


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _int_rows(value, key: str, length: int, width: int | None = None) -> list[list[int]]:
    if not isinstance(value, list) or len(value) != length:
        raise SchemaError(f"{key}: expected a list of {length} entries")
    for i, row in enumerate(value):
        if not isinstance(row, list) or not all(_is_int(v) for v in row):
            raise SchemaError(f"{key}[{i}]: expected a list of integers")
        if width is not None and len(row) != width:
            raise SchemaError(f"{key}[{i}]: expected {width} integers, got {len(row)}")
    return value


def _with_location(err: InvalidInput, where: str) -> InvalidInput:
    err.args = (f"{where}: {err.args[0] if err.args else err}",) + err.args[1:]
    return err


def from_document(doc) -> QuadraticSet:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    unknown = sorted(set(doc) - {"n", *KEYS})
    if unknown:
        raise SchemaError(f"unknown keys: {', '.join(unknown)}")
    present = [k for k in KEYS if k in doc]
    if len(present) != 1:
        raise SchemaError(f"need exactly one of {', '.join(KEYS)}; found {len(present)}")
    n = doc.get("n")
    if not _is_int(n) or n < 1:
        raise SchemaError("n must be a positive integer")
    key = present[0]
    value = doc[key]
    try:
        if key == "r":
            return make_from_r_table(n, _int_rows(value, key, n * n, 2))
        if key == "sd_sigma":
            rows = _int_rows(value, key, n, n)
            return make_sd([Permutation(p) for p in rows])
        if not isinstance(value, list) or len(value) != 2:
            raise SchemaError("sigma_gamma: expected [sigmas, gammas]")
        sig = _int_rows(value[0], "sigma_gamma[0]", n, n)
        gam = _int_rows(value[1], "sigma_gamma[1]", n, n)
        return make_from_sigma_gamma([Permutation(p) for p in sig], [Permutation(p) for p in gam])
    except SchemaError:
        raise
    except InvalidInput as err:
        raise _with_location(err, key)


def parse_solution(text: str) -> QuadraticSet:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as err:
        raise ParseError(f"malformed JSON at line {err.lineno} column {err.colno}: {err.msg}") from None
    return from_document(doc)


def read_solution(path) -> QuadraticSet:
    try:
        text = Path(path).read_text()
    except OSError as err:
        raise ParseError(f"cannot read {path}: {err.strerror}") from None
    try:
        return parse_solution(text)
    except InvalidInput as err:
        raise _with_location(err, str(path))


def to_document(qs: QuadraticSet, form: str | None = None) -> dict:
    """Document for ``qs``: ``sd_sigma`` if SD, else ``sigma_gamma`` if
    non-degenerate, else ``r``, unless ``form`` forces one."""
    if form is None:
        form = "sd_sigma" if is_sd(qs) and qs.sigma is not None else (
            "sigma_gamma" if is_non_degenerate(qs) else "r")
    if form == "sd_sigma":
        if not is_sd(qs) or qs.sigma is None:
            raise SchemaError("sd_sigma needs an SD set with bijective sigma_x")
        return {"n": qs.n, "sd_sigma": [list(p.images) for p in qs.sigma]}
    if form == "sigma_gamma":
        if not is_non_degenerate(qs):
            raise SchemaError("sigma_gamma needs a non-degenerate set")
        return {"n": qs.n, "sigma_gamma": [[list(p.images) for p in qs.sigma],
                                           [list(p.images) for p in qs.gamma]]}
    if form == "r":
        return {"n": qs.n, "r": [list(p) for p in qs.r_table]}
    raise ValueError(f"unknown form {form!r}")


def dump_solution(qs: QuadraticSet, form: str | None = None) -> str:
    return json.dumps(to_document(qs, form), separators=(",", ":")) + "\n"


def write_solution(qs: QuadraticSet, path, form: str | None = None) -> None:
    Path(path).write_text(dump_solution(qs, form))
