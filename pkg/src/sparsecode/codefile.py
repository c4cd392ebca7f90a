"""JSON code files: ``{"q": int, "n": int, "generators": [[int, ...], ...]}``."""

from __future__ import annotations

import json
import os
import tempfile
from importlib import resources
from pathlib import Path

from .code import LinearCode, Word, code_from_generators
from .errors import CompositeOrder, ParseError
from .field import FieldSpec

FIXTURES = {"repetition": "repetition_q3_n3.json"}


def code_to_json(code: LinearCode) -> str:
    obj = {"q": code.q, "n": code.n, "generators": code.generators.tolist()}
    return json.dumps(obj) + "\n"


def code_from_json(text: str, source: str = "<string>") -> LinearCode:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: top level must be an object")
    for key in ("q", "n", "generators"):
        if key not in obj:
            raise ParseError(f"{source}: missing field '{key}'")
    q, n, rows = obj["q"], obj["n"], obj["generators"]
    if not isinstance(q, int) or isinstance(q, bool):
        raise ParseError(f"{source}: field 'q' must be an integer")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"{source}: field 'n' must be a positive integer")
    if not isinstance(rows, list):
        raise ParseError(f"{source}: field 'generators' must be a list of rows")
    try:
        field = FieldSpec(q)
    except CompositeOrder as exc:
        raise ParseError(f"{source}: field 'q': {exc}") from exc
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{source}: field 'generators[{r}]' must be a list of {n} residues")
        for j, s in enumerate(row):
            if not isinstance(s, int) or isinstance(s, bool) or not 0 <= s < q:
                raise ParseError(f"{source}: field 'generators[{r}][{j}]' = {s!r} "
                                 f"is not a residue mod {q}")
    return code_from_generators(field, n, rows)


def load_code(path: str | os.PathLike) -> LinearCode:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return code_from_json(text, str(path))


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory and rename over the target."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_code(code: LinearCode, path: str | os.PathLike) -> None:
    write_atomic(path, code_to_json(code))


def fixture_path(name: str) -> Path:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}")
    return Path(str(resources.files("sparsecode") / "data" / FIXTURES[name]))


def parse_word(field: FieldSpec, n: int, source: str) -> Word:
    """A word from ``"1,0,2"`` or from a JSON file holding a list or ``{"symbols": [...]}``."""
    if os.path.exists(source):
        try:
            obj = json.loads(Path(source).read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
        values = obj.get("symbols") if isinstance(obj, dict) else obj
    else:
        try:
            values = [int(s) for s in source.replace(" ", "").split(",") if s]
        except ValueError as exc:
            raise ParseError(f"cannot read word {source!r}") from exc
    if not isinstance(values, list) or len(values) != n:
        raise ParseError(f"word must have {n} symbols")
    if any(not isinstance(s, int) or not 0 <= s < field.q for s in values):
        raise ParseError(f"word symbols must be residues mod {field.q}")
    return Word(field, tuple(values))
