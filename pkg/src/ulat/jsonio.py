"""JSON fixture loading with schema validation and line-anchored errors."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema


class FixtureError(ValueError):
    """Malformed or schema-violating fixture; the message starts with file:line."""


_DECODER = json.JSONDecoder()
_WS = " \t\r\n"


def _skip(text, i):
    while i < len(text) and text[i] in _WS:
        i += 1
    return i


def _offsets(text, i, path, out):
    """Record the start offset of every value reachable from position i."""
    i = _skip(text, i)
    out[path] = i
    if text[i] == "{":
        i = _skip(text, i + 1)
        if text[i] == "}":
            return i + 1
        while True:
            key, i = json.decoder.scanstring(text, i + 1)
            i = _skip(text, i)
            i = _offsets(text, i + 1, path + (key,), out)
            i = _skip(text, i)
            if text[i] == "}":
                return i + 1
            i = _skip(text, i + 1)
    if text[i] == "[":
        i = _skip(text, i + 1)
        if text[i] == "]":
            return i + 1
        k = 0
        while True:
            i = _offsets(text, i, path + (k,), out)
            k += 1
            i = _skip(text, i)
            if text[i] == "]":
                return i + 1
            i += 1
    _, end = _DECODER.raw_decode(text, i)
    return end


def line_of(text, path):
    """1-based line of the JSON value at ``path`` (or of its nearest ancestor)."""
    out = {}
    _offsets(text, 0, (), out)
    path = tuple(path)
    while path not in out and path:
        path = path[:-1]
    return text.count("\n", 0, out.get(path, 0)) + 1


@lru_cache(maxsize=None)
def schema(name):
    ref = resources.files("ulat") / "schemas" / f"{name}.schema.json"
    return json.loads(ref.read_text())


def load(path, schema_name=None):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FixtureError(f"{path}:0: cannot read: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from None
    if schema_name is not None:
        validator = jsonschema.Draft202012Validator(schema(schema_name))
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(map(str, e.path)))
        if errors:
            err = errors[0]
            path_ = list(err.path)
            if err.validator == "additionalProperties" and isinstance(err.instance, dict):
                known = set(err.schema.get("properties", {}))
                extra = sorted(k for k in err.instance if k not in known)
                path_ += extra[:1]
            where = "/".join(str(p) for p in err.path) or "<root>"
            raise FixtureError(f"{path}:{line_of(text, path_)}: {where}: {err.message}")
    return doc
