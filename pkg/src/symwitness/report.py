"""Deterministic JSON/CSV output with a provenance header."""
from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__


def format_float(x):
    """17 significant digits; always carries a decimal point or exponent."""
    text = format(float(x), ".17g")
    if not np.isfinite(x):
        raise ValueError(f"non-finite value {x!r} cannot be serialised")
    return text if any(c in text for c in ".e") else text + ".0"


def dumps(obj, indent=1, _level=0):
    """JSON text with fixed 17-digit floats and insertion-ordered keys."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(None if obj is None else bool(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _header(seed, config):
    return {"version": __version__, "seed": seed, "config": config}


def render(results, fmt="json", seed=None, config=None):
    """Serialise ``results`` to text.

    JSON output is ``{"header": ..., "results": ...}``.  CSV output needs a
    list of flat dicts; the header is written as ``#``-prefixed lines and the
    columns follow the key order of the first row.
    """
    header = _header(seed, config or {})
    if fmt == "json":
        return dumps({"header": header, "results": results}) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(results, dict):
        results = [results]
    buf = io.StringIO()
    buf.write(f"# version: {header['version']}\n# seed: {seed}\n")
    buf.write("# config: " + json.dumps(header["config"], sort_keys=True, default=str) + "\n")
    if results:
        writer = csv.DictWriter(buf, fieldnames=list(results[0]), lineterminator="\n")
        writer.writeheader()
        for row in results:
            writer.writerow({k: (format_float(v) if isinstance(v, (float, np.floating)) else v)
                             for k, v in row.items()})
    return buf.getvalue()


def emit(results, fmt="json", path=None, seed=None, config=None):
    text = render(results, fmt, seed, config)
    if path is None:
        sys.stdout.write(text)
        return None
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"could not write {fmt} output to {path}: {exc}") from exc
    return path
