"""Small shared helpers: atomic writes and JSON plumbing."""
from __future__ import annotations

import json
import os
import tempfile

import numpy as np


def write_bytes_atomic(path, data: bytes) -> None:
    """Write bytes via a temp file + rename so rerun stages never leave partial files."""
    path = os.fspath(path)
    d = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_text_atomic(path, text: str) -> None:
    write_bytes_atomic(path, text.encode("utf-8"))


def jsonable(obj):
    """Recursively convert numpy scalars/arrays so json.dumps accepts them."""
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dump_json(doc) -> str:
    """Canonical JSON used for artifacts: sorted keys, stable float repr."""
    return json.dumps(jsonable(doc), sort_keys=True, indent=2) + "\n"


def write_json_atomic(path, doc) -> None:
    write_text_atomic(path, dump_json(doc))
