"""
Output serialization

JSON documents are written with every float at 17 significant digits so that reruns
are bytewise identical and values round-trip exactly. CSV export flattens the same
documents to (field, row, col, value) rows.
"""

import csv
import io
import json
import logging
import math
import os
from typing import Any, Iterable, List, Sequence

import numpy as np
from pydantic import BaseModel

logger = logging.getLogger(__name__)

CSV_HEADER = ["field", "row", "col", "value"]


def _format_float(value: float) -> str:
    if not math.isfinite(value):
        logger.warning(f"Non-finite value {value} serialized as null")
        return "null"
    text = format(value, ".17g")
    if "." not in text and "e" not in text and "n" not in text:
        text += ".0"
    return text


def _to_plain(obj: Any) -> Any:
    """Convert pydantic models and numpy containers to plain Python values."""
    if isinstance(obj, BaseModel):
        return _to_plain(obj.model_dump(mode="python"))
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, dict):
        return {str(k): _to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_plain(v) for v in obj]
    return obj


def _encode(obj: Any, indent: int, level: int, out: List[str]):
    pad = " " * (indent * (level + 1))
    end_pad = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(_format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (key, value) in enumerate(obj.items()):
            out.append(pad + json.dumps(key, ensure_ascii=False) + ": ")
            _encode(value, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "}")
    elif isinstance(obj, list):
        if not obj:
            out.append("[]")
            return
        # rows of numbers stay on one line
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            parts: List[str] = []
            for v in obj:
                _encode(v, indent, level + 1, parts)
                parts.append(", ")
            out.append("[" + "".join(parts[:-1]) + "]")
            return
        out.append("[\n")
        for i, value in enumerate(obj):
            out.append(pad)
            _encode(value, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end_pad + "]")
    else:
        raise TypeError(f"Cannot serialize object of type {type(obj).__name__}")


def dumps_json(document: Any, indent: int = 2) -> str:
    """
    Serialize a document to JSON text.

    Args:
        document: Dict, list, pydantic model or numpy array
        indent: Spaces per nesting level

    Returns:
        JSON text terminated by a newline
    """
    out: List[str] = []
    _encode(_to_plain(document), indent, 0, out)
    out.append("\n")
    return "".join(out)


def _is_matrix(value: Any) -> bool:
    return (
        isinstance(value, list)
        and len(value) > 0
        and all(isinstance(row, list) for row in value)
        and all(
            isinstance(v, (int, float)) and not isinstance(v, bool)
            for row in value
            for v in row
        )
    )


def _is_vector(value: Any) -> bool:
    return (
        isinstance(value, list)
        and len(value) > 0
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    )


def matrix_rows(document: Any, prefix: str = "") -> Iterable[Sequence[Any]]:
    """
    Flatten a document into CSV rows.

    Matrices become (field, row, col, value) triples, vectors use the row column only,
    scalars leave both index columns empty. Lists of records are indexed as field[i].
    """
    plain = _to_plain(document)
    if isinstance(plain, dict):
        for key, value in plain.items():
            name = f"{prefix}.{key}" if prefix else key
            yield from matrix_rows(value, name)
    elif _is_matrix(plain):
        for i, row in enumerate(plain):
            for j, value in enumerate(row):
                yield (prefix, i, j, _format_cell(value))
    elif _is_vector(plain):
        for i, value in enumerate(plain):
            yield (prefix, i, "", _format_cell(value))
    elif isinstance(plain, list):
        for i, value in enumerate(plain):
            yield from matrix_rows(value, f"{prefix}[{i}]")
    else:
        yield (prefix, "", "", _format_cell(plain))


def _format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return _format_float(value).replace("null", "")
    return str(value)


def write_csv_rows(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]):
    """Write rows to a CSV file with a header line."""
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)


def render_output(document: Any, fmt: str = "json") -> str:
    """Render a document as JSON or flattened CSV text."""
    if fmt == "json":
        return dumps_json(document)
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in matrix_rows(document):
            writer.writerow(row)
        return buffer.getvalue()
    raise ValueError(f"Unsupported output format: {fmt}")


def write_output(document: Any, path: str = "-", fmt: str = "json", stream=None) -> str:
    """
    Write a document to a file, or to a stream when path is "-".

    Args:
        document: Document to write
        path: Output file path, "-" for the stream
        fmt: "json" or "csv"
        stream: Text stream used when path is "-"

    Returns:
        Rendered text
    """
    text = render_output(document, fmt)
    if path == "-" or path is None:
        if stream is not None:
            stream.write(text)
    else:
        directory = os.path.dirname(os.path.abspath(path))
        os.makedirs(directory, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        logger.info(f"Wrote {fmt} output to {path}")
    return text
