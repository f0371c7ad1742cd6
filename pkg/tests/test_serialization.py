"""
Tests for JSON and CSV output
"""

import io
import json
import logging

import numpy as np
import pytest
from pydantic import BaseModel

from src.storage import dumps_json, matrix_rows, render_output, write_csv_rows, write_output


class Point(BaseModel):
    x: float
    label: str


def test_layout_and_scalars():
    text = dumps_json({"a": 0.1, "b": [1.0, 2], "c": None, "d": True, "e": "q\"t"})
    assert text == (
        '{\n'
        '  "a": 0.10000000000000001,\n'
        '  "b": [1.0, 2],\n'
        '  "c": null,\n'
        '  "d": true,\n'
        '  "e": "q\\"t"\n'
        '}\n'
    )


def test_control_characters_and_unicode_in_strings():
    document = {"noise.table": "runs/a\x01b\x1f.csv", "label": "σ² \u2028 tab\t"}
    text = dumps_json(document)
    assert json.loads(text) == document
    assert "σ²" in text


def test_numpy_matrix():
    assert dumps_json(np.eye(2)) == "[\n  [1.0, 0.0],\n  [0.0, 1.0]\n]\n"


def test_floats_round_trip_exactly():
    values = [np.pi, -1.0 / 3.0, 6.283185962946785, 1e-300, 2.0**-1074]
    parsed = json.loads(dumps_json({"v": values}))
    assert parsed["v"] == values


def test_non_finite_becomes_null(caplog):
    with caplog.at_level(logging.WARNING):
        text = dumps_json([float("nan"), float("inf"), 1.0])
    assert text == "[null, null, 1.0]\n"
    assert "Non-finite" in caplog.text


def test_pydantic_models():
    parsed = json.loads(dumps_json({"p": Point(x=0.5, label="a")}))
    assert parsed == {"p": {"x": 0.5, "label": "a"}}


def test_unsupported_type():
    with pytest.raises(TypeError):
        dumps_json({"x": object()})


def test_matrix_rows():
    document = {"P": [[1.0, 2.0], [3.0, 4.0]], "eigenvalues": [-1.5, -2.5], "passed": True,
                "rows": [{"n": 1}]}
    rows = list(matrix_rows(document))
    assert rows == [
        ("P", 0, 0, "1.0"),
        ("P", 0, 1, "2.0"),
        ("P", 1, 0, "3.0"),
        ("P", 1, 1, "4.0"),
        ("eigenvalues", 0, "", "-1.5"),
        ("eigenvalues", 1, "", "-2.5"),
        ("passed", "", "", "true"),
        ("rows[0].n", "", "", "1"),
    ]


def test_render_csv():
    text = render_output({"x": 0.25}, "csv")
    assert text == "field,row,col,value\nx,,,0.25\n"
    with pytest.raises(ValueError):
        render_output({}, "xml")


def test_write_output_file_and_stream(tmp_path):
    path = tmp_path / "nested" / "out.json"
    text = write_output({"a": 1.5}, str(path))
    assert path.read_text(encoding="utf-8") == text

    stream = io.StringIO()
    write_output({"a": 1.5}, "-", "json", stream=stream)
    assert stream.getvalue() == text


def test_write_csv_rows(tmp_path):
    path = tmp_path / "rows.csv"
    write_csv_rows(str(path), ["i", "v"], [(0, "1.0"), (1, "2.0")])
    assert path.read_text(encoding="utf-8") == "i,v\n0,1.0\n1,2.0\n"
