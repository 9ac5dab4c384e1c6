import json

import pytest

from specseq.invariant import betti_numbers
from specseq.modelfile import (
    ModelFileError,
    dump_model,
    from_module,
    parse_model,
    to_complex,
)
from specseq.presets import PRESETS


def test_roundtrip_presets():
    for name, mf in PRESETS.items():
        assert parse_model(dump_model(mf)) == mf, name


def test_to_complex_hopf():
    c = to_complex(PRESETS["hopf-s3"])
    assert betti_numbers(c) == (1, 0, 0, 1)


def test_parse_minimal():
    text = json.dumps(
        {
            "n": 1,
            "s": 1,
            "lambdas": ["1"],
            "dims": [1, 0, 1],
            "L": [[["1"]], [], []],
        }
    )
    mf = parse_model(text)
    assert mf.n == 1
    assert mf.L[0].entries == ((1,),)


def test_parse_rejects_bad_json():
    with pytest.raises(ModelFileError, match="JSON"):
        parse_model("{not json")


def test_parse_rejects_missing_field():
    with pytest.raises(ModelFileError, match="lambdas"):
        parse_model(json.dumps({"n": 1, "s": 1, "dims": [1, 0, 1], "L": []}))


def test_parse_rejects_bad_rational():
    text = json.dumps(
        {"n": 1, "s": 1, "lambdas": ["1/0"], "dims": [1, 0, 1], "L": [[["1"]], [], []]}
    )
    with pytest.raises(ModelFileError, match="lambdas"):
        parse_model(text)


def test_parse_rejects_float_entries():
    text = json.dumps(
        {"n": 1, "s": 1, "lambdas": [0.5], "dims": [1, 0, 1], "L": [[["1"]], [], []]}
    )
    with pytest.raises(ModelFileError, match="rationals must be strings"):
        parse_model(text)


def test_parse_rejects_wrong_matrix_shape():
    text = json.dumps(
        {"n": 1, "s": 1, "lambdas": ["1"], "dims": [1, 0, 1], "L": [[], [], []]}
    )
    with pytest.raises(ModelFileError, match=r"L\[0\]"):
        parse_model(text)


def test_parse_rejects_wrong_dims_length():
    text = json.dumps(
        {"n": 2, "s": 1, "lambdas": ["1"], "dims": [1, 0, 1], "L": [[], [], []]}
    )
    with pytest.raises(ModelFileError, match="dims"):
        parse_model(text)


def test_from_module_roundtrip(cp1):
    mf = from_module(cp1, 1, (1,), name="x")
    assert parse_model(dump_model(mf)) == mf
    assert mf.s == 1
    assert mf.dims == (1, 0, 1)
