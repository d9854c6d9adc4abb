from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

import simpdepth as sd
from simpdepth.io import configuration_hash, rational_json


def test_text_round_trip_bit_exact():
    rng = np.random.default_rng(17)
    cfg = sd.ColoredConfiguration([rng.standard_normal((4, 3)) * 1e3 for _ in range(4)])
    text = sd.configuration_text(cfg)
    back = sd.parse_configuration(text)
    assert back.dim == cfg.dim
    for a, b in zip(cfg.classes, back.classes):
        assert (a == b).all()  # repr round-trip is exact for doubles
    assert sd.configuration_text(back) == text


def test_file_round_trip(tmp_path):
    cfg = sd.generate({"dim": 2, "sizes": [5]}, seed=3)
    p = tmp_path / "conf.txt"
    sd.write_configuration(cfg, p)
    back = sd.read_configuration(p)
    for a, b in zip(cfg.classes, back.classes):
        assert (a == b).all()
    assert configuration_hash(back) == configuration_hash(cfg)


def test_parse_accepts_blank_lines_and_exponents():
    text = (
        "dim 2 classes 3\n\n"
        "class 0 size 1\n  1e-3 -2.5E+1 \n"
        "class 1 size 1\n.5 0.\n\n"
        "class 2 size 1\n+1 -0\n"
    )
    cfg = sd.parse_configuration(text)
    assert cfg.classes[0][0].tolist() == [0.001, -25.0]
    assert cfg.classes[1][0].tolist() == [0.5, 0.0]


@pytest.mark.parametrize(
    "text, line, needle",
    [
        ("dim 2 classez 3\nclass 0 size 1\n0 0\n", 1, "header"),
        ("dim x classes 3\n", 1, "dimension"),
        ("dim 0 classes 3\n", 1, ">= 1"),
        ("dim 2 classes 1\nclass 1 size 1\n0 0\n", 2, "class index"),
        ("dim 2 classes 1\nclass 0 size 0\n", 2, "class size"),
        ("dim 2 classes 1\nclass 0 size 1\n0\n", 3, "expected 2"),
        ("dim 2 classes 1\nclass 0 size 1\n0 nan\n", 3, "decimal"),
        ("dim 2 classes 1\nclass 0 size 1\n0 inf\n", 3, "decimal"),
        ("dim 2 classes 1\nclass 0 size 2\n0 0\n", 5, "end of file"),
        ("dim 2 classes 1\nclass 0 size 1\n0 0\n1 1\n", 4, "trailing"),
    ],
)
def test_parse_errors_carry_position(text, line, needle):
    with pytest.raises(sd.ParseError) as exc_info:
        sd.parse_configuration(text)
    err = exc_info.value
    assert err.line == line
    assert needle in str(err)


def test_parse_error_column():
    with pytest.raises(sd.ParseError) as exc_info:
        sd.parse_configuration("dim 2 classes 1\nclass 0 size 1\n0.5 oops\n")
    assert exc_info.value.line == 3
    assert exc_info.value.column == 5


def test_class_count_must_match_dimension():
    # colorful configurations pair one class per simplex vertex: exactly d+1
    good = "dim 1 classes 2\nclass 0 size 1\n0.0\nclass 1 size 1\n1.0\n"
    cfg = sd.parse_configuration(good)
    assert len(cfg.classes) == 2 and cfg.dim == 1
    bad = "dim 1 classes 4\n" + "".join(
        f"class {i} size 1\n{i}.0\n" for i in range(4)
    )
    with pytest.raises(sd.ParseError):
        sd.parse_configuration(bad)


def test_report_json_deterministic():
    rep = {"b": 1, "a": {"z": [1, 2], "y": "s"}}
    out = sd.report_json(rep)
    assert out == sd.report_json(json.loads(out))
    assert out.index('"a"') < out.index('"b"')
    assert json.loads(out) == rep
    assert out.endswith("\n")


def test_rational_json():
    assert rational_json(Fraction(3, 12)) == {"num": 1, "den": 4}


def test_write_report(tmp_path):
    p = tmp_path / "r.json"
    sd.write_report({"passed": True}, p)
    assert json.loads(p.read_text()) == {"passed": True}
