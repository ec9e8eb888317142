# pytest tests/test_text_formats.py
import json

import pytest

from app.services.dot_export import node_label, render_hasse, write_hasse
from app.services.pairs_lattice import build_lattice
from app.services.text_formats import (
    element_table,
    format_partition,
    format_sub,
    format_trace,
    load_semigroup,
    parse_pair,
    parse_partition,
    parse_spec,
    parse_sub,
    parse_trace,
)
from app.shared.errors import InputError
from tests.conftest import I2_ALPHA, I2_BETA, I2_E1, I2_E2, I2_ID, I2_ZERO


def test_load_spec_file(tmp_path):
    path = tmp_path / "i2.json"
    path.write_text(json.dumps({"degree": 2, "generators": [{"1": 2, "2": 1}, {"1": 2}], "name": "file-i2"}))
    S = load_semigroup(str(path))
    assert S.size == 7
    assert S.name == "file-i2"


def test_missing_file_and_bad_spec(tmp_path):
    with pytest.raises(InputError):
        load_semigroup(str(tmp_path / "absent.json"))
    with pytest.raises(InputError):
        parse_spec('{"degree": 0, "generators": []}')


def test_element_table(i2):
    table = element_table(i2)
    assert table[I2_BETA].label == "[2,-]"
    assert table[I2_ALPHA].label == "[2,1]"
    assert [row.idempotent for row in table] == [True, False, False, True, True, False, True]


def test_partition_round_trip():
    rho = parse_partition("4,2|0,1", 5)
    assert format_partition(rho) == "0,1|2,4|3"
    assert parse_partition("", 3).is_identity()


def test_trace_uses_element_indices(i2):
    tau = parse_trace(i2, f"{I2_ID},{I2_E2}|{I2_E1},{I2_ZERO}")
    assert tau.blocks == ((0, 1), (2, 3))
    assert format_trace(i2, tau) == "0,3|4,6"
    with pytest.raises(InputError):
        parse_trace(i2, f"{I2_ID},{I2_BETA}")


def test_sub_adds_idempotents(i2):
    assert format_sub(parse_sub(i2, "E")) == "0,3,4,6"
    assert format_sub(parse_sub(i2, "2,5")) == "0,2,3,4,5,6"
    with pytest.raises(InputError):
        parse_sub(i2, "5")
    with pytest.raises(InputError):
        parse_sub(i2, "x")


def test_pair_needs_separator(i2):
    with pytest.raises(InputError):
        parse_pair(i2, "0,3")
    pair = parse_pair(i2, "/2,5")
    assert pair.tau.is_identity()


def test_dot_rendering(i2, tmp_path):
    lattice = build_lattice(i2)
    text = render_hasse(lattice, name="I2")
    assert text.startswith('digraph "I2" {')
    assert text.count("style = bold") == 2
    assert text.count("->") == len(lattice.hasse)
    assert node_label(i2, lattice.nodes[lattice.minimum].pair).startswith("τ:0|3|4|6")
    path = write_hasse(lattice, tmp_path / "i2.gv")
    assert path.read_text(encoding="utf-8") == render_hasse(lattice)
