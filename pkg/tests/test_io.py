import json

import pytest
from hypothesis import given

from loopcosets.catalog import catalog, fano_blocks
from loopcosets.designs import IncidenceStructure
from loopcosets.errors import LatinViolation, ParseError, UnknownName
from loopcosets.io import (
    RunReport,
    dumps_design,
    dumps_loop,
    dumps_rectangle,
    emit_report,
    format_table,
    load_loop,
    loads_design,
    loads_loop,
    loads_rectangle,
    parse_design,
    parse_loop,
    read_report,
    write_loop,
)

from conftest import loops


def test_loop_round_trip():
    q = catalog("chein12")
    text = dumps_loop(q)
    assert loads_loop(text).cayley == q.cayley
    assert dumps_loop(loads_loop(text)) == text


def test_comments_and_blank_lines():
    q = loads_loop("# cyclic\n3\n\n0 1 2\n1 2 0  # row one\n2 0 1\n")
    assert q.cayley == catalog("C3").cayley


def test_repeated_symbol_is_a_latin_violation():
    with pytest.raises(LatinViolation):
        loads_loop("3\n0 1 2\n1 1 0\n2 0 1\n")


@pytest.mark.parametrize(
    "text, line",
    [("", 1), ("3 3\n", 1), ("2\n0 1\n", 2), ("2\n0 1\n1 x\n", 3), ("2\n0 1\n1 0 1\n", 3)],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as e:
        loads_loop(text)
    assert e.value.line == line


def test_files(tmp_path):
    path = tmp_path / "s3.txt"
    write_loop(catalog("S3"), path)
    q = parse_loop(path)
    assert q.cayley == catalog("S3").cayley and q.name == "s3"
    assert load_loop(str(path)).cayley == q.cayley
    assert load_loop("catalog:S3").cayley == q.cayley
    assert load_loop("S3").cayley == q.cayley
    with pytest.raises(UnknownName):
        load_loop(str(tmp_path / "missing.txt"))


def test_fano_design_file(tmp_path):
    path = tmp_path / "fano.txt"
    path.write_text("7 7\n" + "\n".join(" ".join(map(str, sorted(b))) for b in fano_blocks()) + "\n")
    d = parse_design(path)
    assert (d.v, d.b) == (7, 7)
    assert loads_design(dumps_design(d)).blocks == d.blocks


@pytest.mark.parametrize("text", ["", "7\n", "3 1\n0 5\n", "3 1\n0 0\n", "3 2\n0 1\n"])
def test_bad_design_files(text):
    with pytest.raises(ParseError):
        loads_design(text)


def test_rectangles():
    rect = ((0, 1), (1, 2), (2, 0))
    assert loads_rectangle(dumps_rectangle(rect)) == rect
    with pytest.raises(ParseError):
        loads_rectangle("2 2\n0 1\n")


def test_report_is_deterministic(tmp_path):
    rep = RunReport("x", {"loop": "S3"}, {"k": 1}, {"sets": [frozenset({2, 1})]}, timing=1.234)
    assert rep.to_json() == rep.to_json()
    assert "timing" not in rep.to_dict()
    assert rep.to_dict(with_timing=True)["timing"] == 1.234
    emit_report(rep, tmp_path / "r.json")
    data = read_report(tmp_path / "r.json")
    assert data["results"]["sets"] == [[1, 2]]
    assert json.loads(rep.to_json()) == data


def test_format_table():
    text = format_table([(1, "ab"), (22, "c")], ("n", "s"))
    assert text.splitlines() == ["n   s", "--  --", "1   ab", "22  c"]
    assert format_table([]) == ""


@given(loops(max_order=10))
def test_any_loop_round_trips(q):
    assert loads_loop(dumps_loop(q)).cayley == q.cayley


def test_design_round_trip_relabels_points():
    d = IncidenceStructure.from_blocks([["a", "b"], ["b", "c"], ["c", "a"]])
    assert loads_design(dumps_design(d)).blocks == (frozenset({0, 1}), frozenset({1, 2}), frozenset({0, 2}))
