import pytest

from stratachow.chowfile import _checksum, parse_document
from stratachow.errors import HomogeneityViolation, ParseError, UnknownEntry
from stratachow.glue import Stratification, StratumEntry

BASIC = """\
ring r
  var x : 1
  var y : 2

# comment lines are ignored
ideal i in r
  rel first = x^2 - y
  rel x*y
      + x^3
class c in r = x^4 - y^2
map f from r to r
  send x -> x
  send y -> x^2
"""


def test_basic_blocks():
    doc = parse_document(BASIC)
    ring = doc.rings["r"]
    assert ring.names == ["x", "y"] or tuple(ring.names) == ("x", "y")
    ideal = doc.ideals["i"]
    assert ideal.generators[1] == ring.parse("x*y + x^3")
    assert doc.labels["i"] == ["first", "rel2"]
    assert doc.classes["c"] == ring.parse("x^4-y^2")
    assert doc.maps["f"](ring.parse("y")) == ring.parse("x^2")


def test_names_and_get():
    doc = parse_document(BASIC)
    assert ("ideals", "i") in doc.names()
    assert doc.get("c") == doc.classes["c"]
    with pytest.raises(UnknownEntry):
        doc.get("nope")


def test_checksum_accepted_and_rejected():
    doc = parse_document(BASIC)
    digest = _checksum(doc.ideals["i"].generators)
    good = BASIC.replace("      + x^3\n", f"      + x^3\n  checksum {digest}\n")
    parse_document(good)
    bad = BASIC.replace("      + x^3\n", "      + x^3\n  checksum 0000000000000000\n")
    with pytest.raises(ParseError, match="checksum"):
        parse_document(bad)


def test_inhomogeneous_relation_reports_line():
    text = "ring r\n  var x : 1\n  var y : 2\nideal i in r\n  rel x + y\n"
    with pytest.raises(HomogeneityViolation, match="line 5"):
        parse_document(text, source="bad.chow")


def test_inhomogeneous_class():
    with pytest.raises(HomogeneityViolation):
        parse_document("ring r\n  var x : 1\nclass c in r = x + x^2\n")


def test_unknown_variable_is_parse_error_with_line():
    text = "ring r\n  var x : 1\nideal i in r\n  rel x*w\n"
    with pytest.raises(ParseError) as info:
        parse_document(text, source="w.chow")
    assert "w.chow" in str(info.value)
    assert info.value.line == 4


def test_unknown_ring():
    with pytest.raises(ParseError):
        parse_document("ideal i in nowhere\n  rel 0\n")


def test_unknown_declaration():
    with pytest.raises(ParseError):
        parse_document("widget w\n")


def test_tabs_rejected():
    with pytest.raises(ParseError):
        parse_document("ring r\n\tvar x : 1\n")


def test_bad_ring_entry():
    with pytest.raises(ParseError):
        parse_document("ring r\n  variable x\n")


def test_map_with_wrong_variable():
    text = "ring r\n  var x : 1\nmap f from r to r\n  send q -> x\n"
    with pytest.raises(ParseError):
        parse_document(text)


def test_empty_ideal():
    doc = parse_document("ring r\n  var x : 1\nideal i in r\n")
    assert len(doc.ideals["i"]) == 0


def test_line_file_builds_stratification(line_doc):
    strat = line_doc.get("line")
    assert isinstance(strat, Stratification)
    assert [e.name for e in strat.strata] == ["punctured", "origin"]
    entry = line_doc.stratum_entry("origin")
    assert isinstance(entry, StratumEntry)
    assert entry.class_var == "z"
