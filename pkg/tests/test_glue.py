import pytest

from stratachow import catalog
from stratachow.errors import DegreeMismatch, GluingConditionFailed, RingMismatch
from stratachow.glue import (
    GluingDatum,
    StratumPresentation,
    check_gluing_condition,
    glue,
    gluing_report,
    minimal_presentation,
    reconstruct_class,
    stratum_vanishing,
)
from stratachow.groebner import Ideal, ideal_equal, is_member
from stratachow.poly import GradedRing, RingMap


def test_line_glues_to_diagonal(line_doc):
    strat = line_doc.get("line")
    stages = strat.run()
    assert len(stages) == 1
    _datum, report, presentation = stages[0]
    assert report == {"nonzerodivisor": True, "surjective": True}
    assert ideal_equal(presentation.relations, line_doc.get("line.expected"))


def test_line_labels_cover_three_families(line_doc):
    presentation = line_doc.get("line").glued()
    kinds = {label.split("[")[0] for label in presentation.labels}
    assert "open" in kinds


def test_line_reconstruction(line_doc):
    strat = line_doc.get("line")
    spec = line_doc.reconstructs["point"]
    cls = reconstruct_class(strat, spec["at"])
    assert is_member(cls - spec["expect"], line_doc.get("line.expected")).member_over_Q
    for entry in strat.strata:
        assert entry.restriction(cls) == spec["at"][entry.name]


def test_reconstruction_rejects_mixed_degrees(line_doc):
    strat = line_doc.get("line")
    origin = line_doc.rings["origin"]
    punctured = line_doc.rings["punctured"]
    with pytest.raises(DegreeMismatch):
        reconstruct_class(strat, {"origin": origin.parse("t"), "punctured": punctured.parse("a^2")})


def test_point_on_projective_line_fails_condition():
    # trivial normal bundle: c_top = 0 is a zero divisor
    amb = GradedRing([("z", 1)])
    empty = GradedRing([])
    pt = GradedRing([("u", 1)])
    open_side = StratumPresentation("open", empty, Ideal(empty, []))
    closed = StratumPresentation("pt", pt, Ideal(pt, ["u"]))
    pull = RingMap(amb, pt, {"z": "0"})
    datum = GluingDatum(open_side, closed, "z", pull, pt.zero())
    assert gluing_report(datum)["nonzerodivisor"] is False
    assert not check_gluing_condition(datum)
    with pytest.raises(GluingConditionFailed):
        glue(datum)


def test_datum_checks_class_variable_image():
    amb = GradedRing([("z", 1)])
    empty = GradedRing([])
    pt = GradedRing([("u", 1)])
    open_side = StratumPresentation("open", empty, Ideal(empty, []))
    closed = StratumPresentation("pt", pt, Ideal(pt, []))
    with pytest.raises(DegreeMismatch):
        GluingDatum(open_side, closed, "z", RingMap(amb, pt, {"z": "u"}), pt.parse("2*u"))


def test_presentation_ring_mismatch():
    a = GradedRing([("x", 1)])
    b = GradedRing([("y", 1)])
    with pytest.raises(RingMismatch):
        StratumPresentation("p", a, Ideal(b, ["y"]))


def test_catalog_stratification_glues_to_stated_relations():
    strat = catalog.load("m3tilde")
    stages = strat.run()
    assert all(rep["nonzerodivisor"] and rep["surjective"] for _, rep, _ in stages)
    final = stages[-1][2]
    assert ideal_equal(final.relations, catalog.load("m3tilde.relations"))


def test_stated_relations_vanish_on_every_stratum():
    strat = catalog.load("m3tilde")
    for relation in catalog.load("m3tilde.relations").generators:
        report = stratum_vanishing(relation, strat)
        assert report.passed, [e.stratum for e in report.entries if not e.passed]


def test_vanishing_detects_nonrelation():
    strat = catalog.load("m3tilde")
    ring = strat.ambient
    report = stratum_vanishing(ring.parse("lambda1"), strat)
    assert not report.passed
    failing = [e for e in report.entries if not e.passed]
    assert failing and failing[0].normal_form is not None


def test_minimal_presentation_keeps_ideal():
    presentation = catalog.load("m3tilde").glued()
    small = minimal_presentation(presentation)
    assert len(small.relations) <= len(presentation.relations)
    assert ideal_equal(small.relations, presentation.relations)
