import pytest

from stratachow import catalog
from stratachow.errors import UnknownEntry
from stratachow.groebner import Ideal, is_member
from stratachow.poly import homogeneous_components


def test_every_entry_loads():
    entries = catalog.entries()
    assert len(entries) == 58
    for _kind, name in entries:
        catalog.load(name)


def test_unknown_entry():
    with pytest.raises(UnknownEntry):
        catalog.load("no.such.thing")
    with pytest.raises(UnknownEntry):
        catalog.labels("no.such.ideal")


def test_relation_counts():
    assert len(catalog.load("m3tilde.relations")) == 15
    assert len(catalog.load("m3bar.relations")) == 15
    assert len(catalog.load("open.relations")) == 4


def test_all_relations_homogeneous():
    for kind, name in catalog.entries():
        if kind == "ideals":
            for g in catalog.load(name).generators:
                assert len(homogeneous_components(g)) <= 1


def test_labels_align_with_generators():
    pairs = catalog.labelled("open.relations")
    assert [label for label, _ in pairs] == ["z2", "p0", "p1", "p2"]


def test_faber_maps_are_inverse():
    forward, backward = catalog.faber_maps()
    for name in forward.source.names:
        v = forward.source.var(name)
        assert backward(forward(v)) == v
    for name in backward.source.names:
        v = backward.source.var(name)
        assert forward(backward(v)) == v


def test_delta11c_as_printed_is_not_a_relation():
    ideal = catalog.load("m3bar.relations")
    printed = catalog.load("m3bar.delta11c_as_printed")
    if printed.ring != ideal.ring:
        printed = printed.in_ring(ideal.ring)
    assert not is_member(printed, ideal).member_over_Q


def test_factored_class_is_listed_relation():
    factored = catalog.load("m3bar.A3_1_factored")
    listed = dict(catalog.labelled("m3bar.relations"))["A3_1"]
    assert factored.in_ring(listed.ring) == listed
