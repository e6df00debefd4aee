"""The shipped dataset: presentations, restriction maps, relation lists."""
from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .chowfile import Document, parse_document
from .errors import UnknownEntry

DATA_FILE = "m3bar.chow"


@lru_cache(maxsize=1)
def document() -> Document:
    text = resources.files("stratachow").joinpath("data", DATA_FILE).read_text(encoding="utf-8")
    return parse_document(text, source=DATA_FILE)


def load(name: str):
    """Return the parsed entry; homogeneity and checksums were audited at parse time."""
    try:
        return document().get(name)
    except UnknownEntry:
        raise UnknownEntry(f"no catalog entry named {name!r}") from None


def labels(ideal_name: str) -> list:
    doc = document()
    if ideal_name not in doc.labels:
        raise UnknownEntry(f"no catalog ideal named {ideal_name!r}")
    return list(doc.labels[ideal_name])


def labelled(ideal_name: str) -> list:
    """[(label, polynomial)] for a catalog ideal."""
    return list(zip(labels(ideal_name), load(ideal_name).generators))


def entries() -> list:
    """(kind, name) for every catalog entry, sorted."""
    return sorted(document().names(), key=lambda kv: (kv[0], kv[1]))


def faber_maps():
    """(forward, backward) change of variables between the two generator sets."""
    return load("faber.forward"), load("faber.backward")
