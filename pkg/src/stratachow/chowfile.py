"""Line-oriented declaration files (rings, ideals, classes, maps, strata, gluings).

Layout rules:
  * a header starts in column 0 (``ring NAME``, ``ideal NAME in RING`` ...);
  * entries of a block are indented by 1-3 spaces;
  * a line indented by 4 or more spaces continues the previous entry;
  * ``#`` starts a comment.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field

from .errors import DegreeMismatch, HomogeneityViolation, InputError, ParseError, UnknownEntry
from .groebner import Ideal
from .poly import GradedRing, Polynomial, RingMap, print_canonical


@dataclass
class Block:
    kind: str
    words: list
    line: int
    entries: list = field(default_factory=list)  # (text, line)
    inline: str | None = None


_NAME = r"[A-Za-z_][A-Za-z0-9_.]*"


def _split_blocks(text: str, source: str) -> list:
    blocks: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip(" "))
        if "\t" in raw[:indent + 1]:
            raise ParseError("tabs are not allowed for indentation", line=lineno, source=source)
        body = line.strip()
        if indent == 0:
            head, _, inline = body.partition("=")
            words = head.split()
            blocks.append(Block(words[0], words[1:], lineno, [], inline.strip() if _ else None))
            if not _:
                blocks[-1].inline = None
            continue
        if not blocks:
            raise ParseError("indented line outside any block", line=lineno, source=source)
        blk = blocks[-1]
        if indent >= 4:
            if blk.entries:
                text_, ln = blk.entries[-1]
                blk.entries[-1] = (text_ + " " + body, ln)
            elif blk.inline is not None:
                blk.inline = blk.inline + " " + body
            else:
                raise ParseError("continuation line without an entry", line=lineno, source=source)
        else:
            blk.entries.append((body, lineno))
    return blocks


def _checksum(polys) -> str:
    h = hashlib.sha256()
    for p in polys:
        h.update(print_canonical(p).encode())
        h.update(b"\n")
    return h.hexdigest()[:16]


@dataclass
class Document:
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    labels: dict = field(default_factory=dict)  # ideal name -> relation labels
    classes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    strata: dict = field(default_factory=dict)  # name -> dict of fields
    glues: dict = field(default_factory=dict)  # name -> dict(ambient, open, stages)
    reconstructs: dict = field(default_factory=dict)
    scenarios: dict = field(default_factory=dict)
    source: str = "<string>"

    def names(self) -> list:
        out = []
        for kind in ("rings", "ideals", "classes", "maps", "strata", "glues", "reconstructs", "scenarios"):
            out += [(kind, n) for n in getattr(self, kind)]
        return out

    def get(self, name: str):
        for kind in ("ideals", "classes", "maps", "rings", "strata", "glues", "reconstructs", "scenarios"):
            table = getattr(self, kind)
            if name in table:
                if kind == "strata":
                    return self.stratum_entry(name)
                if kind == "glues":
                    return self.stratification(name)
                return table[name]
        raise UnknownEntry(f"no entry named {name!r} in {self.source}")

    def merge(self, other: "Document") -> "Document":
        for kind in ("rings", "ideals", "labels", "classes", "maps", "strata", "glues", "reconstructs", "scenarios"):
            getattr(self, kind).update(getattr(other, kind))
        return self

    # -- composite objects -------------------------------------------------
    def stratum_entry(self, name: str):
        from .glue import StratumEntry, StratumPresentation

        spec = self.strata[name]
        ring = self.rings[spec["ring"]]
        rel = self.ideals[spec["relations"]] if "relations" in spec else Ideal(ring, [])
        pres = StratumPresentation(name, ring, rel)
        restriction = self.maps[spec["restriction"]]
        c_top = ring.parse(spec["c_top"]) if "c_top" in spec else None
        return StratumEntry(pres, restriction, spec.get("class_var"), c_top)

    def stratification(self, name: str):
        from .glue import Stratification

        spec = self.glues[name]
        ambient = self.rings[spec["ambient"]]
        open_entry = self.stratum_entry(spec["open"])
        closed = [self.stratum_entry(s) for s in spec["stages"]]
        return Stratification(ambient, open_entry, closed, name=name)


def _require(cond, msg, line, source):
    if not cond:
        raise ParseError(msg, line=line, source=source)


def parse_document(text: str, source: str = "<string>") -> Document:
    doc = Document(source=source)
    for blk in _split_blocks(text, source):
        try:
            _parse_block(doc, blk, source)
        except (ParseError, HomogeneityViolation):
            raise
        except (InputError, DegreeMismatch, ValueError) as exc:
            raise ParseError(f"{blk.kind} block: {exc}", line=blk.line, source=source) from exc
    return doc


def _check_sum(blk, polys, entries, source):
    for text, ln in entries:
        if text.startswith("checksum "):
            want = text.split()[1]
            got = _checksum(polys)
            if want != got:
                raise ParseError(f"transcription checksum mismatch (file {want}, computed {got})", line=ln, source=source)


def _parse_block(doc: Document, blk: Block, source: str):
    kind, words = blk.kind, blk.words
    if kind == "ring":
        _require(len(words) == 1, "usage: ring NAME", blk.line, source)
        pairs = []
        for text, ln in blk.entries:
            m = re.fullmatch(r"var\s+([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(\d+)", text)
            _require(m is not None, f"expected 'var IDENT : DEGREE', got {text!r}", ln, source)
            pairs.append((m.group(1), int(m.group(2))))
        doc.rings[words[0]] = GradedRing(pairs)
    elif kind == "ideal":
        _require(len(words) == 3 and words[1] == "in", "usage: ideal NAME in RING", blk.line, source)
        ring = _ring(doc, words[2], blk.line, source)
        gens, labels = [], []
        for text, ln in blk.entries:
            if text.startswith("checksum "):
                continue
            m = re.fullmatch(r"rel\s+(?:([A-Za-z_][A-Za-z0-9_.]*)\s*=\s*)?(.+)", text)
            _require(m is not None, f"expected 'rel [LABEL =] EXPR', got {text[:40]!r}", ln, source)
            p = _expr(ring, m.group(2), ln, source)
            if not p.is_homogeneous():
                raise HomogeneityViolation(f"{source}:line {ln}: relation {m.group(1) or len(gens)} is not homogeneous (degrees {sorted(p.degrees())})")
            gens.append(p)
            labels.append(m.group(1) or f"rel{len(gens)}")
        _check_sum(blk, gens, blk.entries, source)
        doc.ideals[words[0]] = Ideal(ring, gens, name=words[0])
        doc.labels[words[0]] = labels
    elif kind == "class":
        _require(len(words) == 3 and words[1] == "in" and blk.inline, "usage: class NAME in RING = EXPR", blk.line, source)
        ring = _ring(doc, words[2], blk.line, source)
        p = _expr(ring, blk.inline, blk.line, source)
        if not p.is_homogeneous():
            raise HomogeneityViolation(f"{source}:line {blk.line}: class {words[0]} is not homogeneous")
        _check_sum(blk, [p], blk.entries, source)
        doc.classes[words[0]] = p
    elif kind == "map":
        m = re.fullmatch(rf"({_NAME}) from ({_NAME}) to ({_NAME})(?: mod ({_NAME}))?", " ".join(words))
        _require(m is not None, "usage: map NAME from RING to RING [mod IDEAL]", blk.line, source)
        src = _ring(doc, m.group(2), blk.line, source)
        tgt = _ring(doc, m.group(3), blk.line, source)
        modulo = ()
        if m.group(4):
            _require(m.group(4) in doc.ideals, f"unknown ideal {m.group(4)}", blk.line, source)
            modulo = doc.ideals[m.group(4)].nonzero()
        images = {}
        for text, ln in blk.entries:
            mm = re.fullmatch(r"send\s+([A-Za-z_][A-Za-z0-9_]*)\s*->\s*(.+)", text)
            _require(mm is not None, f"expected 'send IDENT -> EXPR', got {text!r}", ln, source)
            _require(mm.group(1) in src, f"{mm.group(1)} is not a variable of {m.group(2)}", ln, source)
            images[mm.group(1)] = _expr(tgt, mm.group(2), ln, source)
        doc.maps[m.group(1)] = RingMap(src, tgt, images, modulo=modulo, name=m.group(1))
    elif kind == "stratum":
        _require(len(words) == 1, "usage: stratum NAME", blk.line, source)
        spec = {}
        for text, ln in blk.entries:
            key, _, val = text.partition(" ")
            _require(key in ("ring", "relations", "restriction", "class_var", "c_top"), f"unknown stratum field {key!r}", ln, source)
            spec[key] = val.strip()
        for ref, table in (("ring", doc.rings), ("relations", doc.ideals), ("restriction", doc.maps)):
            if ref in spec:
                _require(spec[ref] in table, f"unknown {ref} {spec[ref]!r}", blk.line, source)
        _require("ring" in spec and "restriction" in spec, "stratum needs ring and restriction", blk.line, source)
        if "c_top" in spec:
            _expr(doc.rings[spec["ring"]], spec["c_top"], blk.line, source)
        doc.strata[words[0]] = spec
    elif kind == "glue":
        _require(len(words) == 1, "usage: glue NAME", blk.line, source)
        spec = {"stages": []}
        for text, ln in blk.entries:
            key, _, val = text.partition(" ")
            val = val.strip()
            if key == "stage":
                _require(val in doc.strata, f"unknown stratum {val!r}", ln, source)
                spec["stages"].append(val)
            elif key in ("ambient", "open"):
                table = doc.rings if key == "ambient" else doc.strata
                _require(val in table, f"unknown {key} {val!r}", ln, source)
                spec[key] = val
            else:
                raise ParseError(f"unknown glue field {key!r}", line=ln, source=source)
        doc.glues[words[0]] = spec
    elif kind == "reconstruct":
        _require(len(words) == 3 and words[1] == "in", "usage: reconstruct NAME in GLUE", blk.line, source)
        _require(words[2] in doc.glues, f"unknown glue {words[2]!r}", blk.line, source)
        spec = {"glue": words[2], "at": {}}
        for text, ln in blk.entries:
            key, _, val = text.partition(" ")
            if key == "at":
                mm = re.fullmatch(rf"({_NAME})\s*->\s*(.+)", val.strip())
                _require(mm is not None, "usage: at STRATUM -> EXPR", ln, source)
                st = doc.strata.get(mm.group(1))
                _require(st is not None, f"unknown stratum {mm.group(1)!r}", ln, source)
                spec["at"][mm.group(1)] = _expr(doc.rings[st["ring"]], mm.group(2), ln, source)
            elif key == "expect":
                amb = doc.rings[doc.glues[words[2]]["ambient"]]
                spec["expect"] = _expr(amb, val, ln, source)
            elif key == "modulo":
                _require(val.strip() in doc.ideals, f"unknown ideal {val!r}", ln, source)
                spec["modulo"] = val.strip()
            else:
                raise ParseError(f"unknown reconstruct field {key!r}", line=ln, source=source)
        doc.reconstructs[words[0]] = spec
    elif kind == "scenario":
        _require(len(words) == 1, "usage: scenario NAME", blk.line, source)
        spec = {}
        for text, ln in blk.entries:
            key, _, val = text.partition(" ")
            spec[key] = val.strip()
        doc.scenarios[words[0]] = spec
    else:
        raise ParseError(f"unknown declaration {kind!r}", line=blk.line, source=source)


def _ring(doc, name, line, source):
    if name not in doc.rings:
        raise ParseError(f"unknown ring {name!r}", line=line, source=source)
    return doc.rings[name]


def _expr(ring: GradedRing, text: str, line: int, source: str) -> Polynomial:
    try:
        return ring.parse(text)
    except ParseError as exc:
        raise ParseError(f"{exc}", line=line, source=source) from exc
    except InputError as exc:
        raise ParseError(str(exc), line=line, source=source) from exc


def load_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read(), source=str(path))
