"""Gluing open/closed strata presentations and reconstructing classes stratum by stratum.

Setting: a closed stratum Z of codimension d with complement U.  The Chow ring
of the union is presented on the generators of U plus one class variable
(the fundamental class of Z).  Relations come in three families:

  (1) Z * q_h       for lifts q_h of the relations of Z;
  (2) Z * v_h       for generators v_h of the kernel of the pullback to the free ring of Z;
  (3) p_h + Z * g_h for the relations p_h of U, corrected so that they restrict to 0 on Z.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (
    DegreeMismatch,
    GluingConditionFailed,
    LiftingFailed,
    RingMismatch,
)
from .groebner import (
    Ideal,
    divide_in_quotient,
    graph_ideal,
    is_member,
    is_nonzerodivisor,
    is_surjective,
    kernel_of_map,
    minimal_generators,
)
from .poly import GradedRing, Polynomial, RingMap


@dataclass(frozen=True)
class StratumPresentation:
    name: str
    ring: GradedRing
    relations: Ideal
    labels: tuple = ()

    def __post_init__(self):
        if self.relations.ring != self.ring:
            raise RingMismatch(f"relations of {self.name} live in another ring")


@dataclass
class GluingDatum:
    open_side: StratumPresentation
    closed_side: StratumPresentation
    class_var: str
    pullback: RingMap
    c_top: Polynomial

    def __post_init__(self):
        src = self.pullback.source
        if self.class_var not in src:
            raise RingMismatch(f"pullback source lacks the class variable {self.class_var}")
        expected = [n for n in src.names if n != self.class_var]
        if sorted(expected) != sorted(self.open_side.ring.names):
            raise RingMismatch("pullback source must be the open ring extended by the class variable")
        if self.pullback.target != self.closed_side.ring:
            raise RingMismatch("pullback target must be the closed stratum ring")
        if self.pullback.image_of(self.class_var) != self.c_top:
            raise DegreeMismatch(
                f"pullback sends {self.class_var} to {self.pullback.image_of(self.class_var)}, not c_top = {self.c_top}"
            )

    @property
    def ring(self) -> GradedRing:
        return self.pullback.source

    @property
    def class_degree(self) -> int:
        return self.ring.degree_of(self.class_var)

    def free_pullback(self) -> RingMap:
        return RingMap(self.pullback.source, self.pullback.target, self.pullback.images)

    def pullback_mod(self) -> RingMap:
        return RingMap(
            self.pullback.source,
            self.pullback.target,
            self.pullback.images,
            modulo=self.closed_side.relations.nonzero(),
        )


def gluing_report(d: GluingDatum) -> dict:
    nzd = is_nonzerodivisor(d.c_top, d.closed_side.relations)
    surj = is_surjective(d.pullback_mod())
    return {"nonzerodivisor": nzd, "surjective": surj}


def check_gluing_condition(d: GluingDatum) -> bool:
    """c_top is a non-zero divisor on the closed side and the pullback is surjective."""
    rep = gluing_report(d)
    return rep["nonzerodivisor"] and rep["surjective"]


def glue(d: GluingDatum, name=None, check=True) -> StratumPresentation:
    """Presentation of the union of the two strata (relations in three families)."""
    if check and not check_gluing_condition(d):
        raise GluingConditionFailed(f"gluing condition fails for closed stratum {d.closed_side.name}")
    X = d.ring
    Z = X.var(d.class_var)
    free = d.free_pullback()
    graph = graph_ideal(free)
    closed_rel = d.closed_side.relations
    rels, labels = [], []

    for i, q in enumerate(closed_rel.nonzero()):
        try:
            lifted = graph.lift(q)
        except LiftingFailed:
            raise LiftingFailed(f"closed relation {q} has no preimage") from None
        rels.append(Z * lifted)
        labels.append(f"{d.class_var}*lift(closed[{i}])")

    for i, v in enumerate(kernel_of_map(free).generators):
        rels.append(Z * v)
        labels.append(f"{d.class_var}*kernel[{i}]")

    with_ctop = Ideal(d.closed_side.ring, closed_rel.generators + (d.c_top,))
    for i, p in enumerate(d.open_side.relations.nonzero()):
        p_x = p.in_ring(X)
        image = free(p_x)
        rep = is_member(image, with_ctop, certify=True)
        if not rep.member_over_Q:
            raise LiftingFailed(
                f"open relation {i} does not restrict into <closed relations, c_top>: obstruction {rep.remainder}"
            )
        g_prime = -rep.certificate.cofactors[-1]
        g = graph.lift(g_prime) if not g_prime.is_zero() else X.zero()
        rels.append(p_x + Z * g)
        labels.append(f"open[{i}]+{d.class_var}*g")

    keep = [(r, lab) for r, lab in zip(rels, labels) if not r.is_zero()]
    ideal = Ideal(X, [r for r, _ in keep])
    return StratumPresentation(name or f"{d.open_side.name}+{d.closed_side.name}", X, ideal, tuple(l for _, l in keep))


# ---------------------------------------------------------------------------
# stratifications


@dataclass
class StratumEntry:
    presentation: StratumPresentation
    restriction: RingMap  # ambient -> presentation.ring
    class_var: str | None = None
    c_top: Polynomial | None = None

    @property
    def name(self):
        return self.presentation.name


@dataclass
class Stratification:
    """Open stratum plus closed strata ordered outermost first."""

    ambient: GradedRing
    open: StratumEntry
    closed: list
    name: str = "stratification"
    _stages: list = field(default_factory=list, repr=False)

    def __post_init__(self):
        for e in [self.open] + list(self.closed):
            if e.restriction.source != self.ambient:
                raise RingMismatch(f"restriction to {e.name} does not start at the ambient ring")
        for e in self.closed:
            if e.restriction.image_of(e.class_var) != e.c_top:
                raise DegreeMismatch(f"class variable {e.class_var} must restrict to c_top on {e.name}")

    @property
    def strata(self) -> list:
        return [self.open] + list(self.closed)

    def entry(self, name: str) -> StratumEntry:
        for e in self.strata:
            if e.name == name:
                return e
        raise KeyError(name)

    def stage_ring(self, k: int) -> GradedRing:
        """Ring after gluing closed strata 0..k (k = -1: the open ring)."""
        allowed = set(self.open.presentation.ring.names)
        allowed |= {e.class_var for e in self.closed[: k + 1]}
        return GradedRing([(n, d) for n, d in self.ambient.variables if n in allowed])

    def open_restriction(self) -> RingMap:
        return self.open.restriction.restrict(self.stage_ring(-1))

    def datum(self, k: int, open_side: StratumPresentation) -> GluingDatum:
        e = self.closed[k]
        pull = e.restriction.restrict(self.stage_ring(k))
        pull = RingMap(pull.source, pull.target, pull.images, modulo=e.presentation.relations.nonzero())
        return GluingDatum(open_side, e.presentation, e.class_var, pull, e.c_top)

    def open_presentation(self) -> StratumPresentation:
        """The open stratum, re-expressed on the ambient generator names."""
        base = self.open.presentation
        rmap = self.open_restriction()
        ring = rmap.source
        lifted = [graph_ideal(rmap).lift(r) for r in base.relations.nonzero()]
        return StratumPresentation(base.name, ring, Ideal(ring, lifted))

    def run(self, check=True, progress=None) -> list:
        """Glue all stages; returns [(datum, gluing report, presentation)] for each stage."""
        current = self.open_presentation()
        out = []
        for k, e in enumerate(self.closed):
            d = self.datum(k, current)
            report = gluing_report(d) if check else {}
            if check and not (report["nonzerodivisor"] and report["surjective"]):
                raise GluingConditionFailed(f"stage {k} ({e.name}): {report}")
            current = glue(d, name=f"stage{k + 1}", check=False)
            out.append((d, report, current))
            if progress:
                progress(k, e, current)
        return out

    def glued(self) -> StratumPresentation:
        return self.run()[-1][2]


def reconstruct_class(strat: Stratification, restrictions: dict) -> Polynomial:
    """Ambient polynomial whose restriction to each stratum matches the given data."""
    degs = set()
    for name, p in restrictions.items():
        if not p.is_zero():
            if not p.is_homogeneous():
                raise DegreeMismatch(f"restriction to {name} is not homogeneous")
            degs.add(p.degree())
    if len(degs) > 1:
        raise DegreeMismatch(f"restrictions have different degrees {sorted(degs)}")

    def value(entry):
        p = restrictions.get(entry.name)
        if p is None:
            return entry.presentation.ring.zero()
        if p.ring != entry.presentation.ring:
            raise RingMismatch(f"restriction to {entry.name} lives in {p.ring}")
        return p

    X = graph_ideal(strat.open_restriction()).lift(value(strat.open))
    for k, e in enumerate(strat.closed):
        ring_k = strat.stage_ring(k)
        X = X.in_ring(ring_k)
        pull = e.restriction.restrict(ring_k)
        defect = value(e) - pull(X)
        w = divide_in_quotient(defect, e.c_top, e.presentation.relations)
        if not w.is_zero():
            X = X + ring_k.var(e.class_var) * graph_ideal(pull).lift(w)
    return X.in_ring(strat.ambient)


@dataclass
class VanishingEntry:
    stratum: str
    passed: bool
    normal_form: Polynomial | None
    smooth: bool


@dataclass
class VanishingReport:
    relation: Polynomial
    entries: list

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)


def stratum_vanishing(relation: Polynomial, strat: Stratification, certify=False) -> VanishingReport:
    """Restrict a relation to every stratum and test membership in that stratum's ideal."""
    entries = []
    for e in strat.strata:
        img = e.restriction(relation)
        rep = is_member(img, e.presentation.relations, certify=certify)
        entries.append(
            VanishingEntry(e.name, rep.member_over_Q, None if rep.member_over_Q else rep.remainder, rep.smooth_over_Z16)
        )
    return VanishingReport(relation, entries)


def minimal_presentation(p: StratumPresentation) -> StratumPresentation:
    return StratumPresentation(p.name, p.ring, minimal_generators(p.relations))
