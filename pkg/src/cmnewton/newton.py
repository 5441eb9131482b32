"""Newton polygons of CM reductions from decomposition group data.

For a decomposition group ``D`` of a prime of the Galois closure above ``p``,
primes ``w`` of ``F`` over ``p`` correspond to double cosets ``D g H``.  Each
contributes the slope ``|DgH & Phi| / |DgH|`` with multiplicity ``|DgH|/|H|``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .cm import CMFieldData, CMTypeLift
from .errors import FieldMismatch, InvalidPrimeContext, InvariantViolation
from .groups import (
    DoubleCoset,
    Subgroup,
    conjugate,
    double_cosets,
    intersection,
    is_normal,
    join,
    trivial_subgroup,
)

ORDINARY = "ordinary"
SUPERSINGULAR = "supersingular"
MIXED = "mixed"

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"

HALF = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class PrimeContext:
    field: CMFieldData
    D: Subgroup
    I: Subgroup

    @property
    def is_ramified(self) -> bool:
        return self.I.order > 1


def prime_context(field: CMFieldData, D: Subgroup, I: Optional[Subgroup] = None) -> PrimeContext:
    """Validate ``I <| D`` with ``D/I`` cyclic; ``I`` defaults to the trivial group."""
    G = field.G
    if D.parent is not G or (I is not None and I.parent is not G):
        raise FieldMismatch("D and I must be subgroups of the field's Galois group")
    if I is None:
        I = trivial_subgroup(G)
    if not I.issubset(D):
        raise InvalidPrimeContext("inertia group is not contained in D")
    if not is_normal(I, D):
        raise InvalidPrimeContext("inertia group is not normal in D")
    if not any(join(I, _cyclic(G, d)) == D for d in D.members):
        raise InvalidPrimeContext("D/I is not cyclic")
    return PrimeContext(field, D, I)


def _cyclic(G, d) -> Subgroup:
    members = [0]
    x = d
    while x != 0:
        members.append(x)
        x = G.mul(x, d)
    return Subgroup(G, tuple(sorted(members)))


@dataclass(frozen=True)
class SlopeBlock:
    slope: Fraction
    multiplicity: int
    coset: Optional[DoubleCoset] = field(default=None, compare=False)


@dataclass(frozen=True)
class NewtonPolygon:
    blocks: tuple[SlopeBlock, ...]

    @property
    def height(self) -> int:
        """Total multiplicity, ``2g``."""
        return sum(b.multiplicity for b in self.blocks)

    @property
    def dimension(self) -> Fraction:
        return sum((b.slope * b.multiplicity for b in self.blocks), Fraction(0))

    def slope_multiset(self) -> list[tuple[Fraction, int]]:
        """Distinct slopes ascending, with total multiplicity."""
        counts: Counter = Counter()
        for b in self.blocks:
            counts[b.slope] += b.multiplicity
        return sorted(counts.items())

    def slopes(self) -> list[Fraction]:
        """Every slope repeated by multiplicity, ascending."""
        return [s for s, m in self.slope_multiset() for _ in range(m)]

    def vertices(self) -> list[tuple[int, Fraction]]:
        """Break points of the lower convex path from ``(0, 0)``."""
        x, y = 0, Fraction(0)
        pts = [(x, y)]
        for s, m in self.slope_multiset():
            x, y = x + m, y + s * m
            pts.append((x, y))
        return pts

    def check(self) -> None:
        """Raise :class:`InvariantViolation` unless mass and symmetry hold."""
        h = self.height
        if h % 2 or 2 * self.dimension != h:
            raise InvariantViolation(f"mass: height {h}, dimension {self.dimension}")
        ms = dict(self.slope_multiset())
        for s, m in ms.items():
            if not 0 <= s <= 1:
                raise InvariantViolation(f"slope {s} outside [0, 1]")
            if ms.get(1 - s) != m:
                raise InvariantViolation(f"slope {s} x{m} has no symmetric partner")
        for b in self.blocks:
            if b.multiplicity % b.slope.denominator:
                raise InvariantViolation(f"slope {b.slope} incompatible with multiplicity {b.multiplicity}")


def _same_field(*items):
    fields = {id(x.field) for x in items if x is not None}
    if len(fields) > 1:
        raise FieldMismatch("CM type and prime context come from different CM fields")


def newton_polygon(t: CMTypeLift, pc: PrimeContext) -> NewtonPolygon:
    _same_field(t, pc)
    H = pc.field.H
    blocks = []
    for dc in double_cosets(pc.field.G, pc.D, H):
        inside = sum(1 for a in dc.members if a in t.member_set)
        blocks.append(SlopeBlock(Fraction(inside, dc.size), dc.size // H.order, dc))
    return NewtonPolygon(tuple(blocks))


def classify(np_: NewtonPolygon) -> str:
    slopes = {b.slope for b in np_.blocks}
    if slopes <= {HALF}:
        return SUPERSINGULAR
    if slopes <= {Fraction(0), Fraction(1)}:
        return ORDINARY
    return MIXED


# -- splitting in F / F+ ---------------------------------------------------

@dataclass(frozen=True)
class PrimeOfF:
    """A prime ``w`` of ``F`` over ``p``."""
    coset: DoubleCoset
    e: int
    f: int
    slope: Optional[Fraction] = None

    @property
    def local_degree(self) -> int:
        return self.e * self.f


@dataclass(frozen=True)
class PrimeOfFPlus:
    """A prime ``v`` of ``F+`` over ``p`` and the primes of ``F`` above it."""
    coset: DoubleCoset
    e: int
    f: int
    behavior: str
    above: tuple[PrimeOfF, ...]

    @property
    def local_degree(self) -> int:
        return self.e * self.f


@dataclass(frozen=True)
class SplittingReport:
    g: int
    places: tuple[PrimeOfFPlus, ...]

    @property
    def all_split(self) -> bool:
        return all(v.behavior == SPLIT for v in self.places)

    @property
    def none_split(self) -> bool:
        return all(v.behavior != SPLIT for v in self.places)


def _local_data(pc: PrimeContext, g: int, K: Subgroup, size: int) -> tuple[int, int]:
    """``(e, f)`` for the prime of the fixed field of ``K`` given by ``D g K``."""
    K_g = conjugate(K, g)
    e = pc.I.order // intersection(pc.I, K_g).order
    ef = size // K.order
    if ef % e:
        raise InvariantViolation(f"e = {e} does not divide local degree {ef}")
    return e, ef // e


def splitting_report(pc: PrimeContext, t: Optional[CMTypeLift] = None) -> SplittingReport:
    _same_field(t, pc)
    fld = pc.field
    G = fld.G
    slopes = {}
    if t is not None:
        slopes = {b.coset.representative: b.slope for b in newton_polygon(t, pc).blocks}
    ws = double_cosets(G, pc.D, fld.H)
    places = []
    for vc in double_cosets(G, pc.D, fld.H_plus):
        e_v, f_v = _local_data(pc, vc.representative, fld.H_plus, vc.size)
        vset = set(vc.members)
        above = []
        for wc in ws:
            if wc.representative in vset:
                e_w, f_w = _local_data(pc, wc.representative, fld.H, wc.size)
                above.append(PrimeOfF(wc, e_w, f_w, slopes.get(wc.representative)))
        if len(above) == 2:
            behavior = SPLIT
        elif len(above) == 1 and above[0].e == 2 * e_v:
            behavior = RAMIFIED
        elif len(above) == 1 and above[0].f == 2 * f_v:
            behavior = INERT
        else:
            raise InvariantViolation(f"inconsistent splitting above {G.label(vc.representative)}")
        places.append(PrimeOfFPlus(vc, e_v, f_v, behavior, tuple(above)))
    report = SplittingReport(fld.g, tuple(places))
    if sum(v.local_degree for v in places) != fld.g:
        raise InvariantViolation("local degrees of F+ do not sum to g")
    return report


# -- type-independent criteria ------------------------------------------------

@dataclass(frozen=True)
class CriterionResult:
    hypothesis: bool
    conclusion: bool

    @property
    def satisfied(self) -> bool:
        return (not self.hypothesis) or self.conclusion


@dataclass(frozen=True)
class CriteriaReport:
    classification: str
    results: tuple[tuple[str, CriterionResult], ...]

    def __getitem__(self, name: str) -> CriterionResult:
        return dict(self.results)[name]

    @property
    def all_satisfied(self) -> bool:
        return all(r.satisfied for _, r in self.results)


CRITERIA = (
    "nonsplit_implies_supersingular",
    "supersingular_odd_degree_nonsplit",
    "odd_g_supersingular_has_nonsplit",
    "galois_real_field_odd_g_iff",
    "ordinary_implies_all_split",
)


def check_criteria(report: SplittingReport, np_: NewtonPolygon, real_field_galois: bool = False) -> CriteriaReport:
    """Evaluate each decomposition/reduction implication on one instance.

    ``real_field_galois`` should be true when ``F+`` is Galois over Q,
    i.e. ``H+`` is normal in ``G``; :func:`evaluate` fills it in.
    """
    label = classify(np_)
    ss = label == SUPERSINGULAR
    odd_g = report.g % 2 == 1
    some_nonsplit = any(v.behavior != SPLIT for v in report.places)
    results = (
        ("nonsplit_implies_supersingular", CriterionResult(report.none_split, ss)),
        ("supersingular_odd_degree_nonsplit", CriterionResult(
            ss, all(v.behavior != SPLIT for v in report.places if v.local_degree % 2))),
        ("odd_g_supersingular_has_nonsplit", CriterionResult(odd_g and ss, some_nonsplit)),
        ("galois_real_field_odd_g_iff", CriterionResult(
            odd_g and real_field_galois, ss == report.none_split)),
        ("ordinary_implies_all_split", CriterionResult(label == ORDINARY, report.all_split)),
    )
    return CriteriaReport(label, results)


@dataclass(frozen=True)
class Evaluation:
    polygon: NewtonPolygon
    classification: str
    splitting: SplittingReport
    criteria: CriteriaReport


def evaluate(t: CMTypeLift, pc: PrimeContext) -> Evaluation:
    """Polygon, classification, splitting and criteria for one instance."""
    poly = newton_polygon(t, pc)
    poly.check()
    rep = splitting_report(pc, t)
    galois = is_normal(pc.field.H_plus)
    crit = check_criteria(rep, poly, real_field_galois=galois)
    return Evaluation(poly, crit.classification, rep, crit)
