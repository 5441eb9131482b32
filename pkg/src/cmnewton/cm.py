"""CM fields and CM types as group data.

A CM field ``F`` is encoded inside the Galois group ``G`` of its Galois
closure by the subgroup ``H`` fixing ``F`` and the complex conjugation ``c``.
A CM type is stored lifted to ``G``: the set of all ``g`` whose restriction to
``F`` lies in the type.  Such a set is a union of left cosets ``gH`` and
contains exactly one coset from each pair ``{gH, cgH}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    ConjugatePairPresent,
    ConjugationFixesF,
    ConjugationNotCentral,
    ConjugationNotInvolution,
    DimensionTooLargeForEnumeration,
    IncompleteCover,
    IndexNotEven,
    NotHStable,
    NotIntermediateSubgroup,
    SubgroupParentMismatch,
    SubTypeInvalid,
    ValidationError,
)
from .groups import FiniteGroup, Subgroup, is_central, join, left_cosets

MAX_ENUMERATION_DIMENSION = 20


@dataclass(frozen=True, eq=False)
class CMFieldData:
    G: FiniteGroup
    H: Subgroup
    c: int
    H_plus: Subgroup
    g: int

    @property
    def degree(self) -> int:
        """``[F : Q] = 2g``."""
        return 2 * self.g


@dataclass(frozen=True, eq=False)
class CMTypeLift:
    field: CMFieldData
    members: tuple[int, ...]

    def __contains__(self, a):
        return a in self.member_set

    def __len__(self):
        return len(self.members)

    @property
    def member_set(self) -> frozenset:
        return self.__dict__.setdefault("_set", frozenset(self.members))

    def labels(self) -> list[str]:
        return [self.field.G.label(a) for a in self.members]


def validate_cm_field(G: FiniteGroup, H: Subgroup, c) -> CMFieldData:
    if H.parent is not G:
        raise SubgroupParentMismatch("H is not a subgroup of G")
    c = G.parse(c)
    if c == 0 or G.mul(c, c) != 0:
        raise ConjugationNotInvolution(f"conjugation {G.label(c)} does not have order 2")
    if c in H:
        raise ConjugationFixesF(f"conjugation {G.label(c)} lies in H")
    if not is_central(G, c):
        raise ConjugationNotCentral(f"conjugation {G.label(c)} is not central")
    index = G.order // H.order
    if index % 2:
        raise IndexNotEven(f"[G : H] = {index} is odd")
    H_plus = join(H, Subgroup(G, (0, c)))
    return CMFieldData(G, H, c, H_plus, index // 2)


def _as_ids(G: FiniteGroup, members) -> tuple[int, ...]:
    return tuple(sorted({G.parse(m) for m in members}))


def validate_cm_type(field: CMFieldData, members) -> CMTypeLift:
    G = field.G
    ids = _as_ids(G, members)
    s = set(ids)
    t = G.table
    for a in ids:
        for h in field.H.members:
            if int(t[a, h]) not in s:
                raise NotHStable(f"{G.label(a)}*{G.label(h)} missing from the type")
    for a in ids:
        if G.mul(field.c, a) in s:
            raise ConjugatePairPresent(
                f"{G.label(a)} and its conjugate {G.label(G.mul(field.c, a))} are both present")
    if 2 * len(ids) != G.order:
        raise IncompleteCover(f"type has {len(ids)} elements, expected {G.order // 2}")
    return CMTypeLift(field, ids)


def coset_pairs(field: CMFieldData) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pairs ``(gH, cgH)`` of left cosets, the first of each having the
    smaller minimal element; sorted by that minimum."""
    G = field.G
    cosets = left_cosets(field.H)
    by_min = {cs[0]: cs for cs in cosets}
    pairs = []
    used = set()
    for cs in cosets:
        if cs[0] in used:
            continue
        partner = min(G.mul(field.c, a) for a in cs)
        pairs.append((cs, by_min[partner]))
        used.update((cs[0], partner))
    return pairs


def enumerate_cm_types(field: CMFieldData) -> list[CMTypeLift]:
    """All ``2^g`` lifted CM types.

    Ordering: binary counting over the coset pairs, the first pair being the
    most significant choice, picking the first coset before its conjugate.
    """
    if field.g > MAX_ENUMERATION_DIMENSION:
        raise DimensionTooLargeForEnumeration(f"g = {field.g} > {MAX_ENUMERATION_DIMENSION}")
    pairs = coset_pairs(field)
    types = []
    for choice in itertools.product((0, 1), repeat=len(pairs)):
        members = sorted(itertools.chain.from_iterable(pair[k] for pair, k in zip(pairs, choice)))
        types.append(CMTypeLift(field, tuple(members)))
    return types


def complementary_type(t: CMTypeLift) -> CMTypeLift:
    """``c * Phi``, the conjugate type."""
    G = t.field.G
    return CMTypeLift(t.field, tuple(sorted(G.mul(t.field.c, a) for a in t.members)))


def induced_type(field: CMFieldData, H_sub: Subgroup, sub_type_members) -> CMTypeLift:
    """Reinterpret a CM type of the subfield fixed by ``H_sub`` as a type of ``F``."""
    if H_sub.parent is not field.G or not field.H.issubset(H_sub):
        raise NotIntermediateSubgroup("H_sub must contain H")
    if field.c in H_sub:
        raise NotIntermediateSubgroup("conjugation must act nontrivially on the subfield")
    try:
        sub_field = validate_cm_field(field.G, H_sub, field.c)
        sub_type = validate_cm_type(sub_field, sub_type_members)
    except ValidationError as exc:
        raise SubTypeInvalid(f"{type(exc).__name__}: {exc}") from exc
    return validate_cm_type(field, sub_type.members)


def type_stabilizer(t: CMTypeLift) -> Subgroup:
    """``{s in G : Phi * s = Phi}``; always contains ``H``."""
    G = t.field.G
    tab = G.table
    members = list(t.members)
    target = t.member_set
    stab = [s for s in G.elements if all(int(tab[a, s]) in target for a in members)]
    return Subgroup(G, tuple(stab))


def is_primitive(t: CMTypeLift) -> bool:
    return type_stabilizer(t).order == t.field.H.order


def left_stabilizer(t: CMTypeLift) -> Subgroup:
    """``{s in G : s * Phi = Phi}``."""
    G = t.field.G
    tab = G.table
    target = t.member_set
    stab = [s for s in G.elements if all(int(tab[s, a]) in target for a in t.members)]
    return Subgroup(G, tuple(stab))
