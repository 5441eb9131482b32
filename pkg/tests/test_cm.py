import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from catalog import random_cm_field, random_type_members
from cmnewton.cm import (
    complementary_type,
    enumerate_cm_types,
    induced_type,
    is_primitive,
    left_stabilizer,
    type_stabilizer,
    validate_cm_field,
    validate_cm_type,
)
from cmnewton.cyclotomic import unit_group
from cmnewton.errors import (
    ConjugatePairPresent,
    ConjugationFixesF,
    ConjugationNotCentral,
    ConjugationNotInvolution,
    DimensionTooLargeForEnumeration,
    IncompleteCover,
    NotHStable,
    NotIntermediateSubgroup,
    SubTypeInvalid,
)
from cmnewton.groups import (
    cyclic_group,
    dihedral_group,
    direct_product,
    subgroup_generated,
    trivial_subgroup,
)


@pytest.fixture(scope="module")
def d8():
    return dihedral_group(4)


@pytest.fixture(scope="module")
def goren(d8):
    return validate_cm_field(d8, subgroup_generated(d8, ["x"]), "y^2")


@pytest.fixture(scope="module")
def zeta8():
    U = unit_group(8)
    return U, validate_cm_field(U.group, trivial_subgroup(U.group), U.element(7))


def labels(G, elems):
    return {G.label(a) for a in elems}


def test_zeta8_field(zeta8):
    U, fld = zeta8
    assert fld.g == 2
    assert U.residues_of(fld.H_plus) == [1, 7]


def test_goren_field(goren, d8):
    assert goren.g == 2
    assert labels(d8, goren.H_plus.members) == {"1", "x", "y^2", "xy^2"}


def test_conjugation_in_H(d8):
    with pytest.raises(ConjugationFixesF):
        validate_cm_field(d8, subgroup_generated(d8, ["x"]), "x")


def test_conjugation_not_central(d8):
    with pytest.raises(ConjugationNotCentral):
        validate_cm_field(d8, trivial_subgroup(d8), "xy")


def test_conjugation_not_involution(d8):
    with pytest.raises(ConjugationNotInvolution):
        validate_cm_field(d8, trivial_subgroup(d8), "y")
    with pytest.raises(ConjugationNotInvolution):
        validate_cm_field(d8, trivial_subgroup(d8), "1")


def test_goren_type_valid(goren, d8):
    t = validate_cm_type(goren, ["1", "x", "y", "xy^3"])
    assert labels(d8, t.members) == {"1", "x", "y", "xy^3"}


def test_zeta8_type_from_qi(zeta8):
    U, fld = zeta8
    validate_cm_type(fld, [U.element(1), U.element(5)])


def test_conjugate_pair_rejected(zeta8):
    U, fld = zeta8
    with pytest.raises(ConjugatePairPresent):
        validate_cm_type(fld, [U.element(1), U.element(7)])


def test_not_h_stable(goren):
    with pytest.raises(NotHStable):
        validate_cm_type(goren, ["1", "y", "xy^3", "xy"])


def test_incomplete_cover(goren):
    with pytest.raises(IncompleteCover):
        validate_cm_type(goren, ["1", "x"])


def test_enumerate_g1():
    U = unit_group(4)
    fld = validate_cm_field(U.group, trivial_subgroup(U.group), U.element(3))
    types = enumerate_cm_types(fld)
    assert [U.residue(a) for t in types for a in t.members] == [1, 3]


def test_enumerate_zeta8(zeta8):
    U, fld = zeta8
    types = enumerate_cm_types(fld)
    assert [[U.residue(a) for a in t.members] for t in types] == [[1, 3], [1, 5], [3, 7], [5, 7]]


def test_enumerate_goren(goren, d8):
    types = enumerate_cm_types(goren)
    assert len(types) == 4
    assert {"1", "x", "y", "xy^3"} in [labels(d8, t.members) for t in types]


def test_enumeration_guard():
    G = direct_product(cyclic_group(2), cyclic_group(2))
    fld = validate_cm_field(G, trivial_subgroup(G), 1)
    assert len(enumerate_cm_types(fld)) == 4
    huge = cyclic_group(2 * 21)
    fld = validate_cm_field(huge, trivial_subgroup(huge), huge.power(huge.generator_ids[0], 21))
    with pytest.raises(DimensionTooLargeForEnumeration):
        enumerate_cm_types(fld)


def test_induced_from_qi(zeta8):
    U, fld = zeta8
    t = induced_type(fld, U.subgroup([5]), [U.element(1), U.element(5)])
    assert [U.residue(a) for a in t.members] == [1, 5]


def test_induced_identity(goren, d8):
    t = induced_type(goren, goren.H, [d8.parse(w) for w in ["1", "x", "y", "xy^3"]])
    assert labels(d8, t.members) == {"1", "x", "y", "xy^3"}


def test_induced_rejects_subgroup_with_conjugation(goren, d8):
    with pytest.raises(NotIntermediateSubgroup):
        induced_type(goren, goren.H_plus, list(goren.H_plus.members))


def test_induced_rejects_bad_subtype(zeta8):
    U, fld = zeta8
    with pytest.raises(SubTypeInvalid):
        induced_type(fld, U.subgroup([5]), [U.element(1)])


def test_stabilizer_imprimitive(zeta8):
    U, fld = zeta8
    t = validate_cm_type(fld, [U.element(1), U.element(5)])
    assert U.residues_of(type_stabilizer(t)) == [1, 5]
    assert not is_primitive(t)


def test_stabilizer_primitive(goren, d8):
    t = validate_cm_type(goren, ["1", "x", "y", "xy^3"])
    assert labels(d8, type_stabilizer(t).members) == {"1", "x"}
    assert is_primitive(t)
    assert labels(d8, left_stabilizer(t).members) == {"1", "xy^3"}


def test_stabilizer_g1():
    U = unit_group(3)
    fld = validate_cm_field(U.group, trivial_subgroup(U.group), U.element(2))
    for t in enumerate_cm_types(fld):
        assert type_stabilizer(t) == fld.H


def test_zeta8_imprimitive_count(zeta8):
    U, fld = zeta8
    types = enumerate_cm_types(fld)
    # every type of the biquadratic field Q(zeta8) is induced: two from Q(i), two from Q(sqrt(-2))
    assert not any(is_primitive(t) for t in types)
    stabs = sorted(tuple(U.residues_of(type_stabilizer(t))) for t in types)
    assert stabs == [(1, 3), (1, 3), (1, 5), (1, 5)]


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_type_invariants(rnd):
    fld = random_cm_field(rnd)
    if fld.g > 8:
        return
    types = enumerate_cm_types(fld)
    assert len(types) == 2 ** fld.g
    member_sets = {t.members for t in types}
    assert len(member_sets) == len(types)
    for t in types:
        validate_cm_type(fld, t.members)
        assert 2 * len(t) == fld.G.order
        assert complementary_type(t).members in member_sets
        stab = type_stabilizer(t)
        assert fld.H.issubset(stab)
        assert fld.c not in stab


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_induced_type_is_stable_under_subfield_group(rnd):
    fld = random_cm_field(rnd)
    G = fld.G
    # intermediate subgroup: H plus a random element, if it avoids c
    extra = rnd.randrange(G.order)
    H_sub = subgroup_generated(G, list(fld.H.members) + [extra])
    if fld.c in H_sub:
        return
    sub_field = validate_cm_field(G, H_sub, fld.c)
    members = random_type_members(sub_field, random.Random(rnd.random()))
    t = induced_type(fld, H_sub, members)
    s = set(t.members)
    assert all(G.mul(a, h) in s for a in t.members for h in H_sub.members)
