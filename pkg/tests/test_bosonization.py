import pytest

from rackcover.bosonization import (
    YDDatum,
    build_slice,
    covering_map_check,
    datum_from_generators,
    datum_from_json,
    datum_to_json,
    quotient_datum,
    rank_one_datum,
    verify_hopf,
    yd_verify,
)
from rackcover.braiding import BraidedSpace, Cocycle, chi_cocycle
from rackcover.cyclotomic import CycScalar, root_of_unity
from rackcover.envgroup import hom_from_generator_images
from rackcover.errors import ValidationError, YDDatumError
from rackcover.groups import FiniteGroup
from rackcover.racks import transpositions_rack
from rackcover.racks import transposition_elements


def s3_chi_datum():
    """Transpositions of S_3 graded by themselves inside S_3, acting through
    the sign cocycle; the unique multiplicative extension of the braiding."""
    cocycle = chi_cocycle(3)
    space = BraidedSpace(cocycle.rack, cocycle)
    elems = transposition_elements(3)
    group = FiniteGroup.from_permutations(elems, label="S3")
    return datum_from_generators(space, group, elems)


def s3_minus_one_datum():
    rack = transpositions_rack(3)
    space = BraidedSpace(rack, Cocycle.constant_minus_one(rack))
    elems = transposition_elements(3)
    group = FiniteGroup.from_permutations(elems, label="S3")
    return datum_from_generators(space, group, elems)


# --- datum validation ---------------------------------------------------------


def test_rank_one_datum_valid():
    datum = rank_one_datum(group_order=4, q_order=2)
    trivial = yd_verify(datum)
    # K^2 acts trivially: the subgroup generated by the square
    assert trivial == {0, 2}
    assert datum.is_link_indecomposable()


def test_rank_one_datum_taft():
    datum = rank_one_datum(group_order=3, q_order=3)
    assert yd_verify(datum) == {0}


def test_rank_one_rejects_bad_orders():
    with pytest.raises(ValidationError):
        rank_one_datum(group_order=4, q_order=3)


def test_s3_datum_verifies():
    datum = s3_chi_datum()
    trivial = yd_verify(datum)
    assert trivial == {datum.group.identity}
    assert datum.is_link_indecomposable()


def test_grading_incompatible_detected():
    datum = rank_one_datum(group_order=4, q_order=2)
    broken = YDDatum(
        datum.space,
        datum.group,
        (2,),  # wrong degree: K^2 does not act by q on the vector
        datum.action,
    )
    with pytest.raises(YDDatumError) as err:
        yd_verify(broken)
    assert err.value.kind in ("BraidingMismatch", "GradingIncompatible")


def test_action_composition_checked():
    datum = rank_one_datum(group_order=4, q_order=2)
    action = dict(datum.action)
    action[3] = ((0, CycScalar.one()),)  # K^3 suddenly acts trivially
    with pytest.raises(YDDatumError) as err:
        yd_verify(YDDatum(datum.space, datum.group, datum.degrees, action))
    assert err.value.kind == "NotAnAction"


# --- quotients -----------------------------------------------------------------


def test_quotient_datum_c4_to_c2():
    datum = rank_one_datum(group_order=4, q_order=2)
    quot, proj = quotient_datum(datum, {0, 2})
    assert quot.group.order == 2
    assert yd_verify(quot) == {quot.group.identity}
    # braiding unchanged
    assert quot.space.cocycle.exponents == datum.space.cocycle.exponents


def test_quotient_datum_trivial_subgroup():
    datum = rank_one_datum(group_order=4, q_order=2)
    quot, _ = quotient_datum(datum, {0})
    assert quot.group.order == 4
    assert quot.degrees == datum.degrees


def test_quotient_datum_rejects_nontrivial_action():
    datum = rank_one_datum(group_order=4, q_order=2)
    with pytest.raises(YDDatumError) as err:
        quotient_datum(datum, {0, 1, 2, 3})
    assert err.value.kind == "ActsNontrivially"


# --- slices ---------------------------------------------------------------------


def test_sweedler_slice():
    datum = rank_one_datum(group_order=2, q_order=2)
    slice_ = build_slice(datum, 2)
    assert slice_.dimension == 4  # dims (1, 1, 0) times |G| = 2
    report = verify_hopf(slice_)
    assert report.group_likes == 2
    assert report.dimension == 4
    names = [name for name, _, _ in report.axioms]
    assert {"counit", "coassociativity", "unit", "associativity", "bialgebra", "antipode"} <= set(names)


def test_taft_slice():
    datum = rank_one_datum(group_order=3, q_order=3)
    slice_ = build_slice(datum, 3)
    assert slice_.dimension == 9  # dims (1, 1, 1, 0) times 3
    report = verify_hopf(slice_)
    assert report.group_likes == 3


def test_taft_relations_hold():
    # KE = qEK and E^m = 0 in the slice structure constants
    datum = rank_one_datum(group_order=3, q_order=3)
    slice_ = build_slice(datum, 3)
    group = datum.group
    K = (0, 0, 1)  # 1 # K
    E = (1, 0, 0)  # E # e
    KE = slice_.product[(K, E)]
    EK = slice_.product[(E, K)]
    q = root_of_unity(3)
    assert set(KE) == set(EK)
    for key, value in KE.items():
        assert value == q * EK[key]
    # E * E * E = 0: E^2 is the degree-2 basis line, and E^2 * E must vanish
    E2 = slice_.product[(E, E)]
    assert E2  # nonzero in degree 2
    (key2, coeff2), = E2.items()
    assert slice_.product[(key2, E)] == {}


def test_sweedler_antipode_values():
    datum = rank_one_datum(group_order=2, q_order=2)
    slice_ = build_slice(datum, 2)
    one = CycScalar.one()
    # S(1#K) = 1#K (K is its own inverse); S(E#e) = -(1#K)(E#e)
    K = (0, 0, 1)
    assert slice_.antipode[K] == {K: one}
    E = (1, 0, 0)
    expected = {
        key: -value for key, value in slice_.product[(K, E)].items()
    }
    assert slice_.antipode[E] == expected


def test_s3_slice_dimension_and_axioms():
    datum = s3_minus_one_datum()
    slice_ = build_slice(datum, 2)
    assert slice_.dims == (1, 3, 4)
    assert slice_.dimension == (1 + 3 + 4) * 6
    report = verify_hopf(slice_)
    assert report.group_likes == 6
    assert report.dimension == 48


def test_slice_bound():
    from rackcover.errors import BoundExceededError

    datum = s3_minus_one_datum()
    with pytest.raises(BoundExceededError):
        build_slice(datum, 2, max_dim=10)


# --- covering maps -----------------------------------------------------------------


def test_covering_c4_to_c2():
    source = rank_one_datum(group_order=4, q_order=2)
    target = rank_one_datum(group_order=2, q_order=2)
    c4, c2 = source.group, target.group
    hom = hom_from_generator_images(c4, c2, [1])
    result = covering_map_check(source, target, hom, cutoff=2)
    assert result.kernel_size == 2
    assert result.lifts_per_element == 2
    assert result.algebra_checked > 0
    assert result.coalgebra_checked == 8


def test_covering_identity_map():
    datum = rank_one_datum(group_order=2, q_order=2)
    hom = hom_from_generator_images(datum.group, datum.group, [1])
    result = covering_map_check(datum, datum, hom, cutoff=2)
    assert result.kernel_size == 1
    assert result.lifts_per_element == 1


def test_covering_c6_to_c2():
    source = rank_one_datum(group_order=6, q_order=2)
    target = rank_one_datum(group_order=2, q_order=2)
    hom = hom_from_generator_images(source.group, target.group, [1])
    result = covering_map_check(source, target, hom, cutoff=2)
    assert result.kernel_size == 3
    assert result.lifts_per_element == 3


def test_covering_rejects_nontrivial_kernel_action():
    source = rank_one_datum(group_order=4, q_order=4)
    target = rank_one_datum(group_order=2, q_order=2)
    hom = hom_from_generator_images(source.group, target.group, [1])
    with pytest.raises(YDDatumError) as err:
        covering_map_check(source, target, hom, cutoff=1)
    assert err.value.kind == "NotCompatible"


# --- file form -----------------------------------------------------------------------


def test_datum_json_round_trip():
    datum = rank_one_datum(group_order=4, q_order=2)
    data = datum_to_json(datum)
    back = datum_from_json(data)
    assert back.group.order == 4
    assert back.degrees == datum.degrees
    for g in back.group.elements:
        assert back.action[g] == datum.action[g]


def test_s3_datum_json_round_trip():
    datum = s3_chi_datum()
    data = datum_to_json(datum)
    back = datum_from_json(data)
    assert back.group.order == 6
    assert yd_verify(back) == {back.group.identity}


def test_slice_structure_export():
    import json

    from rackcover.bosonization import slice_to_json

    datum = rank_one_datum(group_order=3, q_order=3)
    slice_ = build_slice(datum, 3)
    data = slice_to_json(slice_)
    json.dumps(data)  # serializable
    assert data["dimension"] == 9
    assert len(data["basis"]) == 9
    # KE = qEK sits in the exported product constants
    from rackcover.cyclotomic import parse_scalar

    ke = data["product"]["0,0,1 | 1,0,0"]
    ek = data["product"]["1,0,0 | 0,0,1"]
    assert set(ke) == set(ek)
    (key, value), = ke.items()
    assert parse_scalar(value) == root_of_unity(3)  # the Taft scalar
    assert parse_scalar(ek[key]) == CycScalar.one()
