import random

import pytest

from rackcover.errors import RackAxiomError, UnknownNameError, ValidationError
from rackcover.groups import FiniteGroup
from rackcover.racks import (
    Rack,
    abelian_rack,
    affine_rack,
    catalog,
    catalog_names,
    conjugation_rack,
    dihedral_rack,
    rack_from_json,
    rack_to_json,
    rack_verify,
    reflections_d4_rack,
    tetrahedron_rack,
    transposition_elements,
    transpositions_rack,
)


def brute_force_rack_axioms(table):
    """Oracle: direct check of both axioms over all triples."""
    n = len(table)
    for x in range(n):
        if sorted(table[x]) != list(range(n)):
            return False
    for x in range(n):
        for y in range(n):
            for z in range(n):
                if table[x][table[y][z]] != table[table[x][y]][table[x][z]]:
                    return False
    return True


def test_s3_transpositions_is_valid_rack():
    rack = transpositions_rack(3)
    assert rack.n == 3
    assert brute_force_rack_axioms([list(r) for r in rack.table])


def test_broken_table_reports_witness():
    rack = transpositions_rack(3)
    table = [list(r) for r in rack.table]
    # swapping one entry breaks an axiom
    table[0][1], table[0][2] = table[0][2], table[0][1]
    with pytest.raises(RackAxiomError) as err:
        rack_verify(table)
    assert err.value.axiom in ("NotBijective", "NotSelfDistributive")
    assert err.value.witness


def test_affine_2y_minus_x_mod_5():
    table = [[(2 * y - x) % 5 for y in range(5)] for x in range(5)]
    assert brute_force_rack_axioms(table)
    rack = rack_verify(table)
    assert rack.table == affine_rack(5, 2).table


def test_out_of_range_entry():
    with pytest.raises(ValidationError):
        rack_verify([[0, 1], [2, 0]])


def test_catalog_sizes():
    assert catalog("transpositions", 4).n == 6
    assert catalog("tetrahedron").n == 4
    assert catalog("affine", 5, 2).n == 5
    assert catalog("four_cycles_S4").n == 6
    assert catalog("reflections_D4").n == 4
    assert catalog("abelian", 3).n == 3
    assert catalog("dihedral", 5).n == 5


def test_catalog_string_forms():
    assert catalog("transpositions:4").n == 6
    assert catalog("affine:5,2").n == 5
    assert catalog("affine(7,3)").n == 7
    with pytest.raises(UnknownNameError):
        catalog("nonexistent")
    with pytest.raises(UnknownNameError):
        catalog("transpositions")  # missing argument


def test_affine_constraints():
    with pytest.raises(ValidationError):
        affine_rack(5, 1)
    with pytest.raises(ValidationError):
        affine_rack(6, 2)  # gcd(2, 6) != 1


def test_all_catalog_racks_verify():
    racks = [
        transpositions_rack(3),
        transpositions_rack(4),
        transpositions_rack(5),
        catalog("four_cycles_S4"),
        tetrahedron_rack(),
        dihedral_rack(3),
        affine_rack(5, 2),
        affine_rack(5, 3),
        affine_rack(7, 3),
        affine_rack(7, 5),
        reflections_d4_rack(),
        abelian_rack(2),
    ]
    for rack in racks:
        assert brute_force_rack_axioms([list(r) for r in rack.table]), rack


def test_conjugation_racks_are_quandles():
    for rack in (transpositions_rack(4), tetrahedron_rack(), catalog("four_cycles_S4")):
        assert rack.is_quandle()


def test_orbits():
    assert len(transpositions_rack(3).orbits()) == 1
    assert len(transpositions_rack(5).orbits()) == 1
    assert len(reflections_d4_rack().orbits()) == 2
    assert len(abelian_rack(2).orbits()) == 2
    assert not transpositions_rack(4).is_decomposable()
    assert reflections_d4_rack().is_decomposable()


def test_faithfulness():
    assert transpositions_rack(3).is_faithful()
    assert not abelian_rack(3).is_faithful()
    assert affine_rack(7, 3).is_faithful()


def test_inner_group_orders():
    assert transpositions_rack(4).inner_group().order == 24
    assert tetrahedron_rack().inner_group().order == 12
    assert affine_rack(5, 2).inner_group().order == 20
    assert affine_rack(5, 3).inner_group().order == 20
    assert affine_rack(7, 3).inner_group().order == 42
    assert affine_rack(7, 5).inner_group().order == 42
    assert reflections_d4_rack().inner_group().order == 4
    assert catalog("four_cycles_S4").inner_group().order == 24


def test_inner_group_fingerprints():
    # Inn(transpositions(3)) is S_3; compare with an independent copy of S_3
    inn = transpositions_rack(3).inner_group()
    s3 = FiniteGroup.from_permutations([(1, 0, 2), (0, 2, 1)])
    assert inn.fingerprint() == s3.fingerprint()
    # Inn(tetrahedron) is A_4: order histogram 1,3,8 for orders 1,2,3
    hist = tetrahedron_rack().inner_group().order_histogram()
    assert hist == {1: 1, 2: 3, 3: 8}


def test_inner_group_invariant_under_relabeling():
    rng = random.Random(2)
    for rack in (transpositions_rack(4), affine_rack(5, 2), reflections_d4_rack()):
        perm = list(range(rack.n))
        rng.shuffle(perm)
        relabeled = rack.relabel(tuple(perm))
        assert brute_force_rack_axioms([list(r) for r in relabeled.table])
        assert (
            relabeled.inner_group().fingerprint()
            == rack.inner_group().fingerprint()
        )


def test_transposition_elements_order():
    elems = transposition_elements(4)
    assert len(elems) == 6
    assert elems[0] == (1, 0, 2, 3)  # the pair (0,1) comes first


def test_json_round_trip():
    rack = affine_rack(5, 2)
    data = rack_to_json(rack)
    assert data["n"] == 5
    assert min(min(row) for row in data["table"]) >= 1
    back = rack_from_json(data)
    assert back.table == rack.table


def test_catalog_names_listed():
    names = catalog_names()
    assert "transpositions" in names and "affine" in names
