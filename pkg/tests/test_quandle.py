import itertools

import pytest

from quandleorder.errors import AxiomError, ConstructionError, MalformedInputError
from quandleorder.groups import FiniteGroupTable, cyclic, direct_product, symmetric
from quandleorder.quandle import (
    alexander,
    axiom_violations,
    classify,
    conj,
    core,
    dihedral,
    dual_apply,
    make_standard,
    orbits,
    right_translation,
    takasaki,
    trivial,
    validate_quandle,
)

import oracles


def test_trivial_table():
    assert trivial(4).table == tuple((x,) * 4 for x in range(4))


def test_takasaki_z3_valid_and_formula():
    q = validate_quandle([[(2 * y - x) % 3 for y in range(3)] for x in range(3)])
    assert q == dihedral(3)


def test_takasaki_z5_formula():
    q = takasaki(cyclic(5))
    assert all(q.table[x][y] == (2 * y - x) % 5 for x in range(5) for y in range(5))


def test_idempotency_violation_reported():
    with pytest.raises(AxiomError) as e:
        validate_quandle([[1, 0], [1, 1]])
    first = e.value.violations[0]
    assert first.axiom == 1 and first.witness == (0,)


def test_out_of_range_is_not_an_axiom_error():
    with pytest.raises(MalformedInputError):
        validate_quandle([[0, 2], [1, 1]])
    with pytest.raises(MalformedInputError):
        validate_quandle([[0, 0], [1]])
    with pytest.raises(MalformedInputError):
        validate_quandle([])


def test_axiom3_witness():
    # columns are permutations fixing the diagonal, but not distributive
    t = [[0, 2, 1, 0], [2, 1, 0, 1], [1, 0, 2, 3], [3, 3, 3, 2]]
    vs = axiom_violations(t)
    assert vs
    for v in vs:
        if v.axiom == 3:
            x, y, z = v.witness
            assert t[t[x][y]][z] != t[t[x][z]][t[y][z]]


def test_conj_s3_orbits():
    q = conj(symmetric(3))
    assert sorted(len(o) for o in orbits(q)) == [1, 2, 3]


def test_conj_dual_is_inverse_conjugation():
    g = symmetric(3)
    q = conj(g)
    for a, h in itertools.product(range(6), repeat=2):
        assert dual_apply(q, a, h) == g.mul[g.mul[g.inv[h]][a]][h]


def test_core_and_alexander():
    z6 = cyclic(6)
    assert core(z6) == takasaki(z6)
    q = alexander(cyclic(5), [(2 * g) % 5 for g in range(5)])
    assert all(q.table[x][y] == (2 * x - y) % 5 for x in range(5) for y in range(5))


def test_construction_errors():
    with pytest.raises(ConstructionError):
        takasaki(symmetric(3))
    with pytest.raises(ConstructionError):
        alexander(cyclic(4), [0, 2, 0, 2])
    with pytest.raises(ConstructionError):
        make_standard("bogus", 3)
    with pytest.raises(ConstructionError):
        trivial(0)


def test_make_standard_dispatch():
    assert make_standard("trivial", 3) == trivial(3)
    assert make_standard("dihedral", 5) == dihedral(5)
    assert make_standard("conj", cyclic(3)) == trivial(3)


def test_group_table_validation():
    with pytest.raises(Exception):
        FiniteGroupTable(2, ((0, 1), (0, 0)), (0, 1), 0)
    assert direct_product(cyclic(2), cyclic(3)).is_abelian()


@pytest.mark.parametrize("q", [trivial(3), dihedral(5), conj(symmetric(3)), core(symmetric(3))])
def test_dual_identities(q):
    n = q.size
    for x, y in itertools.product(range(n), repeat=2):
        assert dual_apply(q, q.table[x][y], y) == x
        assert q.table[dual_apply(q, x, y)][y] == x
    for x in range(n):
        assert dual_apply(q, x, x) == x


def test_dual_examples():
    assert dual_apply(trivial(3), 2, 0) == 2
    q = dihedral(5)
    assert q.dual_table == q.table


def test_classify_takasaki5():
    r = classify(dihedral(5))
    assert r.is_latin and r.is_semi_latin and r.is_involutory and r.is_connected
    assert not r.is_trivial and r.nq_order == 2


def test_classify_trivial4():
    r = classify(trivial(4))
    assert r.is_trivial and not r.is_semi_latin and r.is_involutory
    assert r.nq_order == 1 and len(r.orbit_partition) == 4
    assert r.stabilizer_elements == (0, 1, 2, 3)


def test_classify_conj_s3():
    r = classify(conj(symmetric(3)))
    assert not r.is_connected and not r.is_latin and not r.is_trivial


def test_one_element_quandle_is_latin():
    r = classify(trivial(1))
    assert r.is_trivial and r.is_latin


def test_right_translation_examples():
    assert right_translation(trivial(3), 1) == ((0, 1, 2), 1)
    assert right_translation(dihedral(3), 0) == ((0, 2, 1), 2)
    g = symmetric(3)
    q = conj(g)
    transpositions = [p for p in range(6) if g.mul[p][p] == g.id and p != g.id]
    for s in transpositions:
        perm, order = right_translation(q, s)
        assert order == 2 and perm[s] == s


def test_classification_invariants_on_all_small_quandles():
    for n in range(1, 5):
        for t in oracles.all_quandle_tables(n):
            q = validate_quandle(t)
            r = classify(q)
            assert r.is_involutory == all(right_translation(q, s)[1] in (1, 2) for s in range(n))
            assert (not r.is_latin) or r.is_semi_latin
            assert r.is_trivial == (len(r.stabilizer_elements) == n)


def test_acceptance_family_is_valid():
    # every constructor output already passed validate_quandle; recheck via the oracle
    qs = [trivial(n) for n in range(1, 9)] + [dihedral(n) for n in range(1, 10)]
    qs += [conj(symmetric(3)), core(symmetric(3)), conj(cyclic(6)), core(cyclic(6))]
    for q in qs:
        assert oracles.self_distributive(q.table)
