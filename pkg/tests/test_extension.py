import itertools
from fractions import Fraction

import pytest

from quandleorder.errors import CocycleError, HypothesisRefused, MalformedInputError, StructuralError
from quandleorder.extension import (
    AffineCocycle,
    DynamicalCocycle,
    GroupCocycleData,
    Integers,
    Rationals,
    ZMod,
    build_extension,
    extension_circular_order,
    extension_circular_rule,
    extension_right_order,
    group_to_quandle_cocycle,
    lex_order,
    order_preservation_check,
    projection_violation,
    proplo2_check,
    proplo3_check,
    validate_affine,
    validate_dynamical,
)
from quandleorder.groups import cyclic
from quandleorder.ordering import CyclicOrder, SampleSpec, TotalOrder
from quandleorder.quandle import dihedral, trivial

import oracles


def brute_is_quandle(t):
    n = len(t)
    return (
        all(t[x][x] == x for x in range(n))
        and all(len({t[x][y] for x in range(n)}) == n for y in range(n))
        and oracles.self_distributive(t)
    )


def pair_table(base, m, alpha):
    # independent construction of S x_alpha Q on pairs, flattened
    n = base.size
    elems = list(itertools.product(range(m), range(n)))
    idx = {p: i for i, p in enumerate(elems)}
    return [[idx[(alpha(x, y, s, u) % m, base.table[x][y])] for (u, y) in elems] for (s, x) in elems]


def test_fibers():
    z5 = ZMod(5)
    assert z5.norm(7) == 2 and z5.is_unit(2) and not z5.is_unit(0)
    assert not ZMod(4).is_unit(2)
    assert Integers().is_unit(-1) and not Integers().is_unit(2)
    assert Rationals().is_unit(Fraction(1, 3)) and not Rationals().is_unit(0)


def test_alexander_module_extension():
    m = AffineCocycle.uniform(dihedral(3), ZMod(5), 2)
    assert validate_affine(m).ok
    ext = build_extension(m)
    assert ext.quandle.size == 15
    assert projection_violation(ext, dihedral(3)) is None
    assert brute_is_quandle(pair_table(dihedral(3), 5, m.alpha))


def test_mutation_sweep_matches_brute_force():
    rejected = 0
    total = 0
    for x, y, v in itertools.product(range(3), range(3), range(4)):
        tau = [[4] * 3 for _ in range(3)]
        tau[x][y] = v
        mm = AffineCocycle.from_tables(dihedral(3), ZMod(5), [[2] * 3] * 3, tau)
        res = validate_affine(mm)
        assert res.ok == validate_dynamical(mm.to_dynamical()).ok
        assert res.ok == brute_is_quandle(pair_table(dihedral(3), 5, mm.alpha))
        total += 1
        rejected += not res.ok
        if not res.ok:
            with pytest.raises(CocycleError):
                build_extension(mm)
    assert (rejected, total) == (36, 36)


def test_non_unit_eta_is_structural():
    with pytest.raises(StructuralError):
        validate_affine(AffineCocycle.uniform(dihedral(3), ZMod(5), 0))
    with pytest.raises(StructuralError):
        validate_affine(AffineCocycle.uniform(dihedral(3), ZMod(4), 2))


def test_kappa_zero_affine_equivalent_to_dynamical():
    for t in range(1, 7):
        for base in (trivial(2), dihedral(3)):
            m = AffineCocycle.uniform(base, ZMod(7), t)
            assert validate_affine(m).ok == validate_dynamical(m.to_dynamical()).ok


def test_dynamical_from_rule_and_failure():
    dc = DynamicalCocycle.from_rule(trivial(1), 3, lambda x, y, a, b: (2 * b - a) % 3)
    assert validate_dynamical(dc).ok
    bad = DynamicalCocycle.from_rule(trivial(1), 3, lambda x, y, a, b: 0)
    res = validate_dynamical(bad)
    assert not res.ok and res.violation[0] == 1
    with pytest.raises(MalformedInputError):
        DynamicalCocycle(trivial(1), 2, (((0, 1),),))


def test_dynamical_agrees_with_brute_force():
    rules = [
        lambda x, y, a, b: (2 * b - a) % 3,
        lambda x, y, a, b: a,
        lambda x, y, a, b: (a + x * y) % 3,
        lambda x, y, a, b: (a + 1) % 3 if x != y else a,
    ]
    for rule in rules:
        dc = DynamicalCocycle.from_rule(trivial(2), 3, rule)
        assert validate_dynamical(dc).ok == brute_is_quandle(pair_table(trivial(2), 3, rule))


def test_rational_extension_is_lazy_quandle():
    ext = build_extension(AffineCocycle.uniform(trivial(2), Rationals(), 2))
    assert ext.op((Fraction(1), 0), (Fraction(3), 1)) == (Fraction(-1), 0)
    assert projection_violation(ext, trivial(2)) is None


@pytest.mark.parametrize("base", [trivial(1), trivial(2), trivial(3)])
def test_right_lex_order_positive_t(base):
    o = TotalOrder(tuple(range(base.size)))
    r = extension_right_order(2, base, o, samples=SampleSpec(seed=2, triples=5000))
    assert r.ok


def test_negative_t_refused_and_violated():
    with pytest.raises(HypothesisRefused):
        extension_right_order(-1, trivial(2), TotalOrder((0, 1)))
    r = extension_right_order(-1, trivial(2), TotalOrder((0, 1)), gate=False,
                              samples=SampleSpec(seed=2, triples=5000))
    assert not r.ok and r.refused is not None and not r.invariance.ok


def test_non_invariant_base_order_refused():
    with pytest.raises(HypothesisRefused):
        extension_right_order(2, dihedral(3), TotalOrder((0, 1, 2)), samples=SampleSpec(triples=100))


def test_kappa_hypothesis():
    # kappa(x, x) = 0 and the cocycle identity force a kappa that is constant
    # in its first argument to vanish, so a nonzero one is not a cocycle
    with pytest.raises(CocycleError):
        extension_right_order(2, trivial(2), TotalOrder((0, 1)), kappa=[[0, 1], [0, 1]],
                              samples=SampleSpec(seed=1, triples=3000))
    r = extension_right_order(2, trivial(2), TotalOrder((0, 1)), kappa=[[0, 0], [0, 0]],
                              samples=SampleSpec(seed=1, triples=3000))
    assert r.ok
    with pytest.raises(HypothesisRefused, match="kappa"):
        extension_right_order(2, trivial(2), TotalOrder((0, 1)), kappa=[[0, 0], [1, 1]])


def test_left_order_over_one_point_and_circle():
    r = extension_right_order(Fraction(1, 2), trivial(1), TotalOrder((0,)), side="left",
                              samples=SampleSpec(seed=4, triples=3000))
    assert r.ok


def test_circular_rule_cases():
    d = CyclicOrder((0, 1, 2))
    c = extension_circular_rule(d)
    assert c((5, 0), (9, 1), (1, 2)) == 1
    assert c((1, 0), (2, 0), (0, 1)) == 1
    assert c((2, 0), (1, 0), (0, 1)) == -1
    assert c((0, 1), (1, 0), (2, 0)) == 1
    assert c((1, 0), (2, 0), (3, 0)) == 1
    assert c((3, 0), (2, 0), (1, 0)) == -1
    pts = [(a, x) for a in range(3) for x in range(3)]
    # valid on a finite sample of pairs
    for p, q, r in itertools.permutations(pts, 3):
        assert c(p, q, r) == -c(q, p, r)


def test_circular_over_trivial_base():
    base = trivial(3)
    res = extension_circular_order(2, base, CyclicOrder((0, 1, 2)),
                                   samples=SampleSpec(seed=3, triples=3000, quadruples=400))
    assert res.ok


def test_circular_refuses_bad_base():
    with pytest.raises(HypothesisRefused):
        extension_circular_order(2, dihedral(3), CyclicOrder((0, 1, 2)))
    with pytest.raises(HypothesisRefused):
        extension_circular_order(-2, trivial(3), CyclicOrder((0, 1, 2)))


def test_order_preservation_reports():
    good = order_preservation_check(AffineCocycle.uniform(trivial(2), Rationals(), 2))
    assert good.slices_monotone and good.lex_invariant and good.failed_direction() is None
    bad = order_preservation_check(AffineCocycle.uniform(trivial(2), Rationals(), -1))
    assert not bad.slices_monotone and not bad.lex_invariant
    assert bad.failed_direction() is None


def test_preservation_dynamical():
    dc = DynamicalCocycle.from_rule(trivial(1), 3, lambda x, y, a, b: (2 * b - a) % 3)
    rep = order_preservation_check(dc)
    assert rep.failed_direction() is None and not rep.lex_invariant


def sign_z4():
    data = GroupCocycleData(cyclic(4), Integers(), (1, -1, 1, -1))
    return data, group_to_quandle_cocycle(data)


def test_group_bridge_tables():
    data, m = sign_z4()
    assert [[m.eta(x, y) for y in range(4)] for x in range(4)] == [[1, -1, 1, -1]] * 4
    assert all(m.tau(x, y) == 1 - data.action[x] for x in range(4) for y in range(4))
    assert validate_affine(m).ok


def test_group_bridge_bad_action():
    with pytest.raises(MalformedInputError):
        group_to_quandle_cocycle(GroupCocycleData(cyclic(4), Integers(), (1, -1, -1, 1)))
    with pytest.raises(MalformedInputError):
        group_to_quandle_cocycle(GroupCocycleData(cyclic(2), Integers(), (1, 2)))


def test_proplo2_agrees_with_observed():
    data, m = sign_z4()
    rep = proplo2_check(data, m, samples=SampleSpec(seed=0, triples=2000))
    assert rep.agree and not rep.hypothesis_holds


def test_proplo3_literal_is_reported():
    data, m = sign_z4()
    rep = proplo3_check(data, m, samples=SampleSpec(seed=0, triples=2000))
    assert rep.note == "literal interpretation"
    assert 0 < rep.agreements < rep.samples


def test_lex_order_helper():
    o = lex_order(None, TotalOrder((1, 0)))
    assert o.less((0, 0), (1, 0))
    assert o.less((0, 1), (0, 0))
    assert not o.less((0, 0), (0, 0))
