import itertools
from fractions import Fraction

import pytest

from quandleorder.errors import ConstructionError, MalformedInputError, PreconditionError
from quandleorder.lazy import (
    check_lazy_axioms,
    circle_quandle,
    circular_order_from_action,
    rho_action,
    verify_recursion_lemma,
)
from quandleorder.ordering import (
    CircularOrderFn,
    CyclicOrder,
    SampleSpec,
    TotalOrder,
    invariance_check,
    is_valid_circular,
    secret_circular,
    secret_value,
)
from quandleorder.quandle import dihedral, trivial

import oracles


def test_zero_on_two_points_is_valid():
    assert is_valid_circular(CircularOrderFn(lambda x, y, z: 0), 2).ok


def test_every_arrangement_up_to_4_is_valid():
    for n in range(1, 5):
        for perm in itertools.permutations(range(n)):
            c = CyclicOrder(perm)
            assert is_valid_circular(c, n).ok
            for x, y, z in itertools.product(range(n), repeat=3):
                assert c(x, y, z) == oracles.cyc_sign(perm, x, y, z)


def test_constant_plus_one_is_invalid():
    c = CircularOrderFn(lambda x, y, z: 0 if len({x, y, z}) < 3 else 1)
    res = is_valid_circular(c, 3)
    assert not res.ok and "axiom (2)" in res.detail


def test_arrangement_canonical_rotation():
    assert CyclicOrder((2, 0, 1)).arrangement == (0, 1, 2)
    with pytest.raises(MalformedInputError):
        CyclicOrder((0, 0, 1))
    with pytest.raises(MalformedInputError):
        TotalOrder((0, 2))


def test_trivial_quandle_any_total_order_invariant():
    for perm in itertools.permutations(range(4)):
        assert invariance_check(trivial(4), TotalOrder.from_sequence(perm), "right").ok


def test_dihedral3_arrangement_not_invariant():
    res = invariance_check(dihedral(3), CyclicOrder((0, 1, 2)), "right")
    assert not res.ok
    r, (x, y, z) = res.violation
    c = CyclicOrder((0, 1, 2))
    t = dihedral(3).table
    assert c(x, y, z) != c(t[x][r], t[y][r], t[z][r])


def test_secret_order_cases():
    c = secret_circular(TotalOrder((0, 1, 2)))
    assert c(0, 1, 2) == 1
    assert c(0, 2, 1) == -1
    assert c(0, 0, 1) == 0 and c(1, 2, 2) == 0


def test_secret_matches_three_case_formula():
    for perm in itertools.permutations(range(4)):
        o = TotalOrder.from_sequence(perm)
        c = secret_circular(o)
        for x, y, z in itertools.product(range(4), repeat=3):
            assert c(x, y, z) == secret_value(o.less, x, y, z)


def test_secret_of_invariant_order_is_invariant():
    for n in range(1, 4):
        for perm in itertools.permutations(range(n)):
            o = TotalOrder.from_sequence(perm)
            if invariance_check(trivial(n), o, "right").ok:
                c = secret_circular(o)
                assert is_valid_circular(c, n).ok
                assert invariance_check(trivial(n), c, "right").ok


# -- circle quandle -----------------------------------------------------------

def test_circle_arithmetic_and_formula():
    q, c = circle_quandle(Fraction(1, 2))
    assert q.op(Fraction(0), Fraction(1, 2)) == Fraction(1, 4)
    assert c(Fraction(0), Fraction(1, 3), Fraction(2, 3)) == 1
    assert c(Fraction(0), Fraction(2, 3), Fraction(1, 3)) == -1


@pytest.mark.parametrize("t", ["0", "1", "3/2", "-1/2"])
def test_circle_rejects_t(t):
    with pytest.raises(ConstructionError):
        circle_quandle(Fraction(t))


@pytest.mark.parametrize("t", [Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)])
def test_circle_invariance_small_sample(t):
    q, c = circle_quandle(t)
    s = SampleSpec(seed=3, triples=2000, quadruples=300, grid=q.grid)
    assert check_lazy_axioms(q, s).ok
    assert is_valid_circular(c, q, s).ok
    assert invariance_check(q, c, "right", s).ok
    assert invariance_check(q, c, "left", s).ok


def test_recursion_lemma_on_circle():
    q, c = circle_quandle(Fraction(1, 2))
    rep = verify_recursion_lemma(q, c, Fraction(0), Fraction(1, 2), 20)
    assert rep.holds and rep.constant in (1, -1) and rep.contradiction is None


def test_recursion_lemma_trivial():
    c = secret_circular(TotalOrder((0, 1, 2)))
    rep = verify_recursion_lemma(trivial(3), c, 0, 1, 5)
    assert rep.holds and rep.constant == 0 and not rep.nontrivial_pair


def test_recursion_lemma_dihedral_contradiction():
    c = CyclicOrder((0, 1, 2))
    rep = verify_recursion_lemma(dihedral(3), c, 0, 1, 3)
    assert rep.returns_at == 2 and rep.contradiction is not None
    assert rep.values[1] == 0
    with pytest.raises(PreconditionError):
        verify_recursion_lemma(dihedral(3), c, 1, 1, 3)


def test_left_recursion_lemma_chain():
    q, c = circle_quandle(Fraction(1, 3))
    rep = verify_recursion_lemma(q, c, Fraction(1, 5), Fraction(3, 4), 30, side="left")
    assert rep.holds


# -- actions ------------------------------------------------------------------

def test_rho_faithfulness():
    assert rho_action(dihedral(3)).faithful
    a = rho_action(trivial(3))
    assert not a.faithful and a.faithfulness_witness == (0, 1)
    q, _ = circle_quandle(Fraction(1, 2))
    assert rho_action(q).faithful


def test_semi_latin_implies_faithful():
    for n in range(1, 5):
        for t in oracles.all_quandle_tables(n):
            from quandleorder.quandle import classify, validate_quandle
            q = validate_quandle(t)
            if classify(q).is_semi_latin:
                assert rho_action(q).faithful


def test_circle_pullback_is_valid_right_order():
    q, d = circle_quandle(Fraction(1, 2))
    s = SampleSpec(seed=1, triples=2000, quadruples=300, grid=q.grid)
    c = circular_order_from_action(rho_action(q, s), Fraction(0), d, s)
    assert is_valid_circular(c, q, s).ok
    assert invariance_check(q, c, "right", s).ok


def test_literal_rule_is_not_a_circular_order():
    q, d = circle_quandle(Fraction(1, 2))
    s = SampleSpec(seed=1, triples=2000, quadruples=300, grid=q.grid)
    c = circular_order_from_action(rho_action(q, s), Fraction(0), d, s, literal=True)
    assert not is_valid_circular(c, q, s).ok


def test_trivial_action_refused():
    with pytest.raises(PreconditionError, match="stabilizer"):
        circular_order_from_action(rho_action(trivial(3)), 0, CyclicOrder((0, 1, 2)))


def test_dihedral_action_rejected_downstream():
    # R_1(0) = 2 and R_2(0) = 1 are distinct, so the construction runs,
    # but the pulled-back order cannot be right invariant
    c = circular_order_from_action(rho_action(dihedral(3)), 0, CyclicOrder((0, 1, 2)))
    assert not (is_valid_circular(c, 3).ok and invariance_check(dihedral(3), c, "right").ok)
