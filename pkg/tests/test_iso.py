import random

import pytest

from quandleorder.groups import cyclic, symmetric
from quandleorder.iso import is_homomorphism, is_isomorphic
from quandleorder.quandle import conj, core, dihedral, trivial, validate_quandle

import oracles


def test_dihedral_not_trivial():
    assert is_isomorphic(dihedral(3), trivial(3)) is None


def test_relabeling_found():
    q = dihedral(3)
    r = q.relabel((1, 2, 0))
    f = is_isomorphic(q, r)
    assert f is not None and is_homomorphism(q, r, f)


def test_size_mismatch():
    assert is_isomorphic(dihedral(3), dihedral(5)) is None


def test_least_witness_matches_brute_force():
    rng = random.Random(7)
    for q in [dihedral(5), conj(symmetric(3)), core(cyclic(4)), trivial(3)]:
        perm = list(range(q.size))
        rng.shuffle(perm)
        r = q.relabel(perm)
        assert is_isomorphic(q, r) == oracles.isomorphic_brute(q.table, r.table)


def test_small_quandle_classes_agree_with_oracle():
    tables = oracles.all_quandle_tables(4)
    qs = [validate_quandle(t) for t in tables]
    for i in range(0, len(qs), 3):
        for j in range(0, len(qs), 5):
            ours = is_isomorphic(qs[i], qs[j])
            brute = oracles.isomorphic_brute(tables[i], tables[j])
            assert (ours is None) == (brute is None)
            if ours is not None:
                assert ours == brute


@pytest.mark.parametrize("q", [dihedral(5), conj(symmetric(3))])
def test_reflexive_and_symmetric(q):
    assert is_isomorphic(q, q) == tuple(range(q.size))
    r = q.relabel(tuple(reversed(range(q.size))))
    f = is_isomorphic(q, r)
    g = is_isomorphic(r, q)
    assert f is not None and g is not None
    assert is_homomorphism(r, q, tuple(f.index(i) for i in range(q.size)))
