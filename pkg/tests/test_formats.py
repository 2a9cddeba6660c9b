import random
from fractions import Fraction

import pytest

from quandleorder.envgroup import GroupPresentation, env_presentation
from quandleorder.errors import AxiomError, MalformedInputError
from quandleorder.formats import (
    format_gpres,
    format_group_word,
    format_order,
    format_pd,
    format_qnd,
    format_qpres,
    parse_cocycle,
    parse_gpres,
    parse_order,
    parse_pd,
    parse_qnd,
    parse_qpres,
)
from quandleorder.ordering import CyclicOrder, TotalOrder
from quandleorder.presentation import torus_presentation
from quandleorder.quandle import dihedral, trivial
from quandleorder.search import find_order


def fixture(name):
    with open(f"fixtures/{name}") as fh:
        return fh.read()


def test_qnd_round_trip():
    for q in (dihedral(3), dihedral(5), trivial(4)):
        f = parse_qnd(format_qnd(q))
        assert f.quandle == q and f.generator_images is None
    f = parse_qnd(format_qnd(dihedral(3), (0, 2)))
    assert f.generator_images == (0, 2)


def test_qnd_fixture_and_comments():
    f = parse_qnd("# hello\n\n" + fixture("takasaki3.qnd"))
    assert f.quandle.size == 3


def test_qnd_axiom_failure():
    with pytest.raises(AxiomError):
        parse_qnd(fixture("bad_axiom1.qnd"))
    assert parse_qnd(fixture("bad_axiom1.qnd"), validate=False).quandle.size > 0


@pytest.mark.parametrize("text,line,col", [
    ("qnd 2\n", 1, 1),
    ("qnd 1\nsize x\n", 2, 6),
    ("qnd 1\nsize 2\n1 2\n", 4, 1),
    ("qnd 1\nsize 2\n1 3\n2 2\n", 3, 3),
    ("qnd 1\nsize 2\n1 1\n2 z\n", 4, 3),
    ("qnd 1\nsize 2\n1 1\n2 2 2\n", 4, 1),
    ("qnd 1\nsize 2\n1 1\n2 2\ngen a1 -> 5\n", 5, 11),
])
def test_qnd_error_positions(text, line, col):
    with pytest.raises(MalformedInputError) as e:
        parse_qnd(text)
    assert (e.value.line, e.value.column) == (line, col)


def test_bad_rows_fixture():
    with pytest.raises(MalformedInputError) as e:
        parse_qnd(fixture("bad_rows.qnd"))
    assert e.value.line is not None


def test_order_round_trip():
    for q, kind in ((trivial(4), "circular"), (trivial(3), "total"), (dihedral(3), "circular")):
        r = find_order(q, "right", kind)
        back = parse_order(format_order(r))
        if r.witness is None:
            assert back == {"leaves": r.leaves, "pruned": r.pruned, "space": r.space}
        else:
            assert back == r.witness
    assert parse_order("order 1\ncyclic: 2 1 3\n") == CyclicOrder((1, 0, 2))
    assert isinstance(parse_order("order 1\ntotal ranks: 2 1\n"), TotalOrder)
    with pytest.raises(MalformedInputError):
        parse_order("order 1\ncyclic: 1 1\n")


def test_qpres_round_trip():
    for m, n in ((2, 3), (3, 4), (2, 2)):
        p = torus_presentation(m, n)
        assert parse_qpres(format_qpres(p)) == p
    p = parse_qpres(fixture("fig8.qpres"))
    assert parse_qpres(format_qpres(p)) == p


def test_qpres_error_column():
    with pytest.raises(MalformedInputError) as e:
        parse_qpres("qpres 1\ngens 2\nrel a1 = a2*a3\n")
    assert e.value.line == 3 and e.value.column == 13
    with pytest.raises(MalformedInputError):
        parse_qpres("qpres 1\ngens 2\nrel a1 a2\n")


def test_pd_round_trip_and_errors():
    pd = parse_pd(fixture("fig8.pd"))
    assert parse_pd(format_pd(pd)) == pd
    with pytest.raises(MalformedInputError) as e:
        parse_pd("pd 1\nX+ 1 2 3\n")
    assert e.value.line == 2
    with pytest.raises(MalformedInputError):
        parse_pd("pd 1\nY 1 2 3 4\n")


def test_gpres_round_trip_random():
    rng = random.Random(3)
    for _ in range(300):
        k = rng.randint(1, 4)
        rels = tuple(
            tuple(rng.choice([1, -1]) * rng.randint(1, k) for _ in range(rng.randint(0, 8)))
            for _ in range(rng.randint(0, 4))
        )
        g = GroupPresentation(k, rels)
        assert parse_gpres(format_gpres(g)) == g


def test_group_word_format():
    assert format_group_word(()) == "1"
    assert format_group_word((1, 1, -2, -2, -2, 3)) == "g1^2 g2^-3 g3"
    g = env_presentation(trivial(1), 2)
    assert "rel g1^2" in format_gpres(g)


def test_gpres_errors():
    with pytest.raises(MalformedInputError) as e:
        parse_gpres("gpres 1\ngens 2\nrel g1 g3\n")
    assert (e.value.line, e.value.column) == (3, 8)
    with pytest.raises(MalformedInputError):
        parse_gpres("gpres 1\ngens 2\nrel\n")


def test_cocycle_fixtures():
    s = parse_cocycle(fixture("lambda_z5.cocycle"))
    assert s.base == ("takasaki", 3) and s.fiber == ("Z/m", 5)
    assert s.affine == {"t": Fraction(2), "kappa": Fraction(0)}
    s = parse_cocycle(fixture("circle_ext.cocycle"))
    assert s.base == ("circle", Fraction(1, 2)) and s.base_cyclic == "formula"
    s = parse_cocycle(fixture("sign_z4.cocycle"))
    assert s.action == (1, -1, 1, -1) and s.base_order == (0, 1, 2, 3)
    s = parse_cocycle(fixture("dihedral_fiber.cocycle"))
    assert s.fiber == ("set", 3) and (1, 1) in s.alpha


def test_cocycle_kappa_table():
    s = parse_cocycle("cocycle 1\nbase trivial 2\nfiber Q\naffine t=2 kappa=table\nkappa: 0 0\nkappa: 0 0\n")
    assert s.affine["kappa"] == ((0, 0), (0, 0))


@pytest.mark.parametrize("text", [
    "cocycle 1\nfiber Q\naffine t=2\n",
    "cocycle 1\nbase trivial 2\naffine t=2\n",
    "cocycle 1\nbase trivial 2\nfiber Q\n",
    "cocycle 1\nbase moon 2\nfiber Q\naffine t=2\n",
    "cocycle 1\nbase trivial 2\nfiber R\naffine t=2\n",
    "cocycle 1\nbase trivial 2\nfiber Q\naffine t=x\n",
    "cocycle 1\nbase trivial 2\nfiber Q\naffine t=2\ntheta one\n",
    "cocycle 1\nbase trivial 2\nbase trivial 2\nfiber Q\naffine t=2\n",
])
def test_cocycle_errors(text):
    with pytest.raises(MalformedInputError):
        parse_cocycle(text)
