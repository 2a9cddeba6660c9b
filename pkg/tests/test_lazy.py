import random
from fractions import Fraction

from quandleorder.lazy import LazyQuandle, check_lazy_axioms, circle_quandle, random_fraction
from quandleorder.ordering import SampleSpec


def test_random_fraction_range_and_determinism():
    a = [random_fraction(random.Random(4), 50, -3, 3) for _ in range(3)]
    b = [random_fraction(random.Random(4), 50, -3, 3) for _ in range(3)]
    assert a == b
    rng = random.Random(1)
    for _ in range(500):
        v = random_fraction(rng, 30, -2, 5)
        assert isinstance(v, Fraction) and -2 <= v < 5 and v.denominator <= 30


def test_circle_stays_in_unit_interval():
    q, _ = circle_quandle(Fraction(2, 3))
    rng = random.Random(0)
    for _ in range(500):
        x, y = q.sample(rng), q.sample(rng)
        assert 0 <= q.op(x, y) < 1


def test_affine_line_is_a_quandle():
    t = Fraction(3)
    q = LazyQuandle(
        "affine line", lambda x, y: t * x + (1 - t) * y,
        lambda rng: random_fraction(rng, 20, -5, 5),
        dual=lambda x, y: (x - (1 - t) * y) / t,
    )
    assert check_lazy_axioms(q, SampleSpec(seed=2, triples=2000)).ok


def test_broken_rule_is_caught():
    q = LazyQuandle("bad", lambda x, y: x + y, lambda rng: random_fraction(rng, 10, -1, 1))
    res = check_lazy_axioms(q, SampleSpec(seed=0, triples=100))
    assert not res.ok and res.detail == "axiom 1"
    q = LazyQuandle("bad", lambda x, y: 2 * y - x, lambda rng: random_fraction(rng, 10, -1, 1),
                    dual=lambda x, y: x)
    assert check_lazy_axioms(q, SampleSpec(seed=0, triples=100)).detail.startswith("dual")


def test_sampling_is_seeded():
    q, _ = circle_quandle(Fraction(1, 2))
    xs = [q.sample(random.Random(9)) for _ in range(2)]
    assert xs[0] == xs[1]
