"""Quandles on infinite carriers, quandle actions and the recursion lemma.

A :class:`LazyQuandle` is an operation rule plus a seeded sampler; all
arithmetic is exact (``fractions.Fraction``), never floating point.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .errors import ConstructionError, PreconditionError
from .ordering import CheckResult, CircularOrderFn, SampleSpec, _sample_tuple, secret_value
from .quandle import FiniteQuandle


@dataclass(frozen=True)
class LazyQuandle:
    name: str
    op: Callable[[Any, Any], Any]
    sampler: Callable[[random.Random], Any]
    dual: Callable[[Any, Any], Any] | None = None
    encode: Callable[[Any], str] = str
    decode: Callable[[str], Any] | None = None
    grid: tuple = field(default=(), compare=False)

    def sample(self, rng):
        return self.sampler(rng)


def random_fraction(rng, max_den=1000, lo=0, hi=1):
    """A rational in ``[lo, hi)`` with a random denominator."""
    den = rng.randint(1, max_den)
    span = (hi - lo) * den
    return Fraction(lo * den + rng.randrange(span), den)


def check_lazy_axioms(q: LazyQuandle, samples: SampleSpec | None = None):
    """Sampled check of idempotency, right self-distributivity and, when a
    dual rule is present, right cancellation."""
    samples = samples or SampleSpec()
    rng = random.Random(samples.seed)
    op = q.op
    count = 0
    for _ in range(samples.triples):
        x, y, z = _sample_tuple(rng, q, 3)
        count += 1
        if op(x, x) != x:
            return CheckResult(False, (x,), "axiom 1", count)
        if op(op(x, y), z) != op(op(x, z), op(y, z)):
            return CheckResult(False, (x, y, z), "axiom 3", count)
        if q.dual is not None:
            if q.dual(op(x, y), y) != x or op(q.dual(x, y), y) != x:
                return CheckResult(False, (x, y), "dual does not invert op", count)
    return CheckResult(True, None, "", count)


# -- the circle quandle -----------------------------------------------------

def circle_quandle(t):
    """The circle with ``l * m = t l + (1 - t) m`` and its circular order.

    Points are rationals in ``[0, 1)`` measured in full turns.  The
    circular rule compares representatives exactly as the three-case
    formula does: ``+1`` for ``a<b<c``, ``b<c<a`` or ``c<a<b`` and so on.
    """
    t = Fraction(t)
    if not 0 < t < 1:
        raise ConstructionError("circle quandle needs 0 < t < 1")
    one_minus = 1 - t

    def op(lam, mu):
        return t * lam + one_minus * mu

    def rule(a, b, c):
        return secret_value(lambda u, v: u < v, a, b, c)

    q = LazyQuandle(
        name=f"circle(t={t})",
        op=op,
        sampler=random_fraction,
        encode=str,
        decode=Fraction,
        grid=tuple(Fraction(k, 12) for k in range(12)),
    )
    return q, CircularOrderFn(rule, "circle formula")


# -- quandle actions --------------------------------------------------------

@dataclass(frozen=True)
class QuandleAction:
    """``apply(p, point)`` evaluates the automorphism assigned to ``p``."""

    source: Any
    apply: Callable[[Any, Any], Any]
    faithful: bool
    faithfulness_witness: tuple | None = None

    def source_elements(self, samples: SampleSpec | None = None):
        if isinstance(self.source, FiniteQuandle):
            return list(range(self.source.size))
        samples = samples or SampleSpec()
        rng = random.Random(samples.seed)
        pts = list(getattr(self.source, "grid", ()))
        pts += [self.source.sample(rng) for _ in range(min(samples.triples, 500))]
        return list(dict.fromkeys(pts))

    def stabilizer(self, point, samples: SampleSpec | None = None):
        """Colliding pairs ``(p, q)`` with ``p != q`` and equal images of
        ``point``; the stabilizer set is the union of their members."""
        seen = {}
        pairs = []
        for p in self.source_elements(samples):
            img = self.apply(p, point)
            if img in seen:
                pairs.append((seen[img], p))
            else:
                seen[img] = p
        return pairs

    def homomorphism_violation(self, points, samples: SampleSpec | None = None):
        """First ``(x, y, point)`` where rho(x*y) rho(y) != rho(y) rho(x)."""
        elems = self.source_elements(samples)
        op = self.source.op
        for x, y in itertools.product(elems[:40], repeat=2):
            for pt in points:
                if self.apply(op(x, y), self.apply(y, pt)) != self.apply(y, self.apply(x, pt)):
                    return (x, y, pt)
        return None


def rho_action(q, samples: SampleSpec | None = None):
    """The action of ``q`` on itself by right translations."""
    op = q.op

    def apply(p, x):
        return op(x, p)

    if isinstance(q, FiniteQuandle):
        cols = {}
        witness = None
        for p in range(q.size):
            col = tuple(q.table[x][p] for x in range(q.size))
            if col in cols and witness is None:
                witness = (cols[col], p)
            cols.setdefault(col, p)
        return QuandleAction(q, apply, witness is None, witness)
    samples = samples or SampleSpec()
    rng = random.Random(samples.seed)
    points = list(q.grid) + [q.sample(rng) for _ in range(20)]
    elems = list(q.grid) + [q.sample(rng) for _ in range(200)]
    elems = list(dict.fromkeys(elems))
    witness = None
    for p, r in itertools.combinations(elems, 2):
        if all(apply(p, x) == apply(r, x) for x in points):
            witness = (p, r)
            break
    return QuandleAction(q, apply, witness is None, witness)


def circular_order_from_action(action: QuandleAction, base, d, samples: SampleSpec | None = None,
                               literal=False):
    """Pull a circular order ``d`` on the target back along ``p -> rho(p)(base)``.

    Refuses when two source elements send ``base`` to the same point.  With
    ``literal=True`` the negative case compares ``d`` on the swapped
    triple against ``-1`` as printed; that case can never fire once the
    positive case has been tested, so the result is not a circular order
    (kept for demonstration).
    """
    collisions = action.stabilizer(base, samples)
    if collisions:
        p, r = collisions[0]
        raise PreconditionError(f"stabilizer of {base!r} is nonempty: rho({p!r}) and rho({r!r}) agree there")
    at = action.apply

    if literal:
        def rule(x, y, z):
            if d(at(x, base), at(y, base), at(z, base)) == 1:
                return 1
            if d(at(x, base), at(z, base), at(y, base)) == -1:
                return -1
            return 0
    else:
        def rule(x, y, z):
            return d(at(x, base), at(y, base), at(z, base))

    return CircularOrderFn(rule, "pullback" + (" (literal)" if literal else ""))


# -- recursion lemma --------------------------------------------------------

@dataclass(frozen=True)
class LemmaReport:
    holds: bool
    values: tuple
    nontrivial_pair: bool
    returns_at: int | None
    contradiction: str | None

    def __bool__(self):
        return self.holds

    @property
    def constant(self):
        return self.values[0] if self.values and len(set(self.values)) == 1 else None


def verify_recursion_lemma(q, c, x, y, depth, side="right"):
    """Evaluate ``c(x, y, y_i)`` along ``y_i = R_x^i(y)`` (right) or
    ``L_x^i(y)`` (left) for ``i = 1..depth+1``.

    ``holds`` is true iff the values are constant and, when ``y_1 != y``,
    nonzero.  If the orbit comes back to ``y`` while ``y_1 != y``, the
    chain would have to be zero and nonzero at once; ``contradiction``
    then describes why no invariant ``c`` can exist.
    """
    if x == y:
        raise PreconditionError("x and y must be distinct")
    if side == "right":
        step = lambda v: q.op(v, x)  # noqa: E731
    elif side == "left":
        step = lambda v: q.op(x, v)  # noqa: E731
    else:
        raise ValueError("side must be 'right' or 'left'")
    chain = []
    v = y
    returns_at = None
    for i in range(1, depth + 2):
        v = step(v)
        chain.append(v)
        if returns_at is None and v == y:
            returns_at = i
    values = tuple(c(x, y, w) for w in chain)
    nontrivial = chain[0] != y
    constant = len(set(values)) == 1
    holds = constant and (values[0] != 0 or not nontrivial)
    contradiction = None
    if nontrivial and returns_at is not None:
        contradiction = (
            f"orbit of y under the translation by x returns to y at step {returns_at}: "
            f"c(x, y, y) = 0 while the first link c(x, y, {chain[0]!r}) must be nonzero"
        )
    return LemmaReport(holds, values, nontrivial, returns_at, contradiction)
