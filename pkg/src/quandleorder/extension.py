"""Quandle extensions ``S x_alpha Q`` and orderings on them.

``(s, x) * (t, y) = (alpha_{x,y}(s, t), x * y)``.  A dynamical cocycle is
stored as explicit tables over a finite fiber; an affine cocycle as scalar
data ``eta, tau, kappa`` with ``alpha_{x,y}(a, b) = eta a + tau b + kappa``.
Every endomorphism of Z/m, Z or Q is multiplication by a scalar, so the
module maps are kept as numbers and composition is multiplication.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .errors import CocycleError, HypothesisRefused, MalformedInputError, StructuralError
from .groups import FiniteGroupTable
from .lazy import LazyQuandle, check_lazy_axioms, random_fraction
from .ordering import (
    CheckResult,
    CircularOrderFn,
    SampleSpec,
    invariance_check,
    is_valid_circular,
    secret_value,
)
from .quandle import FiniteQuandle, conj, validate_quandle


# -- fibers -----------------------------------------------------------------

@dataclass(frozen=True)
class ZMod:
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise MalformedInputError("Z/m needs m >= 1")

    finite = True
    ordered = False

    @property
    def size(self):
        return self.m

    def elements(self):
        return range(self.m)

    def norm(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise StructuralError(f"{v} is not an integer scalar")
            v = v.numerator
        return v % self.m

    def is_unit(self, s):
        return math.gcd(self.norm(s), self.m) == 1

    def __str__(self):
        return f"Z/{self.m}"


@dataclass(frozen=True)
class Integers:
    finite = False
    ordered = True

    def sample(self, rng):
        return rng.randint(-50, 50)

    def norm(self, v):
        if isinstance(v, Fraction):
            if v.denominator != 1:
                raise StructuralError(f"{v} is not an integer scalar")
            return v.numerator
        return int(v)

    def is_unit(self, s):
        return s in (1, -1)

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class Rationals:
    finite = False
    ordered = True

    def sample(self, rng):
        # small pool now and then so fiber ties show up
        if rng.random() < 0.25:
            return Fraction(rng.randint(-3, 3))
        return random_fraction(rng, 60, -10, 10)

    def norm(self, v):
        return v if isinstance(v, Fraction) else Fraction(v)

    def is_unit(self, s):
        return s != 0

    def __str__(self):
        return "Q"


def _fiber_points(fiber, samples: SampleSpec, count=None):
    if fiber.finite:
        return list(fiber.elements())
    rng = random.Random(samples.seed)
    return [fiber.sample(rng) for _ in range(count or min(samples.quadruples, 1000))]


def _base_points(base, rng, k):
    if isinstance(base, FiniteQuandle):
        return list(range(base.size))
    pts = list(getattr(base, "grid", ()))[:k]
    pts += [base.sample(rng) for _ in range(max(0, k - len(pts)))]
    return list(dict.fromkeys(pts))


# -- dynamical cocycles -----------------------------------------------------

@dataclass(frozen=True)
class DynamicalCocycle:
    """``alpha[x][y][s][t]`` over a finite base and fiber ``0..S-1``."""

    base: FiniteQuandle
    fiber_size: int
    alpha: tuple

    def __post_init__(self):
        n, m = self.base.size, self.fiber_size
        try:
            ok = len(self.alpha) == n and all(
                len(self.alpha[x]) == n
                and all(
                    len(self.alpha[x][y]) == m
                    and all(
                        len(self.alpha[x][y][s]) == m
                        and all(0 <= v < m for v in self.alpha[x][y][s])
                        for s in range(m)
                    )
                    for y in range(n)
                )
                for x in range(n)
            )
        except TypeError:
            ok = False
        if not ok:
            raise MalformedInputError(f"alpha must be a {n}x{n} array of {m}x{m} tables over 0..{m - 1}")

    @classmethod
    def from_rule(cls, base, fiber_size, rule):
        n, m = base.size, fiber_size
        alpha = tuple(
            tuple(
                tuple(tuple(rule(x, y, s, t) for t in range(m)) for s in range(m))
                for y in range(n)
            )
            for x in range(n)
        )
        return cls(base, fiber_size, alpha)

    def __call__(self, x, y, s, t):
        return self.alpha[x][y][s][t]


def validate_dynamical(dc: DynamicalCocycle):
    """Exhaustive check of the three conditions making ``S x_alpha Q`` a
    quandle; the violation is ``(condition, tuple)``."""
    q, a = dc.base, dc.alpha
    n, m = q.size, dc.fiber_size
    t = q.table
    count = 0
    for x in range(n):
        for s in range(m):
            count += 1
            if a[x][x][s][s] != s:
                return CheckResult(False, (1, (x, s)), f"alpha_{{{x},{x}}}({s},{s}) = {a[x][x][s][s]}", count)
    for x in range(n):
        for y in range(n):
            for s in range(m):
                count += 1
                column = [a[x][y][r][s] for r in range(m)]
                if len(set(column)) != m:
                    return CheckResult(False, (2, (x, y, s)), f"alpha_{{{x},{y}}}(-, {s}) is not a bijection", count)
    for x, y, z in itertools.product(range(n), repeat=3):
        xy, xz, yz = t[x][y], t[x][z], t[y][z]
        for r, s, u in itertools.product(range(m), repeat=3):
            count += 1
            lhs = a[xy][z][a[x][y][r][s]][u]
            rhs = a[xz][yz][a[x][z][r][u]][a[y][z][s][u]]
            if lhs != rhs:
                return CheckResult(
                    False, (3, (x, y, z, r, s, u)),
                    f"condition (3) at x,y,z={x},{y},{z} r,s,t={r},{s},{u}: {lhs} != {rhs}", count,
                )
    return CheckResult(True, None, "", count)


# -- affine cocycles --------------------------------------------------------

def _constant(v):
    return lambda x, y: v


@dataclass(frozen=True)
class AffineCocycle:
    """Module data over ``base``: scalars ``eta(x, y)``, ``tau(x, y)`` and
    fiber elements ``kappa(x, y)``.

    ``t`` is set for the uniform family ``eta = t, tau = 1 - t``.
    ``tables`` keeps the ``(eta, tau, kappa)`` arrays when built from them.
    """

    base: Any
    fiber: Any
    eta: Callable[[Any, Any], Any]
    tau: Callable[[Any, Any], Any]
    kappa: Callable[[Any, Any], Any]
    t: Fraction | None = None
    tables: tuple | None = field(default=None, compare=False)

    @classmethod
    def uniform(cls, base, fiber, t, kappa=None):
        t = Fraction(t)
        if isinstance(kappa, (list, tuple)):
            table = kappa
            kfun = lambda x, y: table[x][y]  # noqa: E731
        elif callable(kappa):
            kfun = kappa
        else:
            kfun = _constant(fiber.norm(kappa or 0))
        if fiber.finite or isinstance(fiber, Integers):
            eta, tau = fiber.norm(t), fiber.norm(1 - t)
        else:
            eta, tau = t, 1 - t
        return cls(base, fiber, _constant(eta), _constant(tau), kfun, t)

    @classmethod
    def from_tables(cls, base, fiber, eta, tau, kappa=None):
        n = base.size
        if kappa is None:
            kappa = [[0] * n for _ in range(n)]
        for name, tab in (("eta", eta), ("tau", tau), ("kappa", kappa)):
            if len(tab) != n or any(len(row) != n for row in tab):
                raise MalformedInputError(f"{name} must be a {n}x{n} table")
        e = tuple(tuple(fiber.norm(v) for v in row) for row in eta)
        u = tuple(tuple(fiber.norm(v) for v in row) for row in tau)
        k = tuple(tuple(fiber.norm(v) for v in row) for row in kappa)
        return cls(
            base, fiber,
            lambda x, y: e[x][y], lambda x, y: u[x][y], lambda x, y: k[x][y],
            None, (e, u, k),
        )

    def alpha(self, x, y, a, b):
        f = self.fiber
        return f.norm(self.eta(x, y) * a + self.tau(x, y) * b + self.kappa(x, y))

    def to_dynamical(self):
        if not (self.fiber.finite and isinstance(self.base, FiniteQuandle)):
            raise StructuralError("only finite fibers over finite bases have alpha tables")
        return DynamicalCocycle.from_rule(self.base, self.fiber.size, self.alpha)


def _base_triples(base, samples: SampleSpec):
    if isinstance(base, FiniteQuandle):
        return itertools.product(range(base.size), repeat=3)
    rng = random.Random(samples.seed + 1)
    return [tuple(base.sample(rng) for _ in range(3)) for _ in range(min(samples.triples, 2000))]


def validate_affine(m: AffineCocycle, samples: SampleSpec | None = None):
    """Check the four module equations.

    Raises :class:`StructuralError` when some ``eta`` is not invertible.
    Finite fibers are checked on every element, others on
    ``samples.quadruples`` sampled values (at most 1000; 50 over a lazy
    base, where the base triples are sampled too); a violation is ``("Eq k", (x, y, z), a)``.
    """
    samples = samples or SampleSpec()
    q, f = m.base, m.fiber
    op = q.op
    eta, tau = m.eta, m.tau
    rng = random.Random(samples.seed)
    for x in _base_points(q, rng, 12):
        for y in _base_points(q, rng, 12):
            if not f.is_unit(eta(x, y)):
                raise StructuralError(f"eta_{{{x},{y}}} = {eta(x, y)} is not an automorphism of {f}")
    points = _fiber_points(f, samples, None if isinstance(q, FiniteQuandle) else 50)
    n = f.norm
    count = 0
    for x, y, z in _base_triples(q, samples):
        xy, xz, yz = op(x, y), op(x, z), op(y, z)
        for a in points:
            count += 1
            checks = (
                ("Eq 1", n(eta(xy, z) * n(eta(x, y) * a)), n(eta(xz, yz) * n(eta(x, z) * a))),
                ("Eq 2", n(eta(xy, z) * n(tau(x, y) * a)), n(tau(xz, yz) * n(eta(y, z) * a))),
                ("Eq 3", n(tau(xy, z) * a),
                 n(eta(xz, yz) * n(tau(x, z) * a) + tau(xz, yz) * n(tau(y, z) * a))),
                ("Eq 4", n(tau(x, x) * a + eta(x, x) * a), n(a)),
            )
            for name, lhs, rhs in checks:
                if lhs != rhs:
                    return CheckResult(False, (name, (x, y, z), a), f"{name}: {lhs} != {rhs}", count)
    return CheckResult(True, None, "", count)


# -- building extensions ----------------------------------------------------

@dataclass(frozen=True)
class FiniteExtension:
    """Finite ``S x_alpha Q``; element ``(s, x)`` has index ``s * |Q| + x``."""

    quandle: FiniteQuandle
    fiber_size: int
    base_size: int

    def pair(self, i):
        return divmod(i, self.base_size)

    def index(self, s, x):
        return s * self.base_size + x


def _pair_str(p):
    return f"({p[0]},{p[1]})"


def build_extension(cocycle, validate=True, samples: SampleSpec | None = None):
    """The extension quandle of a validated cocycle.

    Finite fiber and base give a :class:`FiniteExtension`; anything else a
    :class:`LazyQuandle` on pairs ``(a, x)``.  An invalid cocycle raises
    :class:`CocycleError`.
    """
    samples = samples or SampleSpec()
    if isinstance(cocycle, DynamicalCocycle):
        dc = cocycle
    elif cocycle.fiber.finite and isinstance(cocycle.base, FiniteQuandle):
        if validate:
            res = validate_affine(cocycle, samples)
            if not res.ok:
                raise CocycleError(res.violation)
        dc = cocycle.to_dynamical()
    else:
        return _lazy_extension(cocycle, validate, samples)
    if validate:
        res = validate_dynamical(dc)
        if not res.ok:
            raise CocycleError(res.violation)
    n, m = dc.base.size, dc.fiber_size
    bt = dc.base.table
    table = [[0] * (n * m) for _ in range(n * m)]
    for s, x, u, y in itertools.product(range(m), range(n), range(m), range(n)):
        table[s * n + x][u * n + y] = dc.alpha[x][y][s][u] * n + bt[x][y]
    return FiniteExtension(validate_quandle(table), m, n)


def _lazy_extension(m: AffineCocycle, validate, samples):
    base, fiber = m.base, m.fiber
    if validate:
        res = validate_affine(m, samples)
        if not res.ok:
            raise CocycleError(res.violation)
    bop = base.op
    finite_base = isinstance(base, FiniteQuandle)

    if m.t is not None and isinstance(fiber, Rationals):
        # uniform family: constant scalars, skip the generic path
        e, u, kap = m.eta(None, None), m.tau(None, None), m.kappa

        def op(p, r):
            (a, x), (b, y) = p, r
            k = kap(x, y)
            v = e * a + u * b
            return (v + k if k else v, bop(x, y))
    else:
        def op(p, r):
            (a, x), (b, y) = p, r
            return (m.alpha(x, y, a, b), bop(x, y))

    def sampler(rng):
        x = rng.randrange(base.size) if finite_base else base.sample(rng)
        return (fiber.sample(rng), x)

    bdual = base.dual
    if bdual is None or fiber.finite:
        dual = None
    else:
        def dual(p, r):
            (u, w), (b, y) = p, r
            x = bdual(w, y)
            a = Fraction(u - m.tau(x, y) * b - m.kappa(x, y)) / m.eta(x, y)
            return (fiber.norm(a), x)

    grid = ()
    if not finite_base and getattr(base, "grid", ()):
        grid = tuple((Fraction(k), g) for k in (-1, 0, 1) for g in base.grid[::3])
    q = LazyQuandle(
        name=f"{fiber} x_alpha {getattr(base, 'name', 'Q')}",
        op=op, sampler=sampler, dual=dual, encode=_pair_str, grid=grid,
    )
    if validate:
        res = check_lazy_axioms(q, SampleSpec(samples.seed, min(samples.triples, 2000)))
        if not res.ok:
            raise CocycleError(res.violation)
    return q


def projection_violation(ext, base, samples: SampleSpec | None = None):
    """First pair where ``(s, x) -> x`` fails to be a homomorphism."""
    if isinstance(ext, FiniteExtension):
        n = ext.base_size
        q = ext.quandle
        for i, j in itertools.product(range(q.size), repeat=2):
            if q.table[i][j] % n != base.table[i % n][j % n]:
                return (i, j)
        return None
    samples = samples or SampleSpec()
    rng = random.Random(samples.seed)
    for _ in range(samples.triples):
        p, r = ext.sample(rng), ext.sample(rng)
        if ext.op(p, r)[1] != base.op(p[1], r[1]):
            return (p, r)
    return None


# -- lexicographic orders ---------------------------------------------------

@dataclass(frozen=True)
class LexOrder:
    """``(r, x) < (s, y)`` iff ``r <' s``, or ``r == s`` and ``x < y``."""

    fiber_less: Callable[[Any, Any], bool]
    base_less: Callable[[Any, Any], bool]

    def less(self, p, r):
        (a, x), (b, y) = p, r
        if self.fiber_less(a, b):
            return True
        return a == b and self.base_less(x, y)


def _natural(a, b):
    return a < b


def lex_order(fiber_order=None, base_order=None):
    """Lexicographic order; either factor may be an object with ``less``,
    a two-argument callable or ``None`` for the natural order."""
    def as_less(o):
        if o is None:
            return _natural
        return o.less if hasattr(o, "less") else o

    return LexOrder(as_less(fiber_order), as_less(base_order))


@dataclass(frozen=True)
class ExtensionOrder:
    order: Any
    quandle: Any
    invariance: CheckResult
    side: str
    gated: bool
    refused: HypothesisRefused | None = None

    @property
    def ok(self):
        return self.invariance.ok and self.refused is None


def _kappa_hypothesis(kappa, base, side):
    """Right side needs ``kappa(x, z) == kappa(y, z)``, left side
    ``kappa(z, x) == kappa(z, y)``."""
    if kappa is None:
        return None
    n = base.size
    for x, y, z in itertools.product(range(n), repeat=3):
        if side == "right" and kappa(x, z) != kappa(y, z):
            return f"kappa({x},{z}) != kappa({y},{z})"
        if side == "left" and kappa(z, x) != kappa(z, y):
            return f"kappa({z},{x}) != kappa({z},{y})"
    return None


def _kappa_fn(kappa):
    if kappa is None or callable(kappa):
        return kappa
    if isinstance(kappa, (list, tuple)):
        return lambda x, y: kappa[x][y]
    return _constant(Fraction(kappa))


def _build_samples(samples):
    # the cocycle check before an order check needs far fewer points
    return SampleSpec(samples.seed, min(samples.triples, 2000), min(samples.quadruples, 200))


def extension_right_order(t, base, order, kappa=None, side="right", gate=True,
                          samples: SampleSpec | None = None):
    """Lexicographic order on ``Q x_alpha Q_base`` for ``alpha = t a + (1-t) b + kappa``.

    With ``gate`` on, the hypotheses are checked first and a failure
    raises :class:`HypothesisRefused`: ``t > 0`` and kappa constant in its
    first argument for the right side, ``t < 1`` and kappa constant in
    its second argument for the left side, and ``order`` invariant on the
    base for that side.  Without the gate the invariance check runs anyway
    and its violation is reported.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    samples = samples or SampleSpec(triples=100_000)
    t = Fraction(t)
    if t == 0:
        raise StructuralError("t must be nonzero")
    kfun = _kappa_fn(kappa)
    refusal = None
    if side == "right" and not t > 0:
        refusal = HypothesisRefused("t > 0", f"t = {t}")
    elif side == "left" and not t < 1:
        refusal = HypothesisRefused("t < 1", f"t = {t}")
    else:
        bad = _kappa_hypothesis(kfun, base, side) if isinstance(base, FiniteQuandle) else None
        if bad:
            refusal = HypothesisRefused(f"kappa constant in its {'first' if side == 'right' else 'second'} argument", bad)
        else:
            inv = invariance_check(base, order, side, samples)
            if not inv.ok:
                refusal = HypothesisRefused(f"base order is {side}-invariant", inv.detail)
    if refusal is not None and gate:
        raise refusal
    cocycle = AffineCocycle.uniform(base, Rationals(), t, kfun)
    ext = build_extension(cocycle, validate=True, samples=_build_samples(samples))
    lex = lex_order(None, order)
    inv = invariance_check(ext, lex, side, samples)
    return ExtensionOrder(lex, ext, inv, side, gate, refusal)


def extension_circular_rule(d, fiber_less=_natural):
    """The circular order on pairs built from ``d`` on the base.

    Distinct bases: ``d``.  Exactly two equal bases: rotate the triple so
    that pair comes first; ``+1`` if its fibers increase, else ``-1``.
    Equal bases: the circular order induced by the fiber order.
    """
    def rule(p1, p2, p3):
        if p1 == p2 or p2 == p3 or p1 == p3:
            return 0
        (a, x), (b, y), (r, z) = p1, p2, p3
        if x != y and y != z and x != z:
            return d(x, y, z)
        if x == y == z:
            return secret_value(fiber_less, a, b, r)
        if x == y:
            u, v = a, b
        elif y == z:
            u, v = b, r
        else:
            u, v = r, a
        return 1 if fiber_less(u, v) else -1

    return CircularOrderFn(rule, "extension circular order")


@dataclass(frozen=True)
class ExtensionCircular:
    order: CircularOrderFn
    quandle: Any
    validity: CheckResult
    invariance: CheckResult
    side: str

    @property
    def ok(self):
        return self.validity.ok and self.invariance.ok


def extension_circular_order(t, base, d, side="right", gate=True, samples: SampleSpec | None = None):
    """Circular order on ``Q x_alpha base`` from a circular order ``d`` on
    the base, checked for validity and invariance after construction."""
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    samples = samples or SampleSpec()
    t = Fraction(t)
    if t == 0:
        raise StructuralError("t must be nonzero")
    if gate:
        if side == "right" and not t > 0:
            raise HypothesisRefused("t > 0", f"t = {t}")
        if side == "left" and not t < 1:
            raise HypothesisRefused("t < 1", f"t = {t}")
        inv = invariance_check(base, d, side, samples)
        if not inv.ok:
            raise HypothesisRefused(f"d is {side}-invariant on the base", inv.detail)
    ext = build_extension(AffineCocycle.uniform(base, Rationals(), t), samples=_build_samples(samples))
    c = extension_circular_rule(d)
    validity = is_valid_circular(c, ext, samples)
    invariance = invariance_check(ext, c, side, samples)
    return ExtensionCircular(c, ext, validity, invariance, side)


# -- order preservation -----------------------------------------------------

@dataclass(frozen=True)
class PreservationReport:
    slices_monotone: bool
    slice_witness: tuple | None
    joint_hypothesis: bool
    joint_witness: tuple | None
    lex_invariant: bool
    lex_witness: tuple | None

    @property
    def lemma_consistent(self):
        # invariant lex order forces monotone slices
        return not (self.lex_invariant and not self.slices_monotone)

    @property
    def proposition_consistent(self):
        # the joint hypothesis forces an invariant lex order
        return not (self.joint_hypothesis and not self.lex_invariant)

    def failed_direction(self):
        if not self.lemma_consistent:
            return "lemma"
        if not self.proposition_consistent:
            return "proposition"
        return None


def order_preservation_check(cocycle, base_order=None, fiber_less=_natural,
                             samples: SampleSpec | None = None):
    """Compare the slice maps ``alpha_{x,y}(-, s)``, the joint map
    ``(r, x) -> alpha_{x,y}(r, s)`` and right invariance of the lex order.

    The joint hypothesis is read as: ``(r, x) < (r', x')`` gives
    ``alpha_{x,y}(r, s) <' alpha_{x',y}(r', s)``, with equality allowed
    only when ``r == r'`` (the base order then decides, which is what the
    conclusion needs).
    """
    samples = samples or SampleSpec()
    base = cocycle.base
    n = base.size
    blt = (base_order.less if base_order is not None else _natural)
    if isinstance(cocycle, DynamicalCocycle):
        alpha = cocycle.__call__
        fibers = list(range(cocycle.fiber_size))
        pairs_r = list(itertools.permutations(fibers, 2)) + [(r, r) for r in fibers]
    else:
        alpha = lambda x, y, a, b: cocycle.alpha(x, y, a, b)  # noqa: E731
        fibers = _fiber_points(cocycle.fiber, samples, 40)
        pairs_r = list(itertools.product(fibers[:25], repeat=2))
    slices, slice_w = True, None
    joint, joint_w = True, None
    for y in range(n):
        for s in fibers[:25]:
            for r1, r2 in pairs_r:
                if r1 != r2 and fiber_less(r1, r2):
                    for x in range(n):
                        if slices and not fiber_less(alpha(x, y, r1, s), alpha(x, y, r2, s)):
                            slices, slice_w = False, (x, y, s, r1, r2)
                for x1, x2 in itertools.product(range(n), repeat=2):
                    if not (fiber_less(r1, r2) or (r1 == r2 and blt(x1, x2))):
                        continue
                    u, v = alpha(x1, y, r1, s), alpha(x2, y, r2, s)
                    if joint and not (fiber_less(u, v) or (u == v and r1 == r2)):
                        joint, joint_w = False, (x1, x2, y, s, r1, r2)
    if isinstance(cocycle, DynamicalCocycle):
        ext = build_extension(cocycle).quandle
        lex = _FiniteLex(cocycle.fiber_size, n, fiber_less, blt)
        inv = invariance_check(ext, lex, "right")
    else:
        ext = build_extension(cocycle, samples=samples)
        inv = invariance_check(ext, lex_order(fiber_less, blt), "right", samples)
    return PreservationReport(slices, slice_w, joint, joint_w, inv.ok, inv.violation)


@dataclass(frozen=True)
class _FiniteLex:
    m: int
    n: int
    fiber_less: Callable
    base_less: Callable

    def less(self, i, j):
        (a, x), (b, y) = divmod(i, self.n), divmod(j, self.n)
        return self.fiber_less(a, b) or (a == b and self.base_less(x, y))


# -- group extensions -------------------------------------------------------

@dataclass(frozen=True)
class GroupCocycleData:
    """A finite group ``K`` acting on ``A`` by scalars, with 2-cocycle data.

    ``action[g]`` is the scalar by which ``g`` acts; ``theta(g, h)`` is an
    element of ``A`` (a table or a callable; ``None`` means zero).
    """

    group: FiniteGroupTable
    fiber: Any
    action: tuple
    theta: Any = None

    def theta_value(self, g, h):
        if self.theta is None:
            return self.fiber.norm(0)
        if callable(self.theta):
            return self.fiber.norm(self.theta(g, h))
        return self.fiber.norm(self.theta[g][h])

    def action_violation(self):
        g = self.group
        f = self.fiber
        if len(self.action) != g.size:
            return f"action needs {g.size} scalars, got {len(self.action)}"
        for a in range(g.size):
            if not f.is_unit(self.action[a]):
                return f"element {a} acts by {self.action[a]}, not an automorphism"
            for b in range(g.size):
                if f.norm(self.action[g.mul[a][b]]) != f.norm(self.action[a] * self.action[b]):
                    return f"action is not a homomorphism at ({a}, {b})"
        return None


def group_to_quandle_cocycle(data: GroupCocycleData, samples: SampleSpec | None = None):
    """The affine cocycle over Conj(K) describing the group extension:
    ``eta_{x,y} = y``, ``tau_{x,y} = 1 - (x*y)`` and
    ``kappa_{x,y} = theta(y, x) - (yx) theta(y^-1, y) + theta(yx, y^-1)``."""
    bad = data.action_violation()
    if bad:
        raise MalformedInputError(bad)
    g, f = data.group, data.fiber
    q = conj(g)
    act = [f.norm(v) for v in data.action]
    th = data.theta_value
    n = g.size
    eta = [[act[y] for y in range(n)] for x in range(n)]
    tau = [[f.norm(1 - act[q.table[x][y]]) for y in range(n)] for x in range(n)]
    kappa = []
    for x in range(n):
        row = []
        for y in range(n):
            yx = g.mul[y][x]
            row.append(f.norm(th(y, x) - act[yx] * th(g.inv[y], y) + th(yx, g.inv[y])))
        kappa.append(row)
    m = AffineCocycle.from_tables(q, f, eta, tau, kappa)
    res = validate_affine(m, samples)
    if not res.ok:
        raise CocycleError(res.violation)
    return m


@dataclass(frozen=True)
class HypothesisAgreement:
    samples: int
    agreements: int
    hypothesis_holds: bool
    first_disagreement: tuple | None
    note: str = ""

    @property
    def agree(self):
        return self.agreements == self.samples


def _sample_ordered_pair(rng, fiber, n, lex):
    while True:
        a = fiber.sample(rng)
        b = a if rng.random() < 0.3 else fiber.sample(rng)
        x, y = rng.randrange(n), rng.randrange(n)
        p, r = (a, x), (b, y)
        if p == r:
            continue
        return (p, r) if lex.less(p, r) else (r, p)


def proplo2_check(data: GroupCocycleData, cocycle: AffineCocycle, base_order=None,
                  samples: SampleSpec | None = None):
    """Evaluate ``z(a-b) + (y*z)c - (x*z)c`` on sampled ``(a,x) < (b,y)``,
    ``c``, ``z`` and compare with what the lex order actually does.

    The expression is the first fiber of ``(a,x)*(c,z)`` minus that of
    ``(b,y)*(c,z)`` (kappa constant in its first argument), so a negative
    value predicts the images stay in order, a positive one predicts a
    violation and zero leaves the decision to the base order.
    """
    samples = samples or SampleSpec()
    rng = random.Random(samples.seed)
    q, f = cocycle.base, data.fiber
    n = q.size
    act = data.action
    blt = base_order.less if base_order is not None else _natural
    lex = lex_order(None, blt)
    ext = build_extension(cocycle, samples=samples)
    agree, holds, first = 0, True, None
    for _ in range(samples.triples):
        (a, x), (b, y) = _sample_ordered_pair(rng, f, n, lex)
        c, z = f.sample(rng), rng.randrange(n)
        value = act[z] * (a - b) + act[q.table[y][z]] * c - act[q.table[x][z]] * c
        if value < 0:
            predicted = True
        elif value > 0:
            predicted = False
            holds = False
        else:
            holds = False
            predicted = blt(q.table[x][z], q.table[y][z])
        observed = lex.less(ext.op((a, x), (c, z)), ext.op((b, y), (c, z)))
        if predicted == observed:
            agree += 1
        elif first is None:
            first = ((a, x), (b, y), (c, z), value)
    return HypothesisAgreement(samples.triples, agree, holds, first)


def proplo3_check(data: GroupCocycleData, cocycle: AffineCocycle, base_order=None,
                  samples: SampleSpec | None = None):
    """Evaluate ``a - b + (z*y)b - (z*x)a`` exactly as printed, against
    left invariance of the lex order.  Agreement is reported, not assumed."""
    samples = samples or SampleSpec()
    rng = random.Random(samples.seed)
    q, f = cocycle.base, data.fiber
    n = q.size
    act = data.action
    blt = base_order.less if base_order is not None else _natural
    lex = lex_order(None, blt)
    ext = build_extension(cocycle, samples=samples)
    agree, holds, first = 0, True, None
    for _ in range(samples.triples):
        (a, x), (b, y) = _sample_ordered_pair(rng, f, n, lex)
        c, z = f.sample(rng), rng.randrange(n)
        value = a - b + act[q.table[z][y]] * b - act[q.table[z][x]] * a
        predicted = value < 0
        if not predicted:
            holds = False
        observed = lex.less(ext.op((c, z), (a, x)), ext.op((c, z), (b, y)))
        if predicted == observed:
            agree += 1
        elif first is None:
            first = ((a, x), (b, y), (c, z), value)
    return HypothesisAgreement(samples.triples, agree, holds, first, "literal interpretation")
