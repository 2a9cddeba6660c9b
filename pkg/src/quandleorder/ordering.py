"""Total and circular orderings and the checks run against them.

Finite carriers are checked exhaustively.  Lazy carriers (anything with a
``sample(rng)`` method, see :mod:`quandleorder.lazy`) are checked on a
deterministic seeded sample described by :class:`SampleSpec`.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import MalformedInputError


@dataclass(frozen=True)
class SampleSpec:
    seed: int = 0
    triples: int = 10_000
    quadruples: int = 1_000
    grid: tuple = ()


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    violation: tuple | None = None
    detail: str = ""
    checked: int = 0

    def __bool__(self):
        return self.ok


# -- witnesses --------------------------------------------------------------

@dataclass(frozen=True)
class TotalOrder:
    """``rank[x]`` is the position of ``x``; smaller rank means smaller."""

    rank: tuple

    def __post_init__(self):
        if sorted(self.rank) != list(range(len(self.rank))):
            raise MalformedInputError("rank must be a permutation of 0..N-1")

    @classmethod
    def from_sequence(cls, seq):
        rank = [0] * len(seq)
        for i, x in enumerate(seq):
            rank[x] = i
        return cls(tuple(rank))

    @property
    def size(self):
        return len(self.rank)

    def sequence(self):
        return tuple(sorted(range(len(self.rank)), key=self.rank.__getitem__))

    def less(self, a, b):
        return self.rank[a] < self.rank[b]


@dataclass(frozen=True)
class KeyOrder:
    """Strict order on a lazy carrier, compared through ``key``."""

    key: object
    name: str = "natural"

    def less(self, a, b):
        return self.key(a) < self.key(b)


def natural_order():
    return KeyOrder(lambda v: v)


def secret_value(less, a, b, c):
    """The circular order induced by a strict total order ``less``."""
    if (less(a, b) and less(b, c)) or (less(b, c) and less(c, a)) or (less(c, a) and less(a, b)):
        return 1
    if (less(a, c) and less(c, b)) or (less(c, b) and less(b, a)) or (less(b, a) and less(a, c)):
        return -1
    return 0


@dataclass(frozen=True)
class CyclicOrder:
    """A circular ordering of ``0..N-1`` given by a cyclic arrangement.

    The arrangement is rotated so it starts at element 0.
    """

    arrangement: tuple

    def __post_init__(self):
        arr = tuple(self.arrangement)
        if sorted(arr) != list(range(len(arr))):
            raise MalformedInputError("arrangement must list every element exactly once")
        if arr:
            k = arr.index(0)
            arr = arr[k:] + arr[:k]
        object.__setattr__(self, "arrangement", arr)
        pos = [0] * len(arr)
        for i, x in enumerate(arr):
            pos[x] = i
        object.__setattr__(self, "_pos", tuple(pos))

    @property
    def size(self):
        return len(self.arrangement)

    def __call__(self, x, y, z):
        if x == y or y == z or x == z:
            return 0
        n = len(self.arrangement)
        p = self._pos
        dy = (p[y] - p[x]) % n
        dz = (p[z] - p[x]) % n
        return 1 if dy < dz else -1


@dataclass(frozen=True)
class CircularOrderFn:
    """A circular ordering given by an evaluation rule on a lazy carrier."""

    rule: object
    name: str = ""

    def __call__(self, x, y, z):
        return self.rule(x, y, z)


def secret_circular(order):
    """The arrangement listing elements in increasing order."""
    return CyclicOrder(order.sequence())


def secret_circular_fn(order, name="secret"):
    return CircularOrderFn(lambda a, b, c: secret_value(order.less, a, b, c), name)


# -- carriers ---------------------------------------------------------------

def _finite_size(carrier):
    if isinstance(carrier, int):
        return carrier
    size = getattr(carrier, "size", None)
    if isinstance(size, int) and not hasattr(carrier, "sample"):
        return size
    return None


def _sample_tuple(rng, carrier, k):
    """A k-tuple from the carrier; positions sometimes repeat earlier ones
    so degenerate and tied cases are exercised."""
    out = []
    for i in range(k):
        if i and rng.random() < 0.2:
            out.append(out[rng.randrange(i)])
        else:
            out.append(carrier.sample(rng))
    return tuple(out)


def _distinct(*xs):
    return len(set(xs)) == len(xs)


def is_valid_circular(c, carrier, samples: SampleSpec | None = None):
    """Check the two circular ordering axioms.

    Axiom (1): c vanishes exactly on degenerate triples.  Axiom (2): the
    four-term cocycle identity.  Finite carriers are checked on all
    triples and quadruples; lazy ones on seeded samples plus every
    quadruple of ``samples.grid``.
    """
    n = _finite_size(carrier)
    if n is not None:
        triples = itertools.product(range(n), repeat=3)
        quads = itertools.product(range(n), repeat=4)
    else:
        samples = samples or SampleSpec()
        rng = random.Random(samples.seed)
        triples = [_sample_tuple(rng, carrier, 3) for _ in range(samples.triples)]
        quads = [_sample_tuple(rng, carrier, 4) for _ in range(samples.quadruples)]
        if samples.grid:
            quads = itertools.chain(quads, itertools.product(samples.grid, repeat=4))
            triples = itertools.chain(triples, itertools.product(samples.grid, repeat=3))
    count = 0
    for t in triples:
        count += 1
        v = c(*t)
        if v not in (-1, 0, 1):
            return CheckResult(False, t, f"value {v!r} outside {{-1, 0, 1}}", count)
        if (v == 0) == _distinct(*t):
            return CheckResult(False, t, f"axiom (1): c{t} = {v}", count)
    for a, b, x, y in quads:
        count += 1
        s = c(a, b, x) - c(a, b, y) + c(a, x, y) - c(b, x, y)
        if s != 0:
            return CheckResult(False, (a, b, x, y), f"axiom (2): cocycle sum {s}", count)
    return CheckResult(True, None, "", count)


def _op(q):
    return q.op


def invariance_check(q, witness, side="right", samples: SampleSpec | None = None):
    """Is ``witness`` invariant under the quandle's right/left action?

    ``witness`` is a total order (anything with ``less``) or a circular
    ordering (callable on triples).  Violations report ``(q, tuple)``.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    op = _op(q)
    act = (lambda x, r: op(x, r)) if side == "right" else (lambda x, r: op(r, x))
    total = hasattr(witness, "less")
    n = _finite_size(q)
    if n is not None:
        k = 2 if total else 3
        tuples = ((r,) + rest for r in range(n) for rest in itertools.product(range(n), repeat=k))
    else:
        samples = samples or SampleSpec()
        rng = random.Random(samples.seed)
        k = 3 if total else 4
        tuples = [_sample_tuple(rng, q, k) for _ in range(samples.triples)]
        if samples.grid and not total:
            tuples = itertools.chain(tuples, itertools.product(samples.grid, repeat=4))
    count = 0
    for tup in tuples:
        count += 1
        r, rest = tup[0], tup[1:]
        images = tuple(act(x, r) for x in rest)
        if total:
            s, t = rest
            if witness.less(s, t) and not witness.less(*images):
                return CheckResult(False, (r, rest), f"{s} < {t} but images {images} not increasing", count)
        else:
            before, after = witness(*rest), witness(*images)
            if before != after:
                return CheckResult(
                    False, (r, rest), f"c{rest} = {before} but c{images} = {after}", count
                )
    return CheckResult(True, None, "", count)
