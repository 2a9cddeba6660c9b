"""Enveloping groups, the exponent map and abelianization.

Group words are tuples of nonzero ints: ``+(i+1)`` for generator ``i``
and ``-(i+1)`` for its inverse.  Words are freely reduced on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import MalformedInputError
from .presentation import Gen, QuandlePresentation
from .quandle import FiniteQuandle


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert(word):
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    gens: int
    relators: tuple

    def __post_init__(self):
        rels = []
        for r in self.relators:
            for x in r:
                if x == 0 or abs(x) > self.gens:
                    raise MalformedInputError(f"letter {x} out of range for {self.gens} generators")
            rels.append(free_reduce(r))
        object.__setattr__(self, "relators", tuple(rels))


@dataclass(frozen=True)
class ExponentMap:
    """Exponent sum into Z (``modulus == 0``) or Z/n."""

    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError("modulus must be 0 or at least 2")

    def __call__(self, word):
        total = sum(1 if x > 0 else -1 for x in word)
        return total % self.modulus if self.modulus else total


def exponent(word, emap: ExponentMap = ExponentMap()):
    return emap(word)


def _group_word(word):
    """Expand a quandle word: x*y -> y^-1 x y and x/y -> y x y^-1."""
    if isinstance(word, Gen):
        return (word.index + 1,)
    x = _group_word(word.left)
    y = _group_word(word.right)
    if word.inverse:
        return free_reduce(y + x + invert(y))
    return free_reduce(invert(y) + x + y)


def env_presentation(source, n=0):
    """Presentation of Env(Q) (``n == 0``) or Env_n(Q) (``n >= 2``).

    For a finite quandle there is one generator per element and one
    relator ``q^-1 p q (p*q)^-1`` per ordered pair ``(p, q)``.  For a
    quandle presentation each relation ``u = v`` becomes ``U V^-1`` with
    the words expanded by conjugation.  ``n >= 2`` adds ``g^n`` for every
    generator.
    """
    if n < 0 or n == 1:
        raise ValueError("n must be 0 or at least 2")
    if isinstance(source, FiniteQuandle):
        k = source.size
        rels = []
        for p in range(k):
            for q in range(k):
                pq = source.table[p][q]
                rels.append((-(q + 1), p + 1, q + 1, -(pq + 1)))
    elif isinstance(source, QuandlePresentation):
        k = source.gens
        rels = [_group_word(u) + invert(_group_word(v)) for u, v in source.relations]
    else:
        raise TypeError("expected a FiniteQuandle or QuandlePresentation")
    if n >= 2:
        rels.extend((g + 1,) * n for g in range(k))
    return GroupPresentation(k, tuple(rels))


def exponent_certificate(g: GroupPresentation, n):
    """Check the exponent map kills every relator and report the index of
    its kernel (the exponent-zero subgroup)."""
    emap = ExponentMap(n)
    bad = [r for r in g.relators if emap(r) != 0]
    if bad:
        return False, f"relator {bad[0]} has nonzero exponent {emap(bad[0])}"
    if n:
        return True, (
            f"exponent: all {len(g.relators)} relators vanish mod {n}; "
            f"g1 maps to 1, so the map onto Z/{n} is surjective; "
            f"index of the exponent-zero subgroup = {n}"
        )
    return True, (
        f"exponent: all {len(g.relators)} relators have exponent 0; "
        "g1 maps to 1, so the exponent-zero subgroup has infinite index"
    )


# -- Smith normal form ------------------------------------------------------

def relator_matrix(g: GroupPresentation):
    rows = []
    for r in g.relators:
        row = [0] * g.gens
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    return rows


def smith_diagonal(matrix, ncols=None):
    """Diagonal of the Smith normal form (nonnegative, each dividing the
    next); the list has ``min(rows, cols)`` entries.

    Pivot: smallest nonzero absolute value in the remaining block, ties
    broken by (row, column) position.
    """
    a = [list(r) for r in matrix]
    m = len(a)
    n = ncols if ncols is not None else (len(a[0]) if a else 0)
    diag = []
    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    v = a[i][j]
                    if v and (pivot is None or abs(v) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                diag.extend([0] * (min(m, n) - t))
                return _fix_divisibility(diag)
            i, j = pivot
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                diag.append(abs(p))
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
    return _fix_divisibility(diag)


def _fix_divisibility(diag):
    # the pivot loop already yields a chain; normalise defensively
    d = list(diag)
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = math.gcd(d[i], d[j])
            if g == 0:
                continue
            l = d[i] * d[j] // g
            d[i], d[j] = g, l
    return d


@dataclass(frozen=True)
class AbelianInvariants:
    """Invariant factors ``d1 | d2 | ...``; 0 stands for a free Z."""

    factors: tuple

    @property
    def free_rank(self):
        return sum(1 for d in self.factors if d == 0)

    @property
    def torsion(self):
        return tuple(d for d in self.factors if d != 0)

    def __str__(self):
        parts = []
        r = self.free_rank
        if r == 1:
            parts.append("Z")
        elif r > 1:
            parts.append(f"Z^{r}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts) if parts else "1"


def abelianization(g: GroupPresentation):
    diag = smith_diagonal(relator_matrix(g), g.gens)
    diag += [0] * (g.gens - len(diag))
    factors = [d for d in diag if d != 1]
    torsion = sorted(d for d in factors if d)
    return AbelianInvariants(tuple(torsion + [0] * (len(factors) - len(torsion))))
