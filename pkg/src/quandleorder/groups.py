"""Finite groups given by multiplication tables.

These only exist to feed the Conj / Core / Takasaki / Alexander
constructions and the group-extension bridge, so the API is small.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ConstructionError


@dataclass(frozen=True)
class FiniteGroupTable:
    """A finite group on ``range(size)``.

    ``mul[g][h]`` is the product ``gh``; ``inv[g]`` the inverse of ``g``.
    ``labels`` are optional human-readable names (permutations, residues...).
    """

    size: int
    mul: tuple
    inv: tuple
    id: int
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        n = self.size
        if n < 1 or len(self.mul) != n or any(len(row) != n for row in self.mul):
            raise ConstructionError("multiplication table must be size x size")
        rng = range(n)
        for g in rng:
            for h in rng:
                if not 0 <= self.mul[g][h] < n:
                    raise ConstructionError(f"product {g}*{h} out of range")
        if not 0 <= self.id < n:
            raise ConstructionError("identity out of range")
        for g in rng:
            if self.mul[self.id][g] != g or self.mul[g][self.id] != g:
                raise ConstructionError(f"{self.id} is not a two-sided identity at {g}")
            if self.mul[g][self.inv[g]] != self.id or self.mul[self.inv[g]][g] != self.id:
                raise ConstructionError(f"inv[{g}] is not a two-sided inverse")
        m = self.mul
        for a, b, c in itertools.product(rng, repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                raise ConstructionError(f"not associative at ({a}, {b}, {c})")

    def op(self, g, h):
        return self.mul[g][h]

    def is_abelian(self):
        return all(
            self.mul[g][h] == self.mul[h][g]
            for g in range(self.size)
            for h in range(g + 1, self.size)
        )

    def is_automorphism(self, phi):
        """True iff the sequence ``phi`` is a bijective homomorphism."""
        if len(phi) != self.size or sorted(phi) != list(range(self.size)):
            return False
        m = self.mul
        return all(
            phi[m[g][h]] == m[phi[g]][phi[h]]
            for g in range(self.size)
            for h in range(self.size)
        )

    def power(self, g, k):
        if k < 0:
            g, k = self.inv[g], -k
        out = self.id
        for _ in range(k):
            out = self.mul[out][g]
        return out


def from_operation(elements, op, identity):
    """Tabulate a group from a list of hashable elements and a product rule."""
    elements = list(elements)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    mul = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    e = index[identity]
    inv = tuple(next(h for h in range(n) if mul[g][h] == e) for g in range(n))
    return FiniteGroupTable(n, mul, inv, e, tuple(elements))


def cyclic(n):
    """The additive group Z/n, element ``k`` is the residue ``k``."""
    if n < 1:
        raise ConstructionError("cyclic group needs n >= 1")
    return from_operation(range(n), lambda a, b: (a + b) % n, 0)


def symmetric(n):
    """S_n on permutations of ``range(n)`` in lexicographic order.

    Permutations are tuples ``p`` with ``p[i]`` the image of ``i``;
    the product ``pq`` is "apply q, then p" (usual composition).
    """
    perms = list(itertools.permutations(range(n)))
    return from_operation(perms, lambda p, q: tuple(p[q[i]] for i in range(n)), tuple(range(n)))


def direct_product(g1, g2):
    elems = [(a, b) for a in range(g1.size) for b in range(g2.size)]
    return from_operation(
        elems,
        lambda x, y: (g1.mul[x[0]][y[0]], g2.mul[x[1]][y[1]]),
        (g1.id, g2.id),
    )
