"""Exhaustive search for invariant total and circular orders on finite quandles.

Circular orders are enumerated as arrangements starting with element 0
((N-1)! leaves), total orders as increasing sequences (N! leaves), both in
lexicographic order so the first witness found is the least one.

With pruning on, a branch is cut when

* an invariance constraint whose elements are all placed already fails, or
* along some orbit ``y, y*x, y*x*x, ...`` (``x*y, x*(x*y), ...`` for the
  left side) two placed points give different values of ``c(x, y, .)``.
  Invariance forces that chain to be constant, and when the orbit closes
  up at ``y`` the constant is ``c(x, y, y) = 0``.

Every cut is recorded with the number of leaves below it, so a "none"
answer comes with ``leaves + pruned == space``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ResourceLimitError
from .ordering import CyclicOrder, TotalOrder, invariance_check, is_valid_circular
from .quandle import FiniteQuandle

DEFAULT_MAX = {"circular": 8, "total": 8}


@dataclass(frozen=True)
class SearchResult:
    witness: TotalOrder | CyclicOrder | None
    leaves: int
    pruned: int
    cuts: int
    space: int

    @property
    def exhaustive(self):
        return self.witness is None and self.leaves + self.pruned == self.space

    def certificate(self):
        return f"none exhaustive leaves={self.leaves} pruned={self.pruned} space={self.space}"


def _cyc(px, py, pz):
    if (px < py < pz) or (py < pz < px) or (pz < px < py):
        return 1
    if (px < pz < py) or (pz < py < px) or (py < px < pz):
        return -1
    return 0


class _Search:
    def __init__(self, q: FiniteQuandle, side, kind, prune):
        self.q = q
        self.n = q.size
        self.kind = kind
        self.prune = prune
        t = q.table
        if side == "right":
            self.act = lambda x, r: t[x][r]
        else:
            self.act = lambda x, r: t[r][x]
        self.side = side
        self.leaves = 0
        self.pruned = 0
        self.cuts = 0
        self.pos = [None] * self.n
        self._build_constraints()
        self._build_orbits()

    # constraint = (needed elements, check function)
    def _build_constraints(self):
        n = self.n
        by_elem = [[] for _ in range(n)]
        act = self.act
        if self.kind == "circular":
            for r in range(n):
                for trip in itertools.combinations(range(n), 3):
                    imgs = tuple(act(x, r) for x in trip)
                    need = set(trip)
                    if len(set(imgs)) == 3:
                        need |= set(imgs)
                    cons = (frozenset(need), trip, imgs)
                    for e in need:
                        by_elem[e].append(cons)
        else:
            for r in range(n):
                for s, u in itertools.permutations(range(n), 2):
                    imgs = (act(s, r), act(u, r))
                    # known once s, u and the image that must be larger are placed
                    need = frozenset((s, u, imgs[1]))
                    cons = (need, (s, u), imgs)
                    for e in need:
                        by_elem[e].append(cons)
        self.by_elem = by_elem

    def _build_orbits(self):
        n = self.n
        t = self.q.table
        orbits = {}
        for x in range(n):
            for y in range(n):
                if x == y:
                    continue
                chain = []
                v = y
                seen = set()
                while True:
                    v = t[v][x] if self.side == "right" else t[x][v]
                    if v in seen:
                        break
                    seen.add(v)
                    chain.append(v)
                orbits[(x, y)] = chain
        self.orbits = orbits

    def c(self, x, y, z):
        p = self.pos
        if x == y or y == z or x == z:
            return 0
        return _cyc(p[x], p[y], p[z])

    def _constraint_ok(self, cons):
        _, src, imgs = cons
        p = self.pos
        if self.kind == "circular":
            before = self.c(*src)
            after = 0 if len(set(imgs)) < 3 else self.c(*imgs)
            return before == after
        s, u = src
        if p[s] > p[u]:
            return True
        a, b = imgs
        if a == b:
            return False
        return p[a] is not None and p[a] < p[b]

    def _chain_ok(self, e):
        p = self.pos
        for (x, y), chain in self.orbits.items():
            if p[x] is None or p[y] is None:
                continue
            if e not in (x, y) and e not in chain:
                continue
            known = {self.c(x, y, w) for w in chain if p[w] is not None}
            if len(known) > 1:
                return False
        return True

    def _node_ok(self, e):
        p = self.pos
        for cons in self.by_elem[e]:
            if all(p[v] is not None for v in cons[0]) and not self._constraint_ok(cons):
                return False
        return self._chain_ok(e)

    def _leaf_ok(self, seq):
        if self.kind == "circular":
            w = CyclicOrder(tuple(seq))
        else:
            w = TotalOrder.from_sequence(seq)
        return invariance_check(self.q, w, self.side).ok, w

    def run(self):
        n = self.n
        if self.kind == "circular":
            prefix = [0]
            self.pos[0] = 0
            self.space = math.factorial(n - 1)
        else:
            prefix = []
            self.space = math.factorial(n)
        used = [False] * n
        for v in prefix:
            used[v] = True
        found = self._extend(prefix, used)
        return SearchResult(found, self.leaves, self.pruned, self.cuts, self.space)

    def _extend(self, prefix, used):
        n = self.n
        if len(prefix) == n:
            self.leaves += 1
            ok, w = self._leaf_ok(prefix)
            return w if ok else None
        for e in range(n):
            if used[e]:
                continue
            self.pos[e] = len(prefix)
            prefix.append(e)
            used[e] = True
            if self.prune and not self._node_ok(e):
                self.cuts += 1
                self.pruned += math.factorial(n - len(prefix))
                found = None
            else:
                found = self._extend(prefix, used)
            used[e] = False
            prefix.pop()
            self.pos[e] = None
            if found is not None:
                return found
        return None


def find_order(q: FiniteQuandle, side="right", kind="circular", max_size=None, prune=True):
    """Search for the least invariant order of the given kind.

    Raises :class:`ResourceLimitError` when ``q`` is larger than
    ``max_size`` (default 8).  A returned witness has been re-validated.
    """
    if side not in ("right", "left"):
        raise ValueError("side must be 'right' or 'left'")
    if kind not in ("circular", "total"):
        raise ValueError("kind must be 'circular' or 'total'")
    bound = DEFAULT_MAX[kind] if max_size is None else max_size
    if q.size > bound:
        raise ResourceLimitError(f"{q.size} elements exceeds the search bound {bound}")
    result = _Search(q, side, kind, prune).run()
    w = result.witness
    if w is not None:
        if kind == "circular":
            assert is_valid_circular(w, q.size).ok
        assert invariance_check(q, w, side).ok
    else:
        assert result.exhaustive, "search ended without covering the space"
    return result
