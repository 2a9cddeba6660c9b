"""Finite quandles stored as operation tables.

Elements are ``0..N-1`` and ``table[x][y]`` is ``x * y``: the row is the
left argument, so column ``y`` is the right translation ``R_y``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .errors import AxiomError, ConstructionError, MalformedInputError
from .groups import FiniteGroupTable, cyclic


@dataclass(frozen=True)
class Violation:
    axiom: int
    witness: tuple
    message: str

    def __str__(self):
        return f"axiom {self.axiom} at {self.witness}: {self.message}"


@dataclass(frozen=True)
class FiniteQuandle:
    """Operation table of a finite quandle plus its derived dual table.

    Build instances with :func:`validate_quandle` (or the constructors in
    this module); the initializer itself does not check the axioms.
    """

    table: tuple
    dual_table: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.table)
        dual = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                dual[self.table[x][y]][y] = x
        object.__setattr__(self, "dual_table", tuple(tuple(r) for r in dual))

    @property
    def size(self):
        return len(self.table)

    def op(self, x, y):
        return self.table[x][y]

    def dual(self, x, y):
        return self.dual_table[x][y]

    def elements(self):
        return range(len(self.table))

    def relabel(self, perm):
        """The isomorphic copy where element ``x`` is renamed ``perm[x]``."""
        n = self.size
        new = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                new[perm[x]][perm[y]] = perm[self.table[x][y]]
        return FiniteQuandle(tuple(tuple(r) for r in new))


def _as_table(table):
    try:
        rows = [list(r) for r in table]
    except TypeError:
        raise MalformedInputError("table must be a sequence of rows") from None
    n = len(rows)
    if n == 0:
        raise MalformedInputError("a quandle needs at least one element")
    for x, row in enumerate(rows):
        if len(row) != n:
            raise MalformedInputError(f"row {x} has {len(row)} entries, expected {n}")
        for y, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise MalformedInputError(f"entry [{x}][{y}] = {v!r} is not in range [0, {n})")
    return rows


def axiom_violations(table, limit=None):
    """Every violated quandle axiom with its witnessing tuple.

    Axiom 2 is reported per column as the first colliding pair; axiom 3
    is only checked when every column is a permutation.
    """
    t = _as_table(table)
    n = len(t)
    out = []

    def full():
        return limit is not None and len(out) >= limit

    for x in range(n):
        if t[x][x] != x:
            out.append(Violation(1, (x,), f"{x}*{x} = {t[x][x]}"))
            if full():
                return out
    bijective = True
    for y in range(n):
        seen = {}
        for x in range(n):
            v = t[x][y]
            if v in seen:
                bijective = False
                out.append(Violation(2, (seen[v], x, y), f"{seen[v]}*{y} = {x}*{y} = {v}"))
                if full():
                    return out
                break
            seen[v] = x
    if not bijective:
        return out
    for x, y, z in itertools.product(range(n), repeat=3):
        lhs = t[t[x][y]][z]
        rhs = t[t[x][z]][t[y][z]]
        if lhs != rhs:
            out.append(Violation(3, (x, y, z), f"({x}*{y})*{z} = {lhs} but ({x}*{z})*({y}*{z}) = {rhs}"))
            if full():
                return out
    return out


def validate_quandle(table):
    """Return the :class:`FiniteQuandle` for ``table`` or raise.

    Raises :class:`MalformedInputError` for shape/range problems and
    :class:`AxiomError` (carrying every violation) when an axiom fails.
    """
    violations = axiom_violations(table)
    if violations:
        raise AxiomError(violations)
    return FiniteQuandle(tuple(tuple(r) for r in table))


def is_quandle(table):
    return not axiom_violations(table, limit=1)


# -- standard constructions -------------------------------------------------

def trivial(n):
    if n < 1:
        raise ConstructionError("trivial quandle needs n >= 1")
    return validate_quandle([[x] * n for x in range(n)])


def conj(group: FiniteGroupTable):
    """Conj(G): g * h = h g h^-1."""
    m, inv = group.mul, group.inv
    n = group.size
    return validate_quandle([[m[m[h][g]][inv[h]] for h in range(n)] for g in range(n)])


def core(group: FiniteGroupTable):
    """Core(G): g * h = h g^-1 h."""
    m, inv = group.mul, group.inv
    n = group.size
    return validate_quandle([[m[m[h][inv[g]]][h] for h in range(n)] for g in range(n)])


def takasaki(group: FiniteGroupTable):
    """Core of an abelian group; raises on non-abelian input."""
    if not group.is_abelian():
        raise ConstructionError("takasaki quandle needs an abelian group")
    return core(group)


def dihedral(n):
    """R_n = takasaki(Z/n), x * y = 2y - x mod n."""
    return takasaki(cyclic(n))


def alexander(group: FiniteGroupTable, phi):
    """Generalized Alexander quandle: g * h = phi(g h^-1) h."""
    phi = list(phi)
    if not group.is_automorphism(phi):
        raise ConstructionError("phi is not an automorphism of the group")
    m, inv = group.mul, group.inv
    n = group.size
    return validate_quandle([[m[phi[m[g][inv[h]]]][h] for h in range(n)] for g in range(n)])


_KINDS = {
    "trivial": trivial,
    "takasaki": takasaki,
    "dihedral": dihedral,
    "conj": conj,
    "core": core,
    "alexander": alexander,
}


def make_standard(kind, *params):
    """Dispatch to a named construction, e.g. ``make_standard("conj", S3)``."""
    try:
        build = _KINDS[kind]
    except KeyError:
        raise ConstructionError(f"unknown quandle kind {kind!r}") from None
    return build(*params)


# -- elementwise operations -------------------------------------------------

def dual_apply(q: FiniteQuandle, a, b):
    """The unique ``t`` with ``t * b == a``."""
    n = q.size
    if not (0 <= a < n and 0 <= b < n):
        raise MalformedInputError(f"element out of range [0, {n})")
    return q.dual_table[a][b]


def permutation_order(perm):
    order = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = perm[x]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def right_translation(q: FiniteQuandle, s):
    """``(perm, order)`` for ``R_s: x -> x * s``."""
    if not 0 <= s < q.size:
        raise MalformedInputError(f"element {s} out of range")
    perm = tuple(q.table[x][s] for x in range(q.size))
    return perm, permutation_order(perm)


def left_translation(q: FiniteQuandle, s):
    return tuple(q.table[s][x] for x in range(q.size))


def orbits(q: FiniteQuandle):
    """Orbits of the group generated by all right translations, sorted."""
    n = q.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(n):
        for y in range(n):
            a, b = find(x), find(q.table[x][y])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for x in range(n):
        groups.setdefault(find(x), []).append(x)
    return sorted(tuple(g) for g in groups.values())


@dataclass(frozen=True)
class ClassificationReport:
    is_trivial: bool
    stabilizer_elements: tuple
    is_latin: bool
    is_semi_latin: bool
    is_involutory: bool
    nq_order: int | None
    is_connected: bool
    orbit_partition: tuple

    def lines(self):
        yes = {True: "yes", False: "no"}
        return [
            f"trivial: {yes[self.is_trivial]}",
            "stabilizers: " + (" ".join(f"a{e + 1}" for e in self.stabilizer_elements) or "none"),
            f"latin: {yes[self.is_latin]}",
            f"semi-latin: {yes[self.is_semi_latin]}",
            f"involutory: {yes[self.is_involutory]}",
            f"n-quandle order: {self.nq_order if self.nq_order is not None else 'none'}",
            f"connected: {yes[self.is_connected]}",
            "orbits: " + " | ".join(" ".join(f"a{e + 1}" for e in o) for o in self.orbit_partition),
        ]


def classify(q: FiniteQuandle):
    n = q.size
    t = q.table
    stabilizers = tuple(e for e in range(n) if all(t[s][e] == s for s in range(n)))
    lefts = [left_translation(q, s) for s in range(n)]
    semi_latin = all(len(set(row)) == n for row in lefts)
    nq = 1
    for s in range(n):
        nq = math.lcm(nq, right_translation(q, s)[1])
    parts = tuple(orbits(q))
    return ClassificationReport(
        is_trivial=len(stabilizers) == n,
        stabilizer_elements=stabilizers,
        # a finite injective map is a bijection
        is_latin=semi_latin,
        is_semi_latin=semi_latin,
        is_involutory=nq <= 2,
        nq_order=nq,
        is_connected=len(parts) == 1,
        orbit_partition=parts,
    )
