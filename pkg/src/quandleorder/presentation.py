"""Quandle words, finitely presented quandles, torus links and PD codes."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedInputError
from .quandle import FiniteQuandle


@dataclass(frozen=True)
class Gen:
    index: int  # 0-based

    def __str__(self):
        return f"a{self.index + 1}"


@dataclass(frozen=True)
class Op:
    """``left * right``, or ``left *^-1 right`` when ``inverse`` is set."""

    left: "Gen | Op"
    right: "Gen | Op"
    inverse: bool = False

    def __str__(self):
        # every compound operand is parenthesized, e.g. ((a2*a1)*a2)*a1
        left = str(self.left) if isinstance(self.left, Gen) else f"({self.left})"
        right = str(self.right) if isinstance(self.right, Gen) else f"({self.right})"
        return f"{left}{'/' if self.inverse else '*'}{right}"


def star(*words):
    """Left-associated product ``w1 * w2 * ... * wk``."""
    out = words[0]
    for w in words[1:]:
        out = Op(out, w)
    return out


def generators_of(word):
    if isinstance(word, Gen):
        return {word.index}
    return generators_of(word.left) | generators_of(word.right)


def leaf_count(word):
    if isinstance(word, Gen):
        return 1
    return leaf_count(word.left) + leaf_count(word.right)


class _Parser:
    def __init__(self, text, k, line=None, offset=0):
        self.s = text
        self.k = k
        self.i = 0
        self.line = line
        self.offset = offset

    def error(self, msg, at=None):
        col = (self.i if at is None else at) + 1 + self.offset
        raise MalformedInputError(msg, self.line, col)

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def word(self):
        left = self.term()
        while True:
            self.skip()
            if self.i < len(self.s) and self.s[self.i] in "*/":
                inverse = self.s[self.i] == "/"
                self.i += 1
                left = Op(left, self.term(), inverse)
            else:
                return left

    def term(self):
        self.skip()
        if self.i >= len(self.s):
            self.error("expected a generator or '('")
        ch = self.s[self.i]
        if ch == "(":
            start = self.i
            self.i += 1
            inner = self.word()
            self.skip()
            if self.i >= len(self.s) or self.s[self.i] != ")":
                self.error("unbalanced parenthesis", start)
            self.i += 1
            return inner
        if ch == "a":
            start = self.i
            self.i += 1
            j = self.i
            while j < len(self.s) and self.s[j].isdigit():
                j += 1
            if j == self.i:
                self.error("generator name needs digits after 'a'", start)
            num = int(self.s[self.i:j])
            self.i = j
            if not 1 <= num <= self.k:
                self.error(f"undeclared generator a{num} (have a1..a{self.k})", start)
            return Gen(num - 1)
        self.error(f"unexpected character {ch!r}")


def parse_word(text, k, line=None, offset=0):
    """Parse ``a1*a2/(a3*a1)``; ``*`` and ``/`` associate to the left."""
    p = _Parser(text, k, line, offset)
    w = p.word()
    p.skip()
    if p.i != len(text):
        if text[p.i] == ")":
            p.error("unbalanced parenthesis")
        p.error(f"unexpected character {text[p.i]!r}")
    return w


@dataclass(frozen=True)
class QuandlePresentation:
    gens: int
    relations: tuple  # of (QuandleWord, QuandleWord)

    def __post_init__(self):
        if self.gens < 1:
            raise MalformedInputError("a presentation needs at least one generator")
        for lhs, rhs in self.relations:
            for g in generators_of(lhs) | generators_of(rhs):
                if not 0 <= g < self.gens:
                    raise MalformedInputError(f"relation uses undeclared generator a{g + 1}")


def torus_presentation(m, n):
    """Generators a1..am with a_i = a_{n+i} * a_n * ... * a_1, indices mod m.

    Words are left-associated and not simplified.
    """
    if m < 2 or n < 2:
        raise MalformedInputError("torus presentation needs m, n >= 2")

    def a(j):
        return Gen((j - 1) % m)

    rels = []
    for i in range(1, m + 1):
        rhs = star(a(n + i), *(a(j) for j in range(n, 0, -1)))
        rels.append((a(i), rhs))
    return QuandlePresentation(m, tuple(rels))


# -- PD codes ---------------------------------------------------------------

@dataclass(frozen=True)
class Crossing:
    sign: int  # +1 or -1
    labels: tuple  # (incoming under, over, outgoing under, over)


@dataclass(frozen=True)
class PDCode:
    crossings: tuple

    def check_closed(self):
        counts = {}
        for cr in self.crossings:
            for lab in cr.labels:
                counts[lab] = counts.get(lab, 0) + 1
        bad = sorted(lab for lab, c in counts.items() if c != 2)
        if bad:
            raise MalformedInputError(
                f"edge label {bad[0]} appears {counts[bad[0]]} time(s), expected exactly 2"
            )


def pd_to_presentation(pd: PDCode, require_closed=True):
    """One generator per arc, one relation per crossing.

    A crossing ``X± i j k l`` has incoming understrand ``i``, outgoing
    understrand ``k`` and overstrand ``j``/``l``.  The relation is
    ``arc(k) = arc(i) * arc(j)`` for ``+`` and ``arc(i) / arc(j)`` for ``-``.
    Arcs are numbered by their smallest edge label.
    """
    if require_closed:
        pd.check_closed()
    if not pd.crossings:
        return QuandlePresentation(1, ())
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cr in pd.crossings:
        for lab in cr.labels:
            find(lab)
        i, j, k, l = cr.labels
        a, b = find(j), find(l)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in parent})
    arc = {r: idx for idx, r in enumerate(roots)}
    rels = []
    for cr in pd.crossings:
        i, j, k, _ = cr.labels
        lhs = Gen(arc[find(k)])
        rhs = Op(Gen(arc[find(i)]), Gen(arc[find(j)]), cr.sign < 0)
        rels.append((lhs, rhs))
    return QuandlePresentation(len(roots), tuple(rels))


def evaluate_word(q: FiniteQuandle, word, assignment):
    """Value of ``word`` in ``q`` with generator ``i`` sent to ``assignment[i]``."""
    if isinstance(word, Gen):
        return assignment[word.index]
    a = evaluate_word(q, word.left, assignment)
    b = evaluate_word(q, word.right, assignment)
    return q.dual_table[a][b] if word.inverse else q.table[a][b]


def relations_hold(q: FiniteQuandle, pres: QuandlePresentation, assignment):
    return all(
        evaluate_word(q, lhs, assignment) == evaluate_word(q, rhs, assignment)
        for lhs, rhs in pres.relations
    )
