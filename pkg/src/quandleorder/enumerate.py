"""Coset enumeration of the n-quandle of a finitely presented quandle.

Every element of a presented quandle has the form ``a_i . w``: a generator
acted on by a word ``w`` in the right translations ``R_{a_j}^{+-1}``.  The
enumerator builds the Schreier graph of that action, one coset per element,
with a column per generator letter and its inverse.  The element
``x = a_i . w`` translates by ``R_x = w^-1 g_i w``.

The acting group is presented by the relators ``g_j^n`` and
``R_u R_v^-1`` for each relation ``u = v``; these are traced at every
coset.  Elements are tied together by ``a_i . g_i == a_i`` and
``a_iu . w_u == a_iv . w_v``.  Two representatives of one coset then give
translations that agree modulo the relators, so ``R_x`` is well defined and
self-distributivity holds by construction (``R_{x.g} = g^-1 R_x g``).

Entries are filled one at a time at the first gap (smallest coset, then
column); each new entry is followed by Felsch-style deduction scans, and a
coincidence triggers a full rescan.  The smaller coset survives a merge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedInputError
from .presentation import Gen, QuandlePresentation, relations_hold
from .quandle import FiniteQuandle, classify, validate_quandle

DEFAULT_MAX_ELEMENTS = 10_000


def _inv(letter):
    return letter ^ 1


def _reduce(word):
    out = []
    for x in word:
        if out and out[-1] == _inv(x):
            out.pop()
        else:
            out.append(x)
    return out


def _inverse(word):
    return [_inv(x) for x in reversed(word)]


def normal_form(word):
    """``(i, w)`` with ``word == a_i . w``; letters ``2j`` act as ``* a_j``
    and ``2j+1`` as ``/ a_j``."""
    if isinstance(word, Gen):
        return word.index, []
    i, w = normal_form(word.left)
    j, v = normal_form(word.right)
    g = 2 * j + (1 if word.inverse else 0)
    return i, _reduce(w + _inverse(v) + [g] + v)


def translation_word(i, w):
    """The word for ``R_x`` when ``x = a_i . w``."""
    return _reduce(_inverse(w) + [2 * i] + list(w))


@dataclass(frozen=True)
class EnumerationResult:
    closed: bool
    quandle: FiniteQuandle | None
    generator_images: tuple | None
    limit: int
    cosets_defined: int
    merges: int

    @property
    def outcome(self):
        return "closed" if self.closed else "overflow"


class _Enumerator:
    def __init__(self, pres: QuandlePresentation, n, max_elements):
        self.k = pres.gens
        self.cols = 2 * self.k
        self.max = max_elements
        self.table = []
        self.parent = []
        self.rep = []
        self.merges = 0
        self.pending = []
        self.dirty = False
        self.gap_from = 0
        for i in range(self.k):
            self._new_coset((i, []))
        self.ident = []
        relators = []
        for i in range(self.k):
            self.ident.append((i, [2 * i], i))
            relators.append([2 * i] * n)
        for lhs, rhs in pres.relations:
            iu, wu = normal_form(lhs)
            iv, wv = normal_form(rhs)
            self.ident.append((iu, _reduce(wu + _inverse(wv)), iv))
            rel = _reduce(translation_word(iu, wu) + _inverse(translation_word(iv, wv)))
            if rel:
                relators.append(rel)
        self.relators = relators
        # cyclic conjugates indexed by their first letter, for deductions
        self.conj = [[] for _ in range(self.cols)]
        for rel in relators:
            for p in range(len(rel)):
                rot = rel[p:] + rel[:p]
                self.conj[rot[0]].append(rot)

    def _new_coset(self, rep):
        c = len(self.table)
        self.table.append([None] * self.cols)
        self.parent.append(c)
        self.rep.append(rep)
        return c

    def find(self, c):
        p = self.parent
        while p[c] != c:
            p[c] = p[p[c]]
            c = p[c]
        return c

    def live(self):
        return [c for c in range(len(self.table)) if self.parent[c] == c]

    def _get(self, c, x):
        v = self.table[c][x]
        return None if v is None else self.find(v)

    def _set(self, c, x, d):
        self.table[c][x] = d
        self.table[d][_inv(x)] = c
        self.pending.append((c, x))

    # -- coincidences (Holt's procedure) --
    def _merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        if b < a:
            a, b = b, a
        self.parent[b] = a
        queue.append(b)
        self.merges += 1

    def coincidence(self, a, b):
        self.dirty = True
        self.gap_from = 0
        queue = []
        self._merge(a, b, queue)
        t = self.table
        qi = 0
        while qi < len(queue):
            e = queue[qi]
            qi += 1
            for x in range(self.cols):
                f = t[e][x]
                if f is None:
                    continue
                if t[f][_inv(x)] == e:
                    t[f][_inv(x)] = None
                e1, f1 = self.find(e), self.find(f)
                if t[e1][x] is not None:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][_inv(x)] is not None:
                    self._merge(e1, t[f1][_inv(x)], queue)
                else:
                    t[e1][x] = f1
                    t[f1][_inv(x)] = e1

    def scan(self, start, word, end):
        """Trace ``word`` from ``start`` towards ``end``; deduce a single
        missing entry or record a coincidence."""
        f = self.find(start)
        end = self.find(end)
        i, n = 0, len(word)
        while i < n:
            nxt = self._get(f, word[i])
            if nxt is None:
                break
            f = nxt
            i += 1
        if i == n:
            if f != end:
                self.coincidence(f, end)
            return
        b = end
        j = n - 1
        while j >= i:
            prv = self._get(b, _inv(word[j]))
            if prv is None:
                break
            b = prv
            j -= 1
        if j < i:
            if f != b:
                self.coincidence(f, b)
        elif j == i:
            self._set(f, word[i], b)

    def full_pass(self):
        for rel in self.relators:
            for c in self.live():
                if self.parent[c] == c:
                    self.scan(c, rel, c)

    def settle(self):
        while True:
            while self.pending:
                c, x = self.pending.pop()
                c = self.find(c)
                d = self._get(c, x)
                if d is None:
                    continue
                for rot in self.conj[x]:
                    self.scan(c, rot, c)
                    c = self.find(c)
                for rot in self.conj[_inv(x)]:
                    d = self.find(d)
                    self.scan(d, rot, d)
            for start, word, end in self.ident:
                self.scan(start, word, end)
            if self.dirty:
                self.dirty = False
                self.full_pass()
            elif not self.pending:
                return

    def first_gap(self):
        # rows before gap_from stay full until the next coincidence
        for c in range(self.gap_from, len(self.table)):
            if self.parent[c] != c:
                continue
            row = self.table[c]
            for x in range(self.cols):
                if row[x] is None:
                    self.gap_from = c
                    return c, x
        self.gap_from = len(self.table)
        return None

    def run(self):
        while True:
            self.settle()
            gap = self.first_gap()
            if gap is None:
                return True
            if len(self.table) >= self.max:
                return False
            c, x = gap
            ic, wc = self.rep[c]
            self._set(c, x, self._new_coset((ic, _reduce(wc + [x]))))

    def trace(self, c, word):
        for x in word:
            c = self._get(c, x)
        return c


def enumerate_n_quandle(pres: QuandlePresentation, n, max_elements=DEFAULT_MAX_ELEMENTS):
    """Enumerate the n-quandle of ``pres``.

    Returns a closed :class:`EnumerationResult` with the finite quandle and
    the index of each generator's element, or an overflow result once more
    than ``max_elements`` cosets would be needed.
    """
    if n < 2:
        raise MalformedInputError("n must be at least 2")
    if max_elements < 1:
        raise MalformedInputError("max_elements must be positive")
    en = _Enumerator(pres, n, max_elements)
    if not en.run():
        return EnumerationResult(False, None, None, max_elements, len(en.table), en.merges)
    live = en.live()
    index = {c: i for i, c in enumerate(live)}
    size = len(live)
    cols = []
    for y in live:
        ry = translation_word(*en.rep[y])
        cols.append([index[en.trace(x, ry)] for x in live])
    table = [[cols[yi][xi] for yi in range(size)] for xi in range(size)]
    q = validate_quandle(table)
    images = tuple(index[en.find(i)] for i in range(pres.gens))
    # post-conditions: these can only fail through a bug, never bad input
    assert n % classify(q).nq_order == 0
    assert relations_hold(q, pres, images)
    return EnumerationResult(True, q, images, max_elements, len(en.table), en.merges)
