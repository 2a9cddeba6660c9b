"""Plain-text file formats.

Every format starts with a version line (``qnd 1``, ``order 1``,
``qpres 1``, ``pd 1``, ``gpres 1``, ``cocycle 1``).  Blank lines and lines
starting with ``#`` are ignored.  Element and generator names are 1-based
in files and 0-based in memory.  Parse errors carry 1-based line/column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .envgroup import GroupPresentation
from .errors import MalformedInputError
from .ordering import CyclicOrder, TotalOrder
from .presentation import Crossing, PDCode, QuandlePresentation, parse_word
from .quandle import FiniteQuandle, validate_quandle


class _Lines:
    """Significant lines with their 1-based numbers."""

    def __init__(self, text):
        self.items = []
        for no, raw in enumerate(text.splitlines(), 1):
            line = raw.rstrip()
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            self.items.append((no, line))
        self.pos = 0
        self.last = len(text.splitlines()) or 1

    def peek(self):
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, what):
        item = self.peek()
        if item is None:
            raise MalformedInputError(f"unexpected end of input, expected {what}", self.last + 1, 1)
        self.pos += 1
        return item

    def done(self):
        return self.pos >= len(self.items)


def _header(lines: _Lines, kind):
    no, line = lines.next(f"'{kind} 1' header")
    if line.split() != [kind, "1"]:
        raise MalformedInputError(f"expected header '{kind} 1', got {line.strip()!r}", no, 1)


def _keyword_int(lines: _Lines, key, minimum=1):
    no, line = lines.next(f"'{key} <n>'")
    m = re.fullmatch(r"\s*" + key + r"\s+(\S+)\s*", line)
    if not m:
        raise MalformedInputError(f"expected '{key} <n>'", no, 1)
    try:
        v = int(m.group(1))
    except ValueError:
        raise MalformedInputError(f"{key} must be an integer", no, m.start(1) + 1) from None
    if v < minimum:
        raise MalformedInputError(f"{key} must be at least {minimum}", no, m.start(1) + 1)
    return v


def _int_tokens(no, line, lo, hi, what):
    out = []
    for m in re.finditer(r"\S+", line):
        tok = m.group()
        try:
            v = int(tok)
        except ValueError:
            raise MalformedInputError(f"{what} {tok!r} is not an integer", no, m.start() + 1) from None
        if not lo <= v <= hi:
            raise MalformedInputError(f"{what} {v} out of range {lo}..{hi}", no, m.start() + 1)
        out.append(v)
    return out


# -- QND --------------------------------------------------------------------

@dataclass(frozen=True)
class QndFile:
    quandle: FiniteQuandle
    generator_images: tuple | None = None


def parse_qnd(text, validate=True):
    """Parse a QND file; returns :class:`QndFile`.  With ``validate`` the
    quandle axioms are checked (raising ``AxiomError``)."""
    lines = _Lines(text)
    _header(lines, "qnd")
    n = _keyword_int(lines, "size")
    rows = []
    for r in range(n):
        no, line = lines.next(f"row {r + 1} of {n}")
        if line.lstrip().startswith("gen"):
            raise MalformedInputError(f"expected {n} rows, found {r}", no, 1)
        vals = _int_tokens(no, line, 1, n, "entry")
        if len(vals) != n:
            raise MalformedInputError(f"row {r + 1} has {len(vals)} entries, expected {n}", no, 1)
        rows.append([v - 1 for v in vals])
    images = {}
    while not lines.done():
        no, line = lines.next("gen line")
        m = re.fullmatch(r"\s*gen\s+a(\d+)\s*->\s*(\d+)\s*", line)
        if not m:
            raise MalformedInputError(
                f"unexpected line {line.strip()!r} (expected {n} rows then optional 'gen a<i> -> <e>')", no, 1
            )
        g, e = int(m.group(1)), int(m.group(2))
        if not 1 <= e <= n:
            raise MalformedInputError(f"element {e} out of range 1..{n}", no, m.start(2) + 1)
        if g in images:
            raise MalformedInputError(f"generator a{g} mapped twice", no, m.start(1))
        images[g] = e - 1
    gens = None
    if images:
        k = max(images)
        if sorted(images) != list(range(1, k + 1)):
            raise MalformedInputError("gen block must list a1..ak without gaps")
        gens = tuple(images[i] for i in range(1, k + 1))
    q = validate_quandle(rows) if validate else FiniteQuandle(tuple(tuple(r) for r in rows))
    return QndFile(q, gens)


def format_qnd(q: FiniteQuandle, generator_images=None):
    out = ["qnd 1", f"size {q.size}"]
    for row in q.table:
        out.append(" ".join(str(v + 1) for v in row))
    if generator_images is not None:
        for i, e in enumerate(generator_images):
            out.append(f"gen a{i + 1} -> {e + 1}")
    return "\n".join(out) + "\n"


# -- order witnesses --------------------------------------------------------

def format_order(result):
    """Witness or certificate text for a search result."""
    w = result.witness
    if w is None:
        return "order 1\n" + result.certificate() + "\n"
    if isinstance(w, CyclicOrder):
        body = "cyclic: " + " ".join(str(e + 1) for e in w.arrangement)
    else:
        body = "total ranks: " + " ".join(str(r + 1) for r in w.rank)
    return "order 1\n" + body + "\n"


def parse_order(text):
    """Returns a TotalOrder, a CyclicOrder, or the certificate dict."""
    lines = _Lines(text)
    _header(lines, "order")
    no, line = lines.next("witness line")
    s = line.strip()
    if s.startswith("none"):
        m = re.fullmatch(r"none exhaustive leaves=(\d+) pruned=(\d+)(?: space=(\d+))?", s)
        if not m:
            raise MalformedInputError("malformed certificate line", no, 1)
        return {
            "leaves": int(m.group(1)),
            "pruned": int(m.group(2)),
            "space": int(m.group(3)) if m.group(3) else None,
        }
    for prefix, kind in (("total ranks:", "total"), ("cyclic:", "cyclic")):
        if s.startswith(prefix):
            start = line.index(prefix) + len(prefix)
            vals = _int_tokens(no, " " * start + line[start:], 1, 10**9, "value")
            n = len(vals)
            if sorted(vals) != list(range(1, n + 1)):
                raise MalformedInputError(f"{kind} witness must be a permutation of 1..{n}", no, start + 1)
            vals = tuple(v - 1 for v in vals)
            return TotalOrder(vals) if kind == "total" else CyclicOrder(vals)
    raise MalformedInputError("expected 'total ranks:', 'cyclic:' or 'none exhaustive'", no, 1)


# -- quandle presentations --------------------------------------------------

def parse_qpres(text):
    lines = _Lines(text)
    _header(lines, "qpres")
    k = _keyword_int(lines, "gens")
    rels = []
    while not lines.done():
        no, line = lines.next("relation")
        m = re.match(r"\s*rel\s", line)
        if not m:
            raise MalformedInputError("expected 'rel <word> = <word>'", no, 1)
        body = line[m.end():]
        if body.count("=") != 1:
            raise MalformedInputError("relation needs exactly one '='", no, m.end() + 1)
        eq = body.index("=")
        lhs = parse_word(body[:eq], k, no, m.end())
        rhs = parse_word(body[eq + 1:], k, no, m.end() + eq + 1)
        rels.append((lhs, rhs))
    return QuandlePresentation(k, tuple(rels))


def format_qpres(p: QuandlePresentation):
    out = ["qpres 1", f"gens {p.gens}"]
    out += [f"rel {lhs} = {rhs}" for lhs, rhs in p.relations]
    return "\n".join(out) + "\n"


# -- PD codes ---------------------------------------------------------------

def parse_pd(text):
    lines = _Lines(text)
    _header(lines, "pd")
    crossings = []
    while not lines.done():
        no, line = lines.next("crossing")
        m = re.match(r"\s*X([+-])(?=\s)", line)
        if not m:
            raise MalformedInputError("expected 'X+ a b c d' or 'X- a b c d'", no, 1)
        labels = _int_tokens(no, " " * m.end() + line[m.end():], 1, 10**9, "label")
        if len(labels) != 4:
            raise MalformedInputError(f"crossing needs 4 labels, got {len(labels)}", no, m.end() + 1)
        crossings.append(Crossing(1 if m.group(1) == "+" else -1, tuple(labels)))
    return PDCode(tuple(crossings))


def format_pd(pd: PDCode):
    out = ["pd 1"]
    out += [f"X{'+' if c.sign > 0 else '-'} " + " ".join(map(str, c.labels)) for c in pd.crossings]
    return "\n".join(out) + "\n"


# -- group presentations ----------------------------------------------------

_GLETTER = re.compile(r"g(\d+)(\^(-?\d+))?$")


def parse_gpres(text):
    lines = _Lines(text)
    _header(lines, "gpres")
    k = _keyword_int(lines, "gens")
    rels = []
    while not lines.done():
        no, line = lines.next("relator")
        m = re.match(r"\s*rel(?=\s|$)", line)
        if not m:
            raise MalformedInputError("expected 'rel <word>'", no, 1)
        word = []
        tokens = list(re.finditer(r"\S+", line[m.end():]))
        if not tokens:
            raise MalformedInputError("empty relator (write '1' for the identity)", no, m.end() + 1)
        for t in tokens:
            col = m.end() + t.start() + 1
            if t.group() == "1" and len(tokens) == 1:
                break
            g = _GLETTER.match(t.group())
            if not g:
                raise MalformedInputError(f"bad letter {t.group()!r}", no, col)
            i = int(g.group(1))
            if not 1 <= i <= k:
                raise MalformedInputError(f"undeclared generator g{i} (have g1..g{k})", no, col)
            e = int(g.group(3)) if g.group(3) else 1
            word.extend([i if e > 0 else -i] * abs(e))
        rels.append(tuple(word))
    return GroupPresentation(k, tuple(rels))


def format_group_word(word):
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        e = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(f"g{abs(word[i])}" + ("" if e == 1 else f"^{e}"))
        i = j
    return " ".join(parts)


def format_gpres(g: GroupPresentation):
    out = ["gpres 1", f"gens {g.gens}"]
    out += ["rel " + format_group_word(r) for r in g.relators]
    return "\n".join(out) + "\n"


# -- cocycle specs ----------------------------------------------------------

@dataclass(frozen=True)
class CocycleSpec:
    """Parsed ``cocycle 1`` file.

    ``base``: ``(kind, params)`` with kind in trivial, dihedral, takasaki,
    alexander, circle or group (group means Conj of a cyclic group used
    with ``action``).  ``fiber``: ``("Z/m", m)``, ``("Z",)``, ``("Q",)`` or
    ``("set", s)`` for explicit alpha tables.  Exactly one of ``affine``,
    ``alpha`` or ``action`` is set.
    """

    base: tuple
    fiber: tuple
    affine: dict | None = None
    alpha: dict | None = None
    action: tuple | None = None
    theta_zero: bool = True
    base_order: tuple | None = None
    base_cyclic: tuple | None = None
    side: str = "right"


def _fraction(tok, no, col):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise MalformedInputError(f"{tok!r} is not a rational number", no, col) from None


def parse_cocycle(text):
    lines = _Lines(text)
    _header(lines, "cocycle")
    fields = {}
    kappa_rows = []
    alpha = {}
    while not lines.done():
        no, line = lines.next("cocycle line")
        toks = list(re.finditer(r"\S+", line))
        key = toks[0].group()
        rest = [t.group() for t in toks[1:]]
        cols = [t.start() + 1 for t in toks[1:]]
        if key in fields and key not in ("kappa:",):
            raise MalformedInputError(f"duplicate '{key}' line", no, 1)
        if key == "base":
            if not rest:
                raise MalformedInputError("base needs a kind", no, 1)
            kind = rest[0]
            if kind == "circle":
                if len(rest) != 2:
                    raise MalformedInputError("expected 'base circle <t>'", no, 1)
                fields[key] = (kind, _fraction(rest[1], no, cols[1]))
            elif kind in ("trivial", "dihedral", "takasaki", "group", "alexander"):
                want = 3 if kind == "alexander" else 2
                if len(rest) != want:
                    raise MalformedInputError(f"expected {want - 1} integer parameter(s) for {kind}", no, 1)
                fields[key] = (kind,) + tuple(_int_tokens(no, " " * (cols[1] - 1) + " ".join(rest[1:]), 1, 10**6, "parameter"))
            else:
                raise MalformedInputError(f"unknown base kind {kind!r}", no, cols[0])
        elif key == "fiber":
            spec = " ".join(rest)
            if spec in ("Z", "Q"):
                fields[key] = (spec,)
            elif re.fullmatch(r"Z/\d+", spec):
                fields[key] = ("Z/m", int(spec[2:]))
            elif re.fullmatch(r"set \d+", spec):
                fields[key] = ("set", int(spec.split()[1]))
            else:
                raise MalformedInputError("fiber must be Z, Q, Z/<m> or set <s>", no, cols[0] if cols else 1)
        elif key == "affine":
            vals = {}
            for tok, col in zip(rest, cols):
                m = re.fullmatch(r"(t|kappa)=(\S+)", tok)
                if not m:
                    raise MalformedInputError(f"expected t=<rational> or kappa=<value|table>, got {tok!r}", no, col)
                if m.group(1) == "kappa" and m.group(2) == "table":
                    vals["kappa"] = "table"
                else:
                    vals[m.group(1)] = _fraction(m.group(2), no, col + len(m.group(1)) + 1)
            if "t" not in vals:
                raise MalformedInputError("affine line needs t=<rational>", no, 1)
            fields[key] = vals
        elif key == "kappa:":
            kappa_rows.append([_fraction(tok, no, col) for tok, col in zip(rest, cols)])
            fields[key] = True
        elif key == "alpha":
            m = re.fullmatch(r"\s*alpha\s+(\d+)\s+(\d+)\s*:(.*)", line)
            if not m:
                raise MalformedInputError("expected 'alpha <x> <y>: <values>'", no, 1)
            x, y = int(m.group(1)), int(m.group(2))
            vals = _int_tokens(no, " " * m.start(3) + m.group(3), 0, 10**6, "value")
            if (x, y) in alpha:
                raise MalformedInputError(f"alpha {x} {y} given twice", no, 1)
            alpha[(x, y)] = (vals, no)
        elif key == "action":
            fields[key] = tuple(int(_fraction(tok, no, col)) for tok, col in zip(rest, cols))
        elif key == "theta":
            if rest != ["zero"]:
                raise MalformedInputError("only 'theta zero' is supported", no, cols[0] if cols else 1)
            fields[key] = True
        elif key == "order":
            if not rest or rest[0] not in ("right", "left"):
                raise MalformedInputError("expected 'order right|left total|cyclic <elements>'", no, 1)
            if len(rest) < 2 or rest[1] not in ("total", "cyclic", "formula"):
                raise MalformedInputError("order kind must be total, cyclic or formula", no, cols[1] if len(cols) > 1 else 1)
            seq = tuple(v - 1 for v in _int_tokens(no, " " * (cols[2] - 1 if len(cols) > 2 else 0) + " ".join(rest[2:]), 1, 10**6, "element")) if len(rest) > 2 else ()
            if sorted(seq) != list(range(len(seq))):
                raise MalformedInputError("order must list each element once", no, cols[2] if len(cols) > 2 else 1)
            fields[key] = (rest[0], rest[1], seq)
        else:
            raise MalformedInputError(f"unknown key {key!r}", no, 1)
    if "base" not in fields:
        raise MalformedInputError("missing 'base' line", lines.last, 1)
    if "fiber" not in fields:
        raise MalformedInputError("missing 'fiber' line", lines.last, 1)
    kinds = [k for k in ("affine", "action") if k in fields] + (["alpha"] if alpha else [])
    if len(kinds) != 1:
        raise MalformedInputError("give exactly one of 'affine', 'alpha' tables or 'action'", lines.last, 1)
    affine = fields.get("affine")
    if affine is not None and affine.get("kappa") == "table":
        affine = dict(affine, kappa=tuple(tuple(r) for r in kappa_rows))
    elif kappa_rows:
        raise MalformedInputError("'kappa:' rows need 'kappa=table'", lines.last, 1)
    order = fields.get("order")
    return CocycleSpec(
        base=fields["base"],
        fiber=fields["fiber"],
        affine=affine,
        alpha=alpha or None,
        action=fields.get("action"),
        theta_zero=True,
        base_order=order[2] if order and order[1] == "total" else None,
        base_cyclic=order[2] if order and order[1] == "cyclic" else ("formula" if order and order[1] == "formula" else None),
        side=order[0] if order else "right",
    )
