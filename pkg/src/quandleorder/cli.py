"""``qf``: command-line front end.

Exit codes: 0 success or witness, 1 proven none (or a definite negative
answer such as failed validation), 2 input or usage error, 3 resource
limit.  Every report starts with a ``# qf <command> seed=<S>`` comment,
which all parsers skip.
"""

from __future__ import annotations

import argparse
import io
import os
import sys
from dataclasses import dataclass

from . import formats
from .envgroup import abelianization, env_presentation, exponent_certificate
from .enumerate import DEFAULT_MAX_ELEMENTS, enumerate_n_quandle
from .errors import (
    AxiomError,
    CocycleError,
    HypothesisRefused,
    MalformedInputError,
    QuandleError,
    ResourceLimitError,
    StructuralError,
)
from .extension import (
    AffineCocycle,
    DynamicalCocycle,
    FiniteExtension,
    GroupCocycleData,
    Integers,
    Rationals,
    ZMod,
    build_extension,
    extension_circular_order,
    extension_right_order,
    group_to_quandle_cocycle,
    proplo2_check,
    validate_affine,
    validate_dynamical,
)
from .groups import cyclic
from .iso import is_isomorphic
from .lazy import circle_quandle
from .ordering import CyclicOrder, SampleSpec, TotalOrder
from .presentation import pd_to_presentation, torus_presentation
from .quandle import alexander, axiom_violations, classify, dihedral, takasaki, trivial
from .search import find_order

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


@dataclass(frozen=True)
class CommandResult:
    code: int
    stdout: str
    stderr: str = ""


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _threads():
    # accepted for compatibility; searches run in one worker
    raw = os.environ.get("QF_THREADS")
    if raw is None:
        return 1
    try:
        v = int(raw)
    except ValueError:
        raise MalformedInputError(f"QF_THREADS must be an integer, got {raw!r}") from None
    if v < 1:
        raise MalformedInputError("QF_THREADS must be at least 1")
    return v


def _read(path, stdin):
    if path == "-":
        return stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise MalformedInputError(f"cannot read {path}: {e.strerror}") from None


def _name(e):
    return f"a{e + 1}"


def _names(tup):
    return "(" + ", ".join(_name(e) for e in tup) + ")"


def _build_parser():
    p = _Parser(prog="qf", description="Quandles: orders, extensions, n-quandles, enveloping groups.")
    p.add_argument("--seed", type=int, default=0, help="seed for every sampled check (default 0)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="validate a QND file")
    s.add_argument("qnd")
    s = sub.add_parser("classify", help="classification report")
    s.add_argument("qnd")
    s = sub.add_parser("order", help="search for an invariant order")
    s.add_argument("qnd")
    s.add_argument("--side", choices=("right", "left"), default="right")
    s.add_argument("--kind", choices=("total", "circular"), default="circular")
    s.add_argument("--max", type=int, default=None, dest="max_size")
    s.add_argument("--no-prune", action="store_true")
    s = sub.add_parser("iso", help="isomorphism test")
    s.add_argument("qnd1")
    s.add_argument("qnd2")
    s = sub.add_parser("torus", help="torus link quandle presentation")
    s.add_argument("m", type=int)
    s.add_argument("n", type=int)
    s = sub.add_parser("pd2pres", help="PD code to quandle presentation")
    s.add_argument("pd")
    s = sub.add_parser("nquandle", help="enumerate the n-quandle of a presentation")
    s.add_argument("qpres")
    s.add_argument("-n", type=int, required=True)
    s.add_argument("--max", type=int, default=DEFAULT_MAX_ELEMENTS, dest="max_elements")
    s = sub.add_parser("env", help="enveloping group presentation")
    s.add_argument("source")
    s.add_argument("-n", type=int, default=0)
    s = sub.add_parser("abel", help="abelianization of a group presentation")
    s.add_argument("gpres")
    s = sub.add_parser("extend", help="validate and build a cocycle extension")
    s.add_argument("spec")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--order", action="store_true", help="lexicographic order invariance")
    mode.add_argument("--circular", action="store_true", help="circular order on the extension")
    s.add_argument("--samples", type=int, default=None, help="sampled triples (default 10000)")
    s.add_argument("--no-gate", action="store_true", help="run checks even when a hypothesis fails")
    return p


# -- subcommands ------------------------------------------------------------

def _quandle(text):
    return formats.parse_qnd(text).quandle


def cmd_check(a, stdin, out):
    q = formats.parse_qnd(_read(a.qnd, stdin), validate=False).quandle
    vs = axiom_violations(q.table)
    if not vs:
        out.write(f"valid quandle of size {q.size}\n")
        return EXIT_OK
    out.write(f"invalid: {len(vs)} axiom violation(s)\n")
    for v in vs:
        out.write(f"axiom {v.axiom} at {_names(v.witness)}\n")
    return EXIT_NONE


def cmd_classify(a, stdin, out):
    q = _quandle(_read(a.qnd, stdin))
    out.write(f"size: {q.size}\n")
    for line in classify(q).lines():
        out.write(line + "\n")
    return EXIT_OK


def cmd_order(a, stdin, out):
    q = _quandle(_read(a.qnd, stdin))
    res = find_order(q, a.side, a.kind, a.max_size, prune=not a.no_prune)
    out.write(f"# side={a.side} kind={a.kind} size={q.size}\n")
    out.write(formats.format_order(res))
    return EXIT_OK if res.witness is not None else EXIT_NONE


def cmd_iso(a, stdin, out):
    q1 = _quandle(_read(a.qnd1, stdin))
    q2 = _quandle(_read(a.qnd2, stdin))
    f = is_isomorphic(q1, q2)
    if f is None:
        out.write("not isomorphic (exhaustive)\n")
        return EXIT_NONE
    out.write("isomorphic: " + " ".join(f"{_name(x)}->{_name(y)}" for x, y in enumerate(f)) + "\n")
    return EXIT_OK


def cmd_torus(a, stdin, out):
    out.write(f"# torus link T({a.m},{a.n}); words are left-associated\n")
    out.write(formats.format_qpres(torus_presentation(a.m, a.n)))
    return EXIT_OK


def cmd_pd2pres(a, stdin, out):
    pd = formats.parse_pd(_read(a.pd, stdin))
    out.write(formats.format_qpres(pd_to_presentation(pd)))
    return EXIT_OK


def cmd_nquandle(a, stdin, out):
    pres = formats.parse_qpres(_read(a.qpres, stdin))
    res = enumerate_n_quandle(pres, a.n, a.max_elements)
    if not res.closed:
        out.write(f"overflow: more than {res.limit} cosets needed "
                  f"(defined {res.cosets_defined}, merges {res.merges})\n")
        return EXIT_LIMIT
    out.write(f"# closed: {res.quandle.size} elements, n={a.n}, "
              f"cosets defined {res.cosets_defined}, merges {res.merges}\n")
    out.write(formats.format_qnd(res.quandle, res.generator_images))
    return EXIT_OK


def cmd_env(a, stdin, out):
    text = _read(a.source, stdin)
    head = next((ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")), [])
    if head == ["qnd", "1"]:
        src = _quandle(text)
    elif head == ["qpres", "1"]:
        src = formats.parse_qpres(text)
    else:
        raise MalformedInputError("expected a 'qnd 1' or 'qpres 1' file", 1, 1)
    if a.n < 0 or a.n == 1:
        raise MalformedInputError("-n must be 0 or at least 2")
    g = env_presentation(src, a.n)
    ok, line = exponent_certificate(g, a.n)
    out.write(formats.format_gpres(g))
    out.write(f"# {line}\n")
    return EXIT_OK if ok else EXIT_NONE


def cmd_abel(a, stdin, out):
    g = formats.parse_gpres(_read(a.gpres, stdin))
    out.write(str(abelianization(g)) + "\n")
    return EXIT_OK


def _spec_base(spec):
    kind = spec.base[0]
    if kind == "trivial":
        return trivial(spec.base[1])
    if kind == "dihedral":
        return dihedral(spec.base[1])
    if kind == "takasaki":
        return takasaki(cyclic(spec.base[1]))
    if kind == "alexander":
        n, k = spec.base[1], spec.base[2]
        return alexander(cyclic(n), [(k * g) % n for g in range(n)])
    if kind == "circle":
        return circle_quandle(spec.base[1])
    raise MalformedInputError(f"base kind {kind!r} is only valid with 'action'")


def _spec_fiber(spec):
    f = spec.fiber
    if f[0] == "Z/m":
        return ZMod(f[1])
    if f[0] == "Z":
        return Integers()
    if f[0] == "Q":
        return Rationals()
    raise MalformedInputError("'fiber set <s>' needs explicit alpha tables")


def _explicit_alpha(spec, base):
    if spec.fiber[0] != "set":
        raise MalformedInputError("explicit alpha tables need 'fiber set <s>'")
    s = spec.fiber[1]
    n = base.size
    alpha = [[None] * n for _ in range(n)]
    for (x, y), (vals, no) in spec.alpha.items():
        if not (1 <= x <= n and 1 <= y <= n):
            raise MalformedInputError(f"alpha index ({x}, {y}) out of range 1..{n}", no, 1)
        if len(vals) != s * s or any(v >= s for v in vals):
            raise MalformedInputError(f"alpha {x} {y} needs {s * s} values in 0..{s - 1}", no, 1)
        alpha[x - 1][y - 1] = tuple(tuple(vals[r * s:(r + 1) * s]) for r in range(s))
    missing = [(x + 1, y + 1) for x in range(n) for y in range(n) if alpha[x][y] is None]
    if missing:
        raise MalformedInputError(f"alpha table for {missing[0]} missing")
    return DynamicalCocycle(base, s, tuple(tuple(r) for r in alpha))


def _fmt(v):
    return str(v)


def cmd_extend(a, stdin, out, seed):
    spec = formats.parse_cocycle(_read(a.spec, stdin))
    samples = SampleSpec(seed=seed, triples=a.samples or 10_000)
    gate = not a.no_gate

    if spec.action is not None:
        if spec.base[0] != "group":
            raise MalformedInputError("'action' needs 'base group <n>' (Conj of Z/n)")
        data = GroupCocycleData(cyclic(spec.base[1]), _spec_fiber(spec), spec.action)
        m = group_to_quandle_cocycle(data, samples)
        n = m.base.size
        out.write(f"group extension over Conj(Z/{n}), fiber {m.fiber}\n")
        e, t, k = m.tables
        for name, tab in (("eta", e), ("tau", t), ("kappa", k)):
            out.write(f"{name}: " + " | ".join(" ".join(map(_fmt, row)) for row in tab) + "\n")
        out.write("module equations: hold\n")
        if a.order:
            order = TotalOrder(spec.base_order) if spec.base_order else None
            rep = proplo2_check(data, m, order, samples)
            out.write(f"proplo2 hypothesis on samples: {'holds' if rep.hypothesis_holds else 'fails'}\n")
            out.write(f"prediction agrees with lex-order invariance: {rep.agreements}/{rep.samples}\n")
            return EXIT_OK if rep.agree else EXIT_NONE
        return EXIT_OK

    base = _spec_base(spec)
    circle_d = None
    if isinstance(base, tuple):
        base, circle_d = base

    if spec.alpha is not None:
        dc = _explicit_alpha(spec, base)
        res = validate_dynamical(dc)
        if not res.ok:
            cond, wit = res.violation
            out.write(f"invalid dynamical cocycle: condition ({cond}) fails at {wit}\n")
            return EXIT_NONE
        out.write("# dynamical cocycle: conditions (1)-(3) hold\n")
        ext = build_extension(dc, validate=False)
        out.write(formats.format_qnd(ext.quandle))
        return EXIT_OK

    aff = spec.affine
    fiber = _spec_fiber(spec)
    kappa = aff.get("kappa")
    if a.order or a.circular:
        if not isinstance(fiber, Rationals):
            raise MalformedInputError("--order and --circular need 'fiber Q'")
    if a.order:
        if circle_d is not None:
            order = _CircleNatural()
        elif spec.base_order is not None:
            if len(spec.base_order) != base.size:
                raise MalformedInputError(f"base order must list {base.size} elements")
            order = TotalOrder.from_sequence(spec.base_order)
        else:
            order = TotalOrder(tuple(range(base.size)))
        samples_o = SampleSpec(seed=seed, triples=a.samples or 100_000)
        try:
            rep = extension_right_order(aff["t"], base, order, kappa, spec.side, gate, samples_o)
        except HypothesisRefused as e:
            out.write(f"refused: {e}\n")
            return EXIT_NONE
        if rep.refused is not None:
            out.write(f"# gate off: {rep.refused}\n")
        inv = rep.invariance
        if inv.ok:
            out.write(f"lexicographic order is {spec.side}-invariant on {inv.checked} sampled triples\n")
            return EXIT_OK
        r, (p1, p2) = inv.violation
        out.write(f"violation: {_pair(p1)} < {_pair(p2)} but not after acting with {_pair(r)}\n")
        return EXIT_NONE
    if a.circular:
        if circle_d is not None:
            d = circle_d
        elif spec.base_cyclic not in (None, "formula"):
            d = CyclicOrder(spec.base_cyclic)
        else:
            raise MalformedInputError("--circular needs 'order <side> cyclic ...' or a circle base")
        if circle_d is not None:
            samples = SampleSpec(seed=seed, triples=a.samples or 10_000, grid=())
        try:
            rep = extension_circular_order(aff["t"], base, d, spec.side, gate, samples)
        except HypothesisRefused as e:
            out.write(f"refused: {e}\n")
            return EXIT_NONE
        out.write(f"circular order validity: {'ok' if rep.validity.ok else 'fails'} "
                  f"({rep.validity.checked} checks)\n")
        out.write(f"{spec.side} invariance: {'ok' if rep.invariance.ok else 'fails'} "
                  f"({rep.invariance.checked} checks)\n")
        if not rep.ok:
            bad = rep.validity if not rep.validity.ok else rep.invariance
            out.write(f"violation: {bad.detail}\n")
        return EXIT_OK if rep.ok else EXIT_NONE

    if circle_d is not None:
        m = AffineCocycle.uniform(base, fiber, aff["t"], kappa)
    elif isinstance(kappa, tuple):
        n = base.size
        t = aff["t"]
        m = AffineCocycle.from_tables(base, fiber, [[t] * n] * n, [[1 - t] * n] * n, kappa)
    else:
        m = AffineCocycle.uniform(base, fiber, aff["t"], kappa)
    res = validate_affine(m, samples)
    if not res.ok:
        name, xyz, val = res.violation
        out.write(f"invalid module: {name} fails at x,y,z = {xyz}, a = {val}\n")
        return EXIT_NONE
    try:
        ext = build_extension(m, samples=samples)
    except CocycleError as e:
        out.write(f"invalid cocycle: {e}\n")
        return EXIT_NONE
    out.write(f"# module equations: hold ({res.checked} checks)\n")
    if isinstance(ext, FiniteExtension):
        out.write(f"# element (s, x) is numbered s*{ext.base_size} + x + 1\n")
        out.write(formats.format_qnd(ext.quandle))
    else:
        out.write(f"lazy extension {ext.name}; sampled axioms hold\n")
    return EXIT_OK


class _CircleNatural:
    name = "natural"

    @staticmethod
    def less(a, b):
        return a < b


def _pair(p):
    a, x = p
    return f"({a},{x})"


_COMMANDS = {
    "check": cmd_check,
    "classify": cmd_classify,
    "order": cmd_order,
    "iso": cmd_iso,
    "torus": cmd_torus,
    "pd2pres": cmd_pd2pres,
    "nquandle": cmd_nquandle,
    "env": cmd_env,
    "abel": cmd_abel,
}


def run(argv, stdin=None):
    """Run one command and capture its output."""
    stdin = stdin if stdin is not None else sys.stdin
    out = io.StringIO()
    try:
        args = _build_parser().parse_args(argv)
    except _UsageError as e:
        return CommandResult(EXIT_INPUT, "", f"qf: usage error: {e}\n")
    except SystemExit as e:  # --help
        return CommandResult(EXIT_OK if not e.code else EXIT_INPUT, "", "")
    out.write(f"# qf {args.command} seed={args.seed}\n")
    try:
        _threads()
        if args.command == "extend":
            code = cmd_extend(args, stdin, out, args.seed)
        else:
            code = _COMMANDS[args.command](args, stdin, out)
    except ResourceLimitError as e:
        return CommandResult(EXIT_LIMIT, out.getvalue(), f"qf: limit: {e}\n")
    except (MalformedInputError, AxiomError, StructuralError, ValueError) as e:
        return CommandResult(EXIT_INPUT, out.getvalue(), f"qf: input error: {e}\n")
    except QuandleError as e:
        return CommandResult(EXIT_INPUT, out.getvalue(), f"qf: {e}\n")
    return CommandResult(code, out.getvalue())


def main(argv=None):
    res = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(res.stdout)
    sys.stderr.write(res.stderr)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
