"""Command-line front end.

Subcommands expose the diagram engine (hom dimensions, ranks, radical and
Schur-Weyl quotients, Hopf axioms), the identity battery, the cycle-theory
axiom suite, and the symmetric-distinction tests.  Every subcommand accepts
``--json`` for machine-readable output; randomized suites accept ``--seed``.

Exit codes: 0 all checks pass, 2 argument or expression parse error, 3 a
model check failed (the report carries the witness).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .linalg import Matrix, pfaffian, schur_weyl_dim
from .diagrams import FreeCategory, parse_word
from .karoubi import (SymHopf, alt_power, cayley_hamilton_check,
                      hopf_axiom_check, is_in_radical, karoubi_hom_basis,
                      kimura_incl_excl_check, plain_object,
                      poscontr_identity_check, quotient_hom, radical_subspace,
                      sym_power)
from .chow import (ChowInstance, CycleClass, axiom_suite,
                   duality_check, load_instance)
from .exterior import HomMatrix
from . import symdist as sd

SCHEMA = "cyclecalc/1"


# ---------------------------------------------------------------------------
# class-expression grammar (documented in docs/grammar.md)

class ExprError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "+-^()#*":
            tokens.append(c)
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and (text[j].isdigit() or text[j] == "/"):
                j += 1
            tokens.append(text[i:j])
            i = j
        elif c.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ExprError("unexpected character %r" % c)
    return tokens


class _ExprParser:
    """Sums of scalar multiples of powers and external products of the named
    classes h, eps, iota1 (on A) and Delta1 (on A^2)."""

    def __init__(self, inst: ChowInstance, text: str):
        self.inst = inst
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ExprError("unexpected end of expression")
        if expected is not None and tok != expected:
            raise ExprError("expected %r, found %r" % (expected, tok))
        self.pos += 1
        return tok

    def parse(self) -> CycleClass:
        x = self.expr()
        if self.peek() is not None:
            raise ExprError("trailing input %r" % self.peek())
        return x

    def expr(self) -> CycleClass:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        x = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take()
            y = self.term()
            x = x + y.scale(-1 if op == "-" else 1)
        return x

    def term(self) -> CycleClass:
        coeff = Fraction(1)
        tok = self.peek()
        if tok is not None and tok[0].isdigit():
            coeff = Fraction(self.take())
            if self.peek() == "*":
                self.take()
        x = self.factor().scale(coeff)
        while self.peek() in ("*", "#"):
            op = self.take()
            y = self.factor()
            x = x * y if op == "*" else self.inst.external(x, y)
        return x

    def factor(self) -> CycleClass:
        x = self.atom()
        while self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise ExprError("exponent must be a natural number")
            n = int(tok)
            out = self.inst.unit(x.m)
            for _ in range(n):
                out = out * x
            x = out
        return x

    def atom(self) -> CycleClass:
        tok = self.take()
        if tok == "(":
            x = self.expr()
            self.take(")")
            return x
        if tok == "h":
            return self.inst.h_class()
        if tok == "eps":
            return self.inst.eps_unit(1)
        if tok == "iota1":
            return self.inst.point_class(1)
        if tok == "Delta1":
            return self.inst.delta_one(1)
        raise ExprError("unknown class %r" % tok)


def parse_class(inst: ChowInstance, text: str) -> CycleClass:
    return _ExprParser(inst, text).parse()


# ---------------------------------------------------------------------------
# output helpers

def _emit(report: dict, as_json: bool) -> None:
    if as_json:
        report = {"schema": SCHEMA, **report}
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
    else:
        for k, v in report.items():
            print("%s: %s" % (k, v))


def _parse_gens(spec: str) -> dict[str, int]:
    gens = {}
    for part in spec.split(","):
        name, _, rank = part.partition(":")
        if not name or not rank:
            raise ExprError("generator spec must look like NAME:RANK")
        gens[name.strip()] = int(rank)
    return gens


# ---------------------------------------------------------------------------
# subcommands

def _cmd_homdim(args) -> tuple[int, dict]:
    cat = FreeCategory(_parse_gens(args.gens))
    src = parse_word(args.src)
    dst = parse_word(args.dst)
    return 0, {"dim": cat.hom_dim(src, dst)}


def _cmd_rank(args) -> tuple[int, dict]:
    cat = FreeCategory(_parse_gens(args.gens))
    name = next(iter(cat.generators))
    base = plain_object(cat, ((name, False),))
    if args.sym is not None:
        obj = sym_power(base, args.sym)
        label = "Sym^%d %s" % (args.sym, name)
    elif args.alt is not None:
        obj = alt_power(base, args.alt)
        label = "Alt^%d %s" % (args.alt, name)
    elif args.word:
        obj = plain_object(cat, parse_word(args.word))
        label = args.word
    else:
        raise ExprError("rank needs --word, --sym, or --alt")
    return 0, {"object": label, "rank": str(obj.rank())}


def _cmd_radical(args) -> tuple[int, dict]:
    cat = FreeCategory(_parse_gens(args.gens))
    w = parse_word(args.word)
    basis = karoubi_hom_basis(cat, w, w)
    rad = radical_subspace(cat, w, w)
    return 0, {"end_dim": len(basis), "radical_dim": len(rad),
               "quotient_dim": len(basis) - len(rad)}


def _cmd_schur_weyl(args) -> tuple[int, dict]:
    cat = FreeCategory({"N": -2 * args.n})
    w = parse_word(" ".join(["N"] * args.r))
    q = quotient_hom(cat, w, w, mode="ideal", sym_level=args.n)
    expected = schur_weyl_dim(args.n, args.r)
    ok = q.dim == expected
    return (0 if ok else 3), {"n": args.n, "r": args.r, "dim": q.dim,
                              "expected": expected, "pass": ok}


def _cmd_hopf_check(args) -> tuple[int, dict]:
    cat = FreeCategory({"H": -2 * args.g})
    hopf = SymHopf(cat, "H", degree_bound=args.deg)
    res = hopf_axiom_check(hopf)
    ok = all(res.values())
    return (0 if ok else 3), {"g": args.g, "deg": hopf.bound, **res, "pass": ok}


def _cmd_identities(args) -> tuple[int, dict]:
    which = args.which
    report: dict = {"which": which}
    ok = True
    if which == "incl-excl":
        n = args.n or 2
        ok = kimura_incl_excl_check(n)
        report["n"] = n
    elif which == "pfaffian":
        from random import Random
        rng = Random(args.seed)
        sizes = range(2, (args.size or 8) + 1, 2)
        for k in sizes:
            m = [[0] * k for _ in range(k)]
            for i in range(k):
                for j in range(i + 1, k):
                    m[i][j] = rng.randint(-3, 3)
                    m[j][i] = -m[i][j]
            mat = Matrix(m)
            ok &= pfaffian(mat) ** 2 == mat.det()
        report["sizes"] = list(sizes)
    elif which == "cayley-hamilton":
        from random import Random
        rng = Random(args.seed)
        cat = FreeCategory({"N": -2})
        w = parse_word("N N")
        obj = plain_object(cat, w)
        terms = {diag: Fraction(rng.randint(-2, 2))
                 for diag in cat.hom_basis(w, w)}
        residue = cayley_hamilton_check(obj, cat.morphism(w, w, terms))
        ok = is_in_radical(cat, residue)
    elif which == "poscontr":
        from random import Random
        rng = Random(args.seed)
        d = args.d or 2
        n_src = n_dst = 2
        f = Matrix([[rng.randint(-3, 3) for _ in range(n_src * d)]
                    for _ in range(n_dst * d)])
        ok = poscontr_identity_check(f, d, n_src, n_dst)
        report["d"] = d
    elif which == "diagpull":
        g = args.g or 1
        inst = ChowInstance(g, "numerical")
        delta = inst.delta_one(1)
        pt = inst.point_class(1)
        for (r, s) in ((1, 1), (2, 1), (1, -1), (3, 2), (0, 2)):
            f = HomMatrix.of([[r], [s]])
            ok &= inst.pullback(f, delta) == pt.scale((r - s) ** (2 * g))
        iota = HomMatrix(1, 0, ((),))
        ok &= inst.pullback(iota, pt).is_zero()
        report["g"] = g
    elif which == "duality":
        g = args.g or 1
        inst = ChowInstance(g, "numerical")
        for m in range(1, (args.mmax or 2) + 1):
            ok &= duality_check(inst, m)
        report["g"] = g
    else:
        raise ExprError("unknown identity %r" % which)
    report["pass"] = ok
    return (0 if ok else 3), report


def _cmd_chow_axioms(args) -> tuple[int, dict]:
    with open(args.config) as fh:
        inst = load_instance(json.load(fh))
    res = axiom_suite(inst, m_max=args.mmax, trials=args.trials, seed=args.seed)
    ok = all(res.values())
    return (0 if ok else 3), {"instance": repr(inst), **res, "pass": ok}


def _cmd_symdist(args) -> tuple[int, dict]:
    with open(args.config) as fh:
        inst = load_instance(json.load(fh))
    if not inst.deformed and args.action in ("lift", "probe"):
        raise ExprError("%s needs a deformed instance" % args.action)
    if args.action == "test":
        alpha = parse_class(inst, args.alpha)
        report = sd.span_report_json(inst, alpha, args.alpha, args.mmax)
        return (0 if report["injective"] else 3), report
    if args.action == "lift":
        alphabar = inst.numerical_projection(parse_class(inst, args.alpha))
        lift = sd.canonical_lift(alphabar, inst, m_max=args.mmax)
        return 0, {"alpha": args.alpha, "lift": lift.serialize()}
    if args.action == "probe":
        alphabar = inst.numerical_projection(parse_class(inst, args.alpha))
        coeffs = [Fraction(c) for c in
                  (args.grid.split(",") if args.grid else
                   ("1", "-1", "2", "-2", "1/2", "-1/2"))]
        perts = [inst.eps_unit(1).scale(c) for c in coeffs]
        report = sd.uniqueness_probe(alphabar, inst, perts, m_max=args.mmax)
        report["alpha"] = args.alpha
        ok = report["survivors"] == 0
        report["pass"] = ok
        return (0 if ok else 3), report
    raise ExprError("unknown symdist action %r" % args.action)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="cyclecalc")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="machine-readable output")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for randomized checks")
    sub = top.add_subparsers(dest="command", required=True,
                             parser_class=lambda **kw: argparse.ArgumentParser(
                                 parents=[common], **kw))

    p = sub.add_parser("homdim", help="dimension of a diagram hom space")
    p.add_argument("--gens", required=True, help="e.g. N:-2,L:3")
    p.add_argument("--src", required=True, help="source word, e.g. 'N N*'")
    p.add_argument("--dst", required=True, help="target word")
    p.set_defaults(fn=_cmd_homdim)

    p = sub.add_parser("rank", help="categorical rank of an object")
    p.add_argument("--gens", required=True)
    p.add_argument("--word", help="tensor word")
    p.add_argument("--sym", type=int, help="symmetric power of the first generator")
    p.add_argument("--alt", type=int, help="alternating power of the first generator")
    p.set_defaults(fn=_cmd_rank)

    p = sub.add_parser("radical", help="radical of an endomorphism algebra")
    p.add_argument("--gens", required=True)
    p.add_argument("--word", required=True)
    p.set_defaults(fn=_cmd_radical)

    p = sub.add_parser("schur-weyl", help="dimension of the level-n quotient")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(fn=_cmd_schur_weyl)

    p = sub.add_parser("hopf-check", help="Hopf axioms for Sym of a rank -2g object")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--deg", type=int, default=None)
    p.set_defaults(fn=_cmd_hopf_check)

    p = sub.add_parser("identities", help="the exact identity battery")
    p.add_argument("--which", required=True,
                   choices=["incl-excl", "pfaffian", "cayley-hamilton",
                            "poscontr", "diagpull", "duality"])
    p.add_argument("--n", type=int)
    p.add_argument("--size", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--g", type=int)
    p.add_argument("--mmax", type=int)
    p.set_defaults(fn=_cmd_identities)

    p = sub.add_parser("chow-axioms", help="randomized cycle-theory axiom suite")
    p.add_argument("--config", required=True, help="instance JSON file")
    p.add_argument("--mmax", type=int, default=3)
    p.add_argument("--trials", type=int, default=25)
    p.set_defaults(fn=_cmd_chow_axioms)

    p = sub.add_parser("symdist", help="symmetric-distinction tests")
    p.add_argument("action", choices=["test", "lift", "probe"])
    p.add_argument("--config", required=True, help="instance JSON file")
    p.add_argument("--alpha", required=True, help="class expression, e.g. 'h+eps'")
    p.add_argument("--mmax", type=int, default=None)
    p.add_argument("--grid", help="comma-separated rational perturbation scales")
    p.set_defaults(fn=_cmd_symdist)
    return top


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        code, report = args.fn(args)
    except (ExprError, ValueError, KeyError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ArithmeticError as exc:
        print("model failure: %s" % exc, file=sys.stderr)
        return 3
    _emit(report, args.json)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
