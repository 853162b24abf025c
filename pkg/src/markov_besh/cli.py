"""Command-line entry point.  Every command prints JSON lines on stdout.

Exit status: 0 on success, 1 when a checked verdict is false, 2 on usage or
input errors (diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import coprime, formula, pell, proofs, urstring, witness
from .core import Mat2, QuadExt, eigenvalues, mat_inv, mat_mul, singleton
from .nielsen import decode, encode
from .poly import format_poly, parse_poly


class _Verdict(Exception):
    """Raised by a handler to exit 1 after its output has been printed."""


def _emit(obj) -> None:
    print(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))


def matrix_arg(text: str) -> Mat2:
    """A matrix as JSON (``[[a,b],[c,d]]`` or the ``m00..m11`` object) or a word over A, B."""
    text = text.strip()
    if re.fullmatch(r"[AB]*", text):
        return encode(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError:
        raise ValueError(f"not a matrix or a word over A, B: {text!r}") from None
    return Mat2.from_json(obj)


def _gnum(args) -> proofs.GoedelNumbering:
    return proofs.GoedelNumbering(args.gnum_bot, args.gnum_imp)


def _inst(args) -> witness.Instantiation:
    return witness.Instantiation(args.n, args.m, args.a, args.b)


def _verdict(ok: bool) -> None:
    if not ok:
        raise _Verdict


def _quad_json(q: QuadExt) -> dict:
    return {"r0": str(q.r0), "r1": str(q.r1), "d": q.d, "sign": q.sign()}


def cmd_mat_mul(args):
    out = matrix_arg(args.matrices[0])
    for text in args.matrices[1:]:
        out = mat_mul(out, matrix_arg(text))
    _emit({"matrix": out.to_json()})


def cmd_mat_inv(args):
    _emit({"matrix": mat_inv(matrix_arg(args.matrix)).to_json()})


def cmd_mat_eigen(args):
    lam, mu = eigenvalues(args.n)
    _emit({
        "lambda": _quad_json(lam),
        "mu": _quad_json(mu),
        "product": _quad_json(lam * mu),
        "sum": _quad_json(lam + mu),
        "lambda_gt_one": lam > 1,
        "lambda_lower_bound": str(lam.lower_bound(args.bits)),
    })


# -- handlers ----------------------------------------------------------------------


def cmd_encode(args):
    word = "" if args.empty else args.word
    if word is None:
        raise ValueError("give a word or --empty")
    m = encode(word)
    _emit({"word": word, "matrix": m.to_json()})


def cmd_decode(args):
    _emit({"word": decode(matrix_arg(args.matrix))})


def cmd_ur_inspect(args):
    _emit(urstring.inspect(matrix_arg(args.matrix)))


_RELATIONS = {
    "leq": urstring.leq_entrywise,
    "lt": urstring.lt_entrywise,
    "initial": urstring.is_initial,
    "final": urstring.is_final,
    "uinitial": urstring.ur_initial,
    "ufinal": urstring.ur_final,
}


def cmd_ur_relation(args):
    a, b = matrix_arg(args.left), matrix_arg(args.right)
    if args.pred == "occ":
        if args.n is None:
            raise ValueError("occ needs --n")
        value = urstring.occurs(a, args.n, b)
    else:
        value = _RELATIONS[args.pred](a, b)
    _emit({"pred": args.pred, "value": value})
    _verdict(value)


def cmd_ur_editors(args):
    a, b, c, d = (matrix_arg(x) for x in (args.a, args.b, args.c, args.d))
    eta, side = urstring.editors_split(a, b, c, d)
    _emit({"eta": eta.to_json(), "eta_word": decode(eta), "side": side})


def _load_proof(path: str):
    with open(path, encoding="utf-8") as fh:
        items = json.load(fh)
    if not isinstance(items, list) or not all(isinstance(x, str) for x in items):
        raise ValueError("proof file must be a JSON array of strings")
    hilbert = {s.value: s for s in proofs.Sentence}
    sequent = {s.value: s for s in proofs.Sequent}
    if all(x in hilbert for x in items):
        return "hilbert", [hilbert[x] for x in items]
    if all(x in sequent for x in items):
        return "sequent", [sequent[x] for x in items]
    raise ValueError(
        "proof lines must all be 'bot'/'bot_imp_bot' (Hilbert) or all 'bot_seq_bot'/'seq_bot' (sequent)"
    )


def cmd_proof_check(args):
    kind, lines = _load_proof(args.file)
    v = proofs.check_hilbert(lines) if kind == "hilbert" else proofs.check_sequent(lines)
    _emit(v.to_json())
    _verdict(v.valid)


def cmd_proof_encode(args):
    kind, lines = _load_proof(args.file)
    if kind == "sequent":
        lines = proofs.sequent_to_hilbert(lines)
    m = proofs.encode_proof(lines, _gnum(args))
    _emit({"matrix": m.to_json(), "word": decode(m)})


def cmd_proof_decode(args):
    g = _gnum(args)
    pi = matrix_arg(args.matrix)
    out = {"proof0": proofs.proof0_semantic(pi, g)}
    if args.literal:
        out["proof0_literal"] = proofs.proof0_literal(pi, g, args.cap)
    if out["proof0"]:
        els = urstring.elements(pi)
        out["lines"] = [s.value for s in proofs.decode_proof(pi, g)]
        out["proof_of"] = els[-1] if els else None
    if args.of is not None:
        out["is_proof_of"] = proofs.is_proof_of(pi, args.of, g)
    _emit(out)
    _verdict(out["proof0"])


def cmd_con_scan(args):
    value = proofs.con_scan(_gnum(args), args.max_len)
    _emit({"max_len": args.max_len, "consistent": value})
    _verdict(value)


def cmd_pell_s(args):
    _emit({"value": str(pell.s_seq(args.n, args.m))})


def cmd_pell_check(args):
    value = pell.pell_check(args.n, args.x, args.y)
    _emit({"value": value})
    _verdict(value)


def cmd_pell_power(args):
    _emit({"n": args.n, "m": args.m, "matrix": pell.power_via_s(args.n, args.m).to_json()})


def cmd_pell_descend(args):
    trace = pell.descent_trace(args.n, args.x, args.y)
    _emit({"m": len(trace), "trace": [[str(x), str(y)] for x, y in trace]})


def cmd_pell_identity(args):
    s, s_prev = pell.s_pair(args.n, args.m)
    out = {
        "n": args.n,
        "m": args.m,
        "pell": pell.pell_check(args.n, s, s_prev),
        "power": pell.power_via_s(args.n, args.m) == singleton(args.n) ** args.m,
    }
    if args.m >= 2:
        out["ratio_gap"] = pell.ratio_gap_identity(args.n, args.m)
    _emit(out)
    _verdict(all(v for k, v in out.items() if isinstance(v, bool)))


def cmd_formula_classify(args):
    c = formula.classify(formula.parse(args.expr))
    _emit({"class": c.cls, "level": c.level, "e_level": c.e_level, "u_level": c.u_level,
           "prefix": c.prefix, "label": str(c)})  # fmt: skip


def _binding(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise ValueError(f"binding must look like name=value: {text!r}")
    value = value.strip()
    if re.fullmatch(r"\d+", value):
        return name.strip(), int(value)
    return name.strip(), matrix_arg(value)


def cmd_formula_eval(args):
    f = formula.parse(args.expr)
    env = dict(_binding(b) for b in args.bind or [])
    value = formula.eval_formula(f, env, args.budget)
    _emit({"value": value})
    _verdict(value)


def cmd_formula_build(args):
    g = _gnum(args)
    f = formula.build_proof0(g) if args.which == "proof0" else formula.build_con(g)
    _emit({"formula": formula.format_formula(f), "label": str(formula.classify(f))})


def cmd_poly_normalize(args):
    res = witness.normalize(parse_poly(args.expr), args.n, args.m)
    _emit({"normal_form": format_poly(res.poly), "steps": res.steps, **res.poly.to_json()})


def cmd_poly_measure(args):
    xs, ys = witness.measure(parse_poly(args.expr))
    _emit({"x1_degrees": sorted(xs.elements()), "y1_degrees": sorted(ys.elements())})


def cmd_poly_eval(args):
    _emit({"value": str(witness.eval_poly(parse_poly(args.expr), _inst(args)))})


def cmd_poly_search(args):
    res = witness.k0_membership_search(
        parse_poly(args.expr), _inst(args), args.degree, args.coeff, args.max_support
    )
    _emit(res.to_json())
    _verdict(res.found)


def cmd_poly_dominate(args):
    inst = _inst(args)
    pnf = witness.normalize(parse_poly(args.expr), inst.n, inst.m).poly
    rep = witness.domination_check(pnf, inst, range(2, args.upto + 1))
    _emit(rep.to_json())
    _verdict(rep.holds)


def cmd_beta_analyze(args):
    rep = witness.analyze_beta(_inst(args), _gnum(args))
    sym = witness.beta_symbolic(args.n, args.m)
    out = rep.to_json()
    out["symbolic"] = [[format_poly(p) for p in row] for row in sym]
    out["matrix"] = witness.beta_numeric(rep.inst).to_json()
    _emit(out)


def cmd_coprime_demo(args):
    rep = coprime.cut_collapse_demo(args.a, args.c)
    _emit(rep.to_json())
    _verdict(rep.ok)


def cmd_coprime_bezout(args):
    cert = coprime.bezout(args.a, args.b)
    _emit({"a": str(cert.a), "b": str(cert.b), "g": str(cert.g), "x": str(cert.x),
           "y": str(cert.y), "coprime": cert.coprime})  # fmt: skip


def cmd_coprime_family(args):
    _emit({"u": str(coprime.family_witness(args.a, args.v))})


def cmd_coprime_fact(args):
    rep = coprime.fact_a_check(args.i, args.j, args.v)
    _emit({"hypothesis": rep.hypothesis, "coprime": rep.coprime, "fact_b": rep.fact_b,
           "fact_c": rep.fact_c, "holds": rep.holds})  # fmt: skip
    _verdict(rep.holds)


# Library operation -> the one subcommand that exposes it.
COVERAGE = {
    "core.mat_mul": "mat mul",
    "core.mat_inv": "mat inv",
    "core.QuadExt": "mat eigen",
    "nielsen.encode": "encode",
    "nielsen.decode": "decode",
    "urstring.leq_entrywise": "ur relation",
    "urstring.lt_entrywise": "ur relation",
    "urstring.is_initial": "ur relation",
    "urstring.is_final": "ur relation",
    "urstring.ur_initial": "ur relation",
    "urstring.ur_final": "ur relation",
    "urstring.occurs": "ur relation",
    "urstring.is_ur": "ur inspect",
    "urstring.elements": "ur inspect",
    "urstring.editors_split": "ur editors",
    "pell.s_seq": "pell s",
    "pell.power_via_s": "pell power",
    "pell.pell_check": "pell check",
    "pell.pell_descend": "pell descend",
    "pell.ratio_gap_identity": "pell identity",
    "proofs.check_hilbert": "proof check",
    "proofs.check_sequent": "proof check",
    "proofs.encode_proof": "proof encode",
    "proofs.proof0_semantic": "proof decode",
    "proofs.proof0_literal": "proof decode",
    "proofs.is_proof_of": "proof decode",
    "proofs.con_scan": "con-scan",
    "formula.classify": "formula classify",
    "formula.parse": "formula classify",
    "formula.eval_formula": "formula eval",
    "formula.build_proof0": "formula build",
    "formula.build_con": "formula build",
    "witness.normalize": "poly normalize",
    "witness.measure": "poly measure",
    "witness.eval_poly": "poly eval",
    "witness.k0_membership_search": "poly search",
    "witness.domination_check": "poly dominate",
    "witness.beta_numeric": "beta analyze",
    "witness.beta_symbolic": "beta analyze",
    "witness.analyze_beta": "beta analyze",
    "coprime.bezout": "coprime bezout",
    "coprime.fact_a_check": "coprime fact",
    "coprime.family_witness": "coprime family",
    "coprime.cut_collapse_demo": "coprime demo",
}


# -- parser --------------------------------------------------------------------------


def _add_gnum(p):
    p.add_argument("--gnum-bot", type=int, default=1, help="Goedel number of ⊥ (default 1)")
    p.add_argument("--gnum-imp", type=int, default=2, help="Goedel number of (⊥→⊥) (default 2)")


def _add_inst(p, n=2, m=1, a=8, b=60):
    p.add_argument("--n", type=int, default=n)
    p.add_argument("--m", type=int, default=m)
    p.add_argument("--a", type=int, default=a)
    p.add_argument("--b", type=int, default=b)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="markov-besh", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    ma = sub.add_parser("mat", help="2x2 integer matrices").add_subparsers(dest="sub", required=True)
    p = ma.add_parser("mul", help="product of one or more matrices")
    p.add_argument("matrices", nargs="+")
    p.set_defaults(func=cmd_mat_mul)
    p = ma.add_parser("inv", help="inverse of a determinant-1 matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_mat_inv)
    p = ma.add_parser("eigen", help="eigenvalues of [n] as exact quadratic irrationals")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bits", type=int, default=16)
    p.set_defaults(func=cmd_mat_eigen)

    p = sub.add_parser("encode", help="word over A, B -> matrix")
    p.add_argument("word", nargs="?")
    p.add_argument("--empty", action="store_true", help="encode the empty word")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="SL2(N) matrix -> word")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_decode)

    ur = sub.add_parser("ur", help="ur-string predicates").add_subparsers(dest="sub", required=True)
    p = ur.add_parser("inspect")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_ur_inspect)
    p = ur.add_parser("relation")
    p.add_argument("pred", choices=[*_RELATIONS, "occ"])
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_ur_relation)
    p = ur.add_parser("editors", help="mediating eta for a*b = c*d")
    for name in "abcd":
        p.add_argument(name)
    p.set_defaults(func=cmd_ur_editors)

    pr = sub.add_parser("proof", help="BeSh proofs").add_subparsers(dest="sub", required=True)
    p = pr.add_parser("check")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_proof_check)
    p = pr.add_parser("encode")
    p.add_argument("--file", required=True)
    _add_gnum(p)
    p.set_defaults(func=cmd_proof_encode)
    p = pr.add_parser("decode", help="evaluate the coded proof predicate on a matrix")
    p.add_argument("matrix")
    p.add_argument("--literal", action="store_true", help="also run the bounded-quantifier evaluator")
    p.add_argument("--cap", type=int, default=10**6)
    p.add_argument("--of", type=int, help="also decide proof(pi, OF)")
    _add_gnum(p)
    p.set_defaults(func=cmd_proof_decode)

    p = sub.add_parser("con-scan", help="search all words up to a length for a proof of ⊥")
    p.add_argument("--max-len", type=int, required=True)
    _add_gnum(p)
    p.set_defaults(func=cmd_con_scan)

    pe = sub.add_parser("pell", help="ladder sequences").add_subparsers(dest="sub", required=True)
    for name, func in (("s", cmd_pell_s), ("power", cmd_pell_power), ("identity", cmd_pell_identity)):
        p = pe.add_parser(name)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        p.set_defaults(func=func)
    p = pe.add_parser("check", help="x^2 - (n+2)xy + y^2 == 1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.set_defaults(func=cmd_pell_check)
    p = pe.add_parser("descend")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--y", type=int, required=True)
    p.set_defaults(func=cmd_pell_descend)

    fo = sub.add_parser("formula", help="bounded formulas").add_subparsers(dest="sub", required=True)
    p = fo.add_parser("classify")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_formula_classify)
    p = fo.add_parser("eval")
    p.add_argument("--expr", required=True)
    p.add_argument("--bind", action="append", help="name=value; value is an int, a matrix or a word")
    p.add_argument("--budget", type=int, default=10**6)
    p.set_defaults(func=cmd_formula_eval)
    p = fo.add_parser("build")
    p.add_argument("which", choices=["proof0", "con"])
    _add_gnum(p)
    p.set_defaults(func=cmd_formula_build)

    po = sub.add_parser("poly", help="polynomials in x0 x1 y0 y1").add_subparsers(dest="sub", required=True)
    p = po.add_parser("normalize")
    p.add_argument("--expr", required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=cmd_poly_normalize)
    p = po.add_parser("measure")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_poly_measure)
    p = po.add_parser("eval")
    p.add_argument("--expr", required=True)
    _add_inst(p)
    p.set_defaults(func=cmd_poly_eval)
    p = po.add_parser("search", help="integer combinations of products of xi*yj")
    p.add_argument("--expr", required=True)
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--coeff", type=int, default=10)
    p.add_argument("--max-support", type=int, default=3)
    _add_inst(p)
    p.set_defaults(func=cmd_poly_search)
    p = po.add_parser("dominate", help="leading-slice domination check on the normal form")
    p.add_argument("--expr", required=True)
    p.add_argument("--upto", type=int, default=60)
    _add_inst(p)
    p.set_defaults(func=cmd_poly_dominate)

    be = sub.add_parser("beta", help="the witness [n]^a [m]^b").add_subparsers(dest="sub", required=True)
    p = be.add_parser("analyze")
    _add_inst(p)
    _add_gnum(p)
    p.set_defaults(func=cmd_beta_analyze)

    co = sub.add_parser("coprime", help="co-primality and the cut J").add_subparsers(dest="sub", required=True)
    p = co.add_parser("demo")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.set_defaults(func=cmd_coprime_demo)
    p = co.add_parser("bezout")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.set_defaults(func=cmd_coprime_bezout)
    p = co.add_parser("family", help="product of 1 + i*v for i <= a")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.set_defaults(func=cmd_coprime_family)
    p = co.add_parser("fact")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.set_defaults(func=cmd_coprime_fact)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.func(args)
    except _Verdict:
        return 1
    except (ValueError, ArithmeticError, OSError, RuntimeError) as exc:
        print(f"{ap.prog}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
