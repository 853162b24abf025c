import itertools
import random

import pytest

from markov_besh.core import IDENTITY, BudgetExceeded, Mat2, singleton
from markov_besh.formula import (
    MAT,
    NUM,
    And,
    Atom,
    Bool,
    Bounded,
    FormulaError,
    FormulaSyntaxError,
    Implies,
    MatConst,
    MatMul,
    Not,
    Num,
    Or,
    Proj,
    Sing,
    Unbounded,
    Var,
    build_con,
    build_proof,
    build_proof0,
    classify,
    eval_formula,
    eval_term,
    format_formula,
    free_vars,
    parse,
)
from markov_besh.nielsen import all_words, encode
from markov_besh.proofs import GoedelNumbering, is_proof_of, proof0_semantic
from markov_besh.urstring import is_ur

# -- a random corpus of well-formed formulas --------------------------------------


class Gen:
    def __init__(self, seed):
        self.rng = random.Random(seed)
        self.fresh = itertools.count()

    def mat_term(self, mats, depth=2):
        r = self.rng.random()
        if depth and r < 0.15:
            return MatMul(self.mat_term(mats, depth - 1), self.mat_term(mats, depth - 1))
        if depth and r < 0.3:
            return Sing(self.num_term([], [], depth - 1))
        if r < 0.45 or not mats:
            return MatConst(self.rng.choice("IAB"))
        return Var(self.rng.choice(mats), MAT)

    def num_term(self, mats, nums, depth=2):
        r = self.rng.random()
        if depth and mats and r < 0.3:
            return Proj(self.rng.randint(0, 1), self.rng.randint(0, 1), self.mat_term(mats, depth - 1))
        if r < 0.6 or not nums:
            return Num(self.rng.randint(0, 4))
        return Var(self.rng.choice(nums), NUM)

    def atom(self, mats, nums):
        pred = self.rng.choice(["leq", "lt", "eq", "initial", "final", "uinitial", "ufinal", "ur", "occ", "bool"])
        if pred == "bool":
            return Bool(self.rng.random() < 0.5)
        if pred == "ur":
            return Atom(pred, (self.mat_term(mats),))
        if pred == "occ":
            return Atom(pred, (self.mat_term(mats), self.num_term(mats, nums), self.mat_term(mats)))
        if pred in ("leq", "lt", "eq") and self.rng.random() < 0.5:
            return Atom(pred, (self.num_term(mats, nums), self.num_term(mats, nums)))
        return Atom(pred, (self.mat_term(mats), self.mat_term(mats)))

    def formula(self, mats, nums, depth):
        r = self.rng.random()
        if depth == 0 or r < 0.2:
            return self.atom(mats, nums)
        if r < 0.3:
            return Not(self.formula(mats, nums, depth - 1))
        if r < 0.55:
            op = self.rng.choice([And, Or, Implies])
            return op(self.formula(mats, nums, depth - 1), self.formula(mats, nums, depth - 1))
        kind = self.rng.choice(["forall", "exists"])
        v = f"v{next(self.fresh)}"
        strict = self.rng.random() < 0.3
        if self.rng.random() < 0.6 and mats:
            bound = Var(self.rng.choice(mats), MAT)
            return Bounded(kind, v, strict, bound, self.formula(mats + [v], nums, depth - 1))
        bound = self.num_term(mats, nums, 1)
        return Bounded(kind, v, strict, bound, self.formula(mats, nums + [v], depth - 1))


def corpus(size=100):
    out = []
    for seed in range(size):
        g = Gen(seed)
        f = g.formula(["p", "q"], ["k"], 4)
        if seed % 10 == 0:
            f = Unbounded("forall", "p", MAT, f)
        out.append(f)
    return out


@pytest.mark.parametrize("f", corpus(), ids=lambda f: str(hash(f) % 10**6))
def test_print_parse_round_trip(f):
    text = format_formula(f)
    g = parse(text)
    assert format_formula(g) == text
    assert parse(format_formula(g)) == g


# -- classification against grammar membership ------------------------------------


def in_class(f, cls, n):
    """Grammar membership with closure under connectives and like-quantifier contraction."""
    other = "U" if cls == "E" else "E"
    if n < 0:
        return False
    if isinstance(f, (Bool, Atom)):
        return True
    if isinstance(f, Not):
        return in_class(f.body, other, n)
    if isinstance(f, (And, Or)):
        return in_class(f.left, cls, n) and in_class(f.right, cls, n)
    if isinstance(f, Implies):
        return in_class(f.left, other, n) and in_class(f.right, cls, n)
    own = "exists" if cls == "E" else "forall"
    if n >= 1 and in_class(f, other, n - 1):
        return True
    if f.kind == own:
        return n >= 1 and (in_class(f.body, cls, n) or in_class(f.body, other, n - 1))
    return False


def least_level(f, cls):
    return next(n for n in itertools.count() if in_class(f, cls, n))


def strip_prefix(f):
    while isinstance(f, Unbounded):
        f = f.body
    return f


@pytest.mark.parametrize("f", corpus(), ids=lambda f: str(hash(f) % 10**6))
def test_classify_matches_grammar(f):
    c = classify(f)
    body = strip_prefix(f)
    assert c.e_level == least_level(body, "E")
    assert c.u_level == least_level(body, "U")
    # each level is contained in the next level of both classes
    assert in_class(body, "E", c.e_level + 1) and in_class(body, "U", c.e_level + 1)
    # negation swaps the classes
    d = classify(Not(body))
    assert (d.e_level, d.u_level) == (c.u_level, c.e_level)


def test_classify_examples():
    c = classify(parse("leq(a, b)"))
    assert c.level == 0 and c.cls == "EU" and str(c) == "E0=U0"
    c = classify(parse("forall a <= p . ur(a)"))
    assert str(c) == "U1"
    c = classify(parse("exists n <= e01(a) . occ(a, n, p)"))
    assert str(c) == "E1"


def test_displayed_definitions_classify():
    c = classify(build_proof0())
    assert (c.cls, c.level, c.prefix) == ("U", 2, 0)
    assert str(c) == "U2"
    c = classify(build_con())
    assert (c.cls, c.level, c.prefix, c.prefix_kind) == ("E", 2, 1, "forall")
    assert str(c) == "∀*E2"


def test_wellformedness():
    with pytest.raises(FormulaError):
        parse("forall a <= a . ur(a)")
    with pytest.raises(FormulaError):
        parse("ur(a) & forall* p . ur(p)")
    with pytest.raises(FormulaError):
        parse("occ(a, a, a)")


@pytest.mark.parametrize(
    "text, pos", [("ur(a", 4), ("forall a p . ur(a)", 9), ("ur(a) $", 6), ("", 0)]
)
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(FormulaSyntaxError) as exc:
        parse(text)
    assert exc.value.pos == pos


# -- evaluation ---------------------------------------------------------------------


def box_below(bound):
    ranges = [range(e + 1) for e in bound.entries()]
    return [Mat2(*e) for e in itertools.product(*ranges) if e[0] * e[3] - e[1] * e[2] == 1]


def reference_eval(f, env):
    """Naive satisfaction; matrix quantifiers range over an entry-box scan."""
    if isinstance(f, Bounded):
        bound = eval_term(f.bound, env)
        if isinstance(bound, Mat2):
            dom = [m for m in box_below(bound) if not (f.strict and m == bound)]
        else:
            dom = range(bound) if f.strict else range(bound + 1)
        results = (reference_eval(f.body, {**env, f.var: x}) for x in dom)
        return all(results) if f.kind == "forall" else any(results)
    if isinstance(f, Not):
        return not reference_eval(f.body, env)
    if isinstance(f, And):
        return reference_eval(f.left, env) and reference_eval(f.right, env)
    if isinstance(f, Or):
        return reference_eval(f.left, env) or reference_eval(f.right, env)
    if isinstance(f, Implies):
        return (not reference_eval(f.left, env)) or reference_eval(f.right, env)
    return eval_formula(f, env)


ENV = {"p": encode("BABA"), "q": encode("BB"), "k": 2}


@pytest.mark.parametrize("f", [strip_prefix(f) for f in corpus()], ids=lambda f: str(hash(f) % 10**6))
def test_eval_matches_reference(f):
    try:
        got = eval_formula(f, ENV, budget=20000)
    except BudgetExceeded:
        pytest.skip("bounded domain too large for the budget")
    assert got == reference_eval(f, ENV)


def test_eval_examples():
    assert eval_formula(parse("ur(a)"), {"a": IDENTITY})
    assert eval_formula(build_proof0(), {"p": singleton(2)})
    assert not eval_formula(build_proof0(), {"p": singleton(1)})
    assert eval_formula(parse("exists x <= sing(1) * sing(1) . eq(x, sing(1) * sing(1))"))
    assert not eval_formula(parse("exists x < sing(1) * sing(1) . eq(x, sing(1) * sing(1))"))


def test_eval_rejects_unbounded_and_free():
    with pytest.raises(FormulaError):
        eval_formula(build_con())
    with pytest.raises(FormulaError):
        eval_formula(parse("ur(a)"), {})


def test_eval_budget():
    with pytest.raises(BudgetExceeded):
        eval_formula(parse("forall a <= p . forall b <= p . leq(a, b) | leq(b, a)"), {"p": encode("BABAB")}, budget=10)


def test_proof0_formula_agrees_with_semantic():
    for w in all_words(6):
        pi = encode(w)
        if is_ur(pi):
            assert eval_formula(build_proof0(), {"p": pi}) == proof0_semantic(pi), w


def test_proof_formula_with_other_numbering():
    g = GoedelNumbering(3, 1)
    f = build_proof(g, "p", Num(1))
    for w in all_words(6):
        pi = encode(w)
        if is_ur(pi):
            assert eval_formula(f, {"p": pi}) == is_proof_of(pi, 1, g), w


def test_free_vars():
    assert free_vars(build_proof0()) == {"p"}
    assert free_vars(build_con()) == set()
