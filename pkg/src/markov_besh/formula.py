"""Two-sorted bounded-quantifier formulas over SL2(N) and the E_n / U_n hierarchy.

Sorts are ``"mat"`` (SL2(N) elements) and ``"num"`` (naturals).  Matrix
quantifiers ``forall x <= t`` range over every SL2(N) element entrywise below
the value of ``t``; number quantifiers range over ``0..t``.  Unbounded
quantifier blocks (``forall* x . ...``) may only appear as an outermost
prefix.

Concrete syntax::

    forall a <= p . ur(a)
    exists n <= e01(a) . occ(a, n, p)
    forall* p . !(ur(p) & final(sing(1), p))

Atoms: ``leq lt eq initial final uinitial ufinal ur occ``; connectives
``! & | ->``; matrix terms ``I A B sing(n) s * t`` and variables; number
terms are integers, variables and the projections ``e00 e01 e10 e11``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

from .core import GEN_A, GEN_B, IDENTITY, BudgetExceeded, Mat2, mat_mul, singleton
from .nielsen import matrices_below
from .proofs import DEFAULT_GNUM, GoedelNumbering
from .urstring import (
    is_final,
    is_initial,
    is_ur,
    leq_entrywise,
    lt_entrywise,
    occurs,
    ur_final,
    ur_initial,
)

MAT, NUM = "mat", "num"


class FormulaError(ValueError):
    """Ill-formed formula: bad sorts, bound variable in its own bound, misplaced block."""


class FormulaSyntaxError(FormulaError):
    def __init__(self, msg: str, pos: int):
        super().__init__(f"{msg} at position {pos}")
        self.pos = pos


# -- terms -----------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str
    sort: str | None = None


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class MatConst:
    name: str  # "I", "A" or "B"


@dataclass(frozen=True)
class Sing:
    arg: Term


@dataclass(frozen=True)
class MatMul:
    left: Term
    right: Term


@dataclass(frozen=True)
class Proj:
    i: int
    j: int
    arg: Term


Term = Var | Num | MatConst | Sing | MatMul | Proj

_MAT_CONSTS = {"I": IDENTITY, "A": GEN_A, "B": GEN_B}


# -- formulas --------------------------------------------------------------


@dataclass(frozen=True)
class Bool:
    value: bool


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple


@dataclass(frozen=True)
class Not:
    body: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Bounded:
    kind: str  # "forall" | "exists"
    var: str
    strict: bool
    bound: Term
    body: Formula


@dataclass(frozen=True)
class Unbounded:
    kind: str
    var: str
    sort: str | None
    body: Formula


Formula = Bool | Atom | Not | And | Or | Implies | Bounded | Unbounded

# argument sorts per predicate; None marks the polymorphic same-sort pairs
ATOM_SIGNATURES: dict[str, tuple | None] = {
    "leq": None,
    "lt": None,
    "eq": None,
    "initial": (MAT, MAT),
    "final": (MAT, MAT),
    "uinitial": (MAT, MAT),
    "ufinal": (MAT, MAT),
    "ur": (MAT,),
    "occ": (MAT, NUM, MAT),
}


def conj(*fs: Formula) -> Formula:
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def term_vars(t: Term) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, (Sing, Proj)):
        return term_vars(t.arg)
    if isinstance(t, MatMul):
        return term_vars(t.left) | term_vars(t.right)
    return set()


def free_vars(f: Formula) -> set[str]:
    if isinstance(f, Bool):
        return set()
    if isinstance(f, Atom):
        return set().union(*(term_vars(a) for a in f.args))
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or, Implies)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Bounded):
        return term_vars(f.bound) | (free_vars(f.body) - {f.var})
    if isinstance(f, Unbounded):
        return free_vars(f.body) - {f.var}
    raise TypeError(f)


def check_wellformed(f: Formula, outer: bool = True) -> None:
    if isinstance(f, Unbounded):
        if not outer:
            raise FormulaError("unbounded quantifier block must be an outermost prefix")
        check_wellformed(f.body, True)
    elif isinstance(f, Bounded):
        if f.var in term_vars(f.bound):
            raise FormulaError(f"bounding term of {f.var!r} contains {f.var!r}")
        check_wellformed(f.body, False)
    elif isinstance(f, Not):
        check_wellformed(f.body, False)
    elif isinstance(f, (And, Or, Implies)):
        check_wellformed(f.left, False)
        check_wellformed(f.right, False)


# -- classification ----------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    e_level: int
    u_level: int
    prefix: int = 0
    prefix_kind: str = ""  # "forall" or "exists" (the outermost block), "" if none

    @property
    def cls(self) -> str:
        if self.e_level < self.u_level:
            return "E"
        if self.u_level < self.e_level:
            return "U"
        return "EU"

    @property
    def level(self) -> int:
        return min(self.e_level, self.u_level)

    def __str__(self) -> str:
        if self.cls == "EU":
            core = f"E{self.level}=U{self.level}"
        else:
            core = f"{self.cls}{self.level}"
        star = {"forall": "∀*", "exists": "∃*"}.get(self.prefix_kind, "")
        return star + core if self.prefix else core


def _levels(f: Formula) -> tuple[int, int]:
    """Least ``(e, u)`` with ``f`` in E_e and in U_u."""
    if isinstance(f, (Bool, Atom)):
        return 0, 0
    if isinstance(f, Not):
        e, u = _levels(f.body)
        return u, e
    if isinstance(f, Implies):
        return _levels(Or(Not(f.left), f.right))
    if isinstance(f, (And, Or)):
        e1, u1 = _levels(f.left)
        e2, u2 = _levels(f.right)
        return max(e1, e2), max(u1, u2)
    if isinstance(f, Bounded):
        e, u = _levels(f.body)
        if f.kind == "exists":
            ee = min(max(e, 1), u + 1)
            return ee, ee + 1
        uu = min(max(u, 1), e + 1)
        return uu + 1, uu
    raise FormulaError(f"cannot classify {type(f).__name__} below the prefix")


def classify(f: Formula) -> Classification:
    check_wellformed(f)
    prefix, kind = 0, ""
    while isinstance(f, Unbounded):
        kind = kind or f.kind
        prefix += 1
        f = f.body
    e, u = _levels(f)
    return Classification(e, u, prefix, kind)


# -- sort inference ----------------------------------------------------------


class _Sorts:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if ra in (MAT, NUM) and rb in (MAT, NUM):
            raise FormulaError(f"sort clash: {ra} vs {rb}")
        if ra in (MAT, NUM):
            ra, rb = rb, ra
        self.parent[ra] = rb


def infer_sorts(f: Formula) -> Formula:
    """Annotate every variable with its sort; raise if any stays undetermined."""
    uf = _Sorts()
    counter = [0]

    def fresh(name):
        counter[0] += 1
        return ("v", name, counter[0])

    def tsort(t, scope):
        if isinstance(t, Var):
            return scope.get(t.name, ("free", t.name))
        if isinstance(t, Num):
            return NUM
        if isinstance(t, MatConst):
            return MAT
        if isinstance(t, Sing):
            uf.union(tsort(t.arg, scope), NUM)
            return MAT
        if isinstance(t, MatMul):
            uf.union(tsort(t.left, scope), MAT)
            uf.union(tsort(t.right, scope), MAT)
            return MAT
        if isinstance(t, Proj):
            uf.union(tsort(t.arg, scope), MAT)
            return NUM
        raise TypeError(t)

    binders: dict[int, object] = {}

    def walk(g, scope):
        if isinstance(g, Bool):
            return
        if isinstance(g, Atom):
            sig = ATOM_SIGNATURES.get(g.pred, "?")
            if sig == "?":
                raise FormulaError(f"unknown predicate {g.pred!r}")
            if sig is None:
                if len(g.args) != 2:
                    raise FormulaError(f"{g.pred} takes 2 arguments")
                uf.union(tsort(g.args[0], scope), tsort(g.args[1], scope))
            else:
                if len(g.args) != len(sig):
                    raise FormulaError(f"{g.pred} takes {len(sig)} arguments")
                for a, s in zip(g.args, sig):
                    uf.union(tsort(a, scope), s)
        elif isinstance(g, Not):
            walk(g.body, scope)
        elif isinstance(g, (And, Or, Implies)):
            walk(g.left, scope)
            walk(g.right, scope)
        elif isinstance(g, Bounded):
            v = fresh(g.var)
            uf.union(v, tsort(g.bound, scope))
            binders[id(g)] = v
            walk(g.body, {**scope, g.var: v})
        elif isinstance(g, Unbounded):
            v = fresh(g.var)
            if g.sort:
                uf.union(v, g.sort)
            binders[id(g)] = v
            walk(g.body, {**scope, g.var: v})

    walk(f, {})

    def resolve(key, name):
        # a variable no atom constrains has no observable sort; call it a matrix
        s = uf.find(key)
        return s if s in (MAT, NUM) else MAT

    def rterm(t, scope):
        if isinstance(t, Var):
            return Var(t.name, resolve(scope.get(t.name, ("free", t.name)), t.name))
        if isinstance(t, (Sing, Proj)):
            return replace(t, arg=rterm(t.arg, scope))
        if isinstance(t, MatMul):
            return MatMul(rterm(t.left, scope), rterm(t.right, scope))
        return t

    def rebuild(g, scope):
        if isinstance(g, Bool):
            return g
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(rterm(a, scope) for a in g.args))
        if isinstance(g, Not):
            return Not(rebuild(g.body, scope))
        if isinstance(g, (And, Or, Implies)):
            return type(g)(rebuild(g.left, scope), rebuild(g.right, scope))
        v = binders[id(g)]
        inner = {**scope, g.var: v}
        if isinstance(g, Bounded):
            return Bounded(g.kind, g.var, g.strict, rterm(g.bound, scope), rebuild(g.body, inner))
        return Unbounded(g.kind, g.var, resolve(v, g.var), rebuild(g.body, inner))

    return rebuild(f, {})


# -- evaluation --------------------------------------------------------------


def eval_term(t: Term, env: dict):
    if isinstance(t, Var):
        if t.name not in env:
            raise FormulaError(f"unassigned variable {t.name!r}")
        return env[t.name]
    if isinstance(t, Num):
        return t.value
    if isinstance(t, MatConst):
        return _MAT_CONSTS[t.name]
    if isinstance(t, Sing):
        return singleton(eval_term(t.arg, env))
    if isinstance(t, MatMul):
        return mat_mul(eval_term(t.left, env), eval_term(t.right, env))
    if isinstance(t, Proj):
        m = eval_term(t.arg, env)
        return m.rows()[t.i][t.j]
    raise TypeError(t)


def _eval_atom(pred: str, vals: list) -> bool:
    if pred == "eq":
        return vals[0] == vals[1]
    if pred in ("leq", "lt"):
        a, b = vals
        if isinstance(a, Mat2):
            return leq_entrywise(a, b) if pred == "leq" else lt_entrywise(a, b)
        return a <= b if pred == "leq" else a < b
    if pred == "ur":
        return is_ur(vals[0])
    if pred == "occ":
        return occurs(*vals)
    return {"initial": is_initial, "final": is_final, "uinitial": ur_initial, "ufinal": ur_final}[
        pred
    ](*vals)


def eval_formula(f: Formula, env: dict | None = None, budget: int = 10**6) -> bool:
    """Standard-model truth of a formula without unbounded quantifiers.

    Raises :class:`BudgetExceeded` once more than ``budget`` quantifier
    candidates have been visited.
    """
    check_wellformed(f)
    if isinstance(f, Unbounded):
        raise FormulaError("cannot evaluate an unbounded quantifier block")
    env = dict(env or {})
    missing = free_vars(f) - env.keys()
    if missing:
        raise FormulaError(f"unassigned free variables: {sorted(missing)}")
    counter = [budget]

    def candidates(g: Bounded, env):
        bound = eval_term(g.bound, env)
        if isinstance(bound, Mat2):
            for m in matrices_below(bound, counter):
                if not (g.strict and m == bound):
                    yield m
        else:
            for k in range(bound if g.strict else bound + 1):
                counter[0] -= 1
                if counter[0] < 0:
                    raise BudgetExceeded("formula evaluation exceeded its budget")
                yield k

    def ev(g, env) -> bool:
        if isinstance(g, Bool):
            return g.value
        if isinstance(g, Atom):
            return _eval_atom(g.pred, [eval_term(a, env) for a in g.args])
        if isinstance(g, Not):
            return not ev(g.body, env)
        if isinstance(g, And):
            return ev(g.left, env) and ev(g.right, env)
        if isinstance(g, Or):
            return ev(g.left, env) or ev(g.right, env)
        if isinstance(g, Implies):
            return (not ev(g.left, env)) or ev(g.right, env)
        if isinstance(g, Bounded):
            test = any if g.kind == "exists" else all
            return test(ev(g.body, {**env, g.var: c}) for c in candidates(g, env))
        raise FormulaError(f"cannot evaluate {type(g).__name__}")

    return ev(f, env)


# -- printing ------------------------------------------------------------------


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Num):
        return str(t.value)
    if isinstance(t, MatConst):
        return t.name
    if isinstance(t, Sing):
        return f"sing({format_term(t.arg)})"
    if isinstance(t, Proj):
        return f"e{t.i}{t.j}({format_term(t.arg)})"
    if isinstance(t, MatMul):
        right = format_term(t.right)
        if isinstance(t.right, MatMul):
            right = f"({right})"
        return f"{format_term(t.left)} * {right}"
    raise TypeError(t)


def format_formula(f: Formula, top: bool = True) -> str:
    if isinstance(f, Bool):
        return "true" if f.value else "false"
    if isinstance(f, Atom):
        return f"{f.pred}({', '.join(format_term(a) for a in f.args)})"
    if isinstance(f, Not):
        return "!" + format_formula(f.body, top=False)
    if isinstance(f, (And, Or, Implies)):
        op = {And: "&", Or: "|", Implies: "->"}[type(f)]
        return f"({format_formula(f.left, False)} {op} {format_formula(f.right, False)})"
    if isinstance(f, Bounded):
        rel = "<" if f.strict else "<="
        s = f"{f.kind} {f.var} {rel} {format_term(f.bound)} . {format_formula(f.body)}"
        return s if top else f"({s})"
    if isinstance(f, Unbounded):
        s = f"{f.kind}* {f.var} . {format_formula(f.body)}"
        return s if top else f"({s})"
    raise TypeError(f)


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(->|<=|[()<,.!&|*])|(\d+)|([A-Za-z_][A-Za-z0-9_]*))")
_PROJ = re.compile(r"e([01])([01])$")
_KEYWORDS = {"forall", "exists", "true", "false", "sing", *_MAT_CONSTS, *ATOM_SIGNATURES}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        kind = {1: "op", 2: "int", 3: "ident"}[m.lastindex]
        out.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(("eof", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.next()
        if val != value or kind == "eof":
            raise FormulaSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def at(self, value) -> bool:
        kind, val, _ = self.peek()
        return kind != "eof" and val == value

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.next()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.at("|"):
            self.next()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.at("&"):
            self.next()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "!" and kind == "op":
            self.next()
            return Not(self.unary())
        if val == "(" and kind == "op":
            self.next()
            f = self.formula()
            self.expect(")")
            return f
        if kind == "ident" and val in ("forall", "exists"):
            return self.quantifier()
        if kind == "ident" and val in ("true", "false"):
            self.next()
            return Bool(val == "true")
        if kind == "ident" and val in ATOM_SIGNATURES:
            self.next()
            self.expect("(")
            args = [self.term()]
            while self.at(","):
                self.next()
                args.append(self.term())
            self.expect(")")
            return Atom(val, tuple(args))
        raise FormulaSyntaxError(f"expected a formula, found {val or 'end of input'!r}", pos)

    def variable(self) -> str:
        kind, val, pos = self.next()
        if kind != "ident" or val in _KEYWORDS or _PROJ.match(val):
            raise FormulaSyntaxError(f"expected a variable name, found {val!r}", pos)
        return val

    def quantifier(self) -> Formula:
        _, q, _ = self.next()
        if self.at("*"):
            self.next()
            var = self.variable()
            self.expect(".")
            return Unbounded(q, var, None, self.formula())
        var = self.variable()
        _kind, rel, pos = self.next()
        if rel not in ("<=", "<"):
            raise FormulaSyntaxError("expected '<=' or '<' after quantified variable", pos)
        bound = self.term()
        self.expect(".")
        return Bounded(q, var, rel == "<", bound, self.formula())

    def term(self) -> Term:
        left = self.tfactor()
        while self.at("*"):
            self.next()
            left = MatMul(left, self.tfactor())
        return left

    def tfactor(self) -> Term:
        kind, val, pos = self.next()
        if kind == "int":
            return Num(int(val))
        if kind == "op" and val == "(":
            t = self.term()
            self.expect(")")
            return t
        if kind == "ident":
            if val in _MAT_CONSTS:
                return MatConst(val)
            pm = _PROJ.match(val)
            if val == "sing" or pm:
                self.expect("(")
                arg = self.term()
                self.expect(")")
                return Sing(arg) if val == "sing" else Proj(int(pm.group(1)), int(pm.group(2)), arg)
            if val in _KEYWORDS:
                raise FormulaSyntaxError(f"keyword {val!r} cannot be a term", pos)
            return Var(val)
        raise FormulaSyntaxError(f"expected a term, found {val or 'end of input'!r}", pos)


def parse(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    kind, val, pos = p.peek()
    if kind != "eof":
        raise FormulaSyntaxError(f"trailing input {val!r}", pos)
    f = infer_sorts(f)
    check_wellformed(f)
    return f


# -- the displayed definitions ---------------------------------------------------


def _n(k: int) -> Num:
    return Num(k)


def build_proof0(g: GoedelNumbering = DEFAULT_GNUM, pi: str = "p") -> Formula:
    p, a, b, c, n = Var(pi, MAT), Var("a", MAT), Var("b", MAT), Var("c", MAT), Var("n", NUM)
    alphabet = Bounded(
        "forall", "a", False, p,
        Bounded(
            "forall", "n", False, Proj(0, 1, a),
            Implies(
                Atom("occ", (a, n, p)),
                Or(Atom("eq", (n, _n(g.bot_imp_bot))), Atom("eq", (n, _n(g.bot)))),
            ),
        ),
    )  # fmt: skip
    premises = Bounded(
        "forall", "a", False, p,
        Implies(
            Atom("occ", (a, _n(g.bot), p)),
            Bounded(
                "exists", "b", True, a,
                Bounded(
                    "exists", "c", True, a,
                    And(Atom("occ", (b, _n(g.bot), a)), Atom("occ", (c, _n(g.bot_imp_bot), a))),
                ),
            ),
        ),
    )  # fmt: skip
    return conj(Atom("ur", (p,)), alphabet, premises)


def build_proof(g: GoedelNumbering = DEFAULT_GNUM, pi: str = "p", n: Term | None = None) -> Formula:
    n = Num(g.bot) if n is None else n
    return And(build_proof0(g, pi), Atom("final", (Sing(n), Var(pi, MAT))))


def build_con(g: GoedelNumbering = DEFAULT_GNUM) -> Formula:
    return Unbounded("forall", "p", MAT, Not(build_proof(g, "p", Num(g.bot))))
