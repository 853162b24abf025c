"""The witness ``beta = [n]^a [m]^b`` and the polynomial ring around it.

Substituting ``x0 = s(n, a-1)``, ``x1 = s(n, a)``, ``y0 = s(m, b-1)``,
``y1 = s(m, b)`` turns polynomials in x0, x1, y0, y1 into integers.  The
Pell identities of the two ladders give the rewrite rules

    x1^2 -> (n+2) x0 x1 - x0^2 + 1        y1^2 -> (m+2) y0 y1 - y0^2 + 1

which terminate (each step replaces one monomial by monomials of strictly
smaller (x1-degree, y1-degree) in the product order) in a normal form where
x1 and y1 occur at most linearly.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .core import Mat2, eigenvalues, mat_mul
from .pell import pell_check, power_via_s, s_pair
from .poly import ZERO_EXP, Exp, Poly, graded_key
from .proofs import DEFAULT_GNUM, GoedelNumbering
from .urstring import elements


@dataclass(frozen=True)
class Instantiation:
    """Standard stand-ins ``n, m >= 1`` and ``a, b >= 2`` for the witness parameters."""

    n: int = 2
    m: int = 1
    a: int = 8
    b: int = 60

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be >= 1")
        if self.a < 2 or self.b < 2:
            raise ValueError("a and b must be >= 2")

    @cached_property
    def xs(self) -> tuple[int, int]:
        x1, x0 = s_pair(self.n, self.a)
        return x0, x1

    @cached_property
    def ys(self) -> tuple[int, int]:
        y1, y0 = s_pair(self.m, self.b)
        return y0, y1

    @property
    def values(self) -> tuple[int, int, int, int]:
        return (*self.xs, *self.ys)

    def pell_ok(self) -> bool:
        x0, x1 = self.xs
        y0, y1 = self.ys
        return pell_check(self.n, x1, x0) and pell_check(self.m, y1, y0)

    def perturbed(self) -> list[Instantiation]:
        return [
            Instantiation(self.n, self.m, self.a + 1, self.b),
            Instantiation(self.n, self.m, self.a, self.b + 1),
        ]


def eval_poly(p: Poly, inst: Instantiation) -> int:
    return p.evaluate(*inst.values)


# -- rewriting -------------------------------------------------------------------


def _rule(n: int, m: int, which: str) -> dict[Exp, int]:
    """Replacement for x1^2 (``which='x'``) or y1^2, as an exponent map."""
    if which == "x":
        return {(1, 1, 0, 0): n + 2, (2, 0, 0, 0): -1, ZERO_EXP: 1}
    return {(0, 0, 1, 1): m + 2, (0, 0, 2, 0): -1, ZERO_EXP: 1}


def rewrite_step(p: Poly, n: int, m: int, exp: Exp, which: str) -> Poly:
    """Rewrite one ``x1^2`` (or ``y1^2``) inside the monomial at ``exp``."""
    c = p.terms[exp]
    k0, k1, l0, l1 = exp
    if which == "x":
        if k1 < 2:
            raise ValueError("no x1^2 in this monomial")
        rest = (k0, k1 - 2, l0, l1)
    else:
        if l1 < 2:
            raise ValueError("no y1^2 in this monomial")
        rest = (k0, k1, l0, l1 - 2)
    out = dict(p.terms)
    del out[exp]
    for e, r in _rule(n, m, which).items():
        key = (rest[0] + e[0], rest[1] + e[1], rest[2] + e[2], rest[3] + e[3])
        out[key] = out.get(key, 0) + c * r
    return Poly(out)


def _redexes(p: Poly) -> list[Exp]:
    return [e for e in p.terms if e[1] >= 2 or e[3] >= 2]


def choose_redex(p: Poly, strategy: str = "default") -> tuple[Exp, str] | None:
    """The next redex under a fixed strategy.

    ``default``: highest total degree, graded-lex tie-break, x-rule before
    y-rule.  ``reverse``: lowest total degree, y-rule before x-rule.  Any
    choice terminates; the two exist to compare normal forms.
    """
    redexes = _redexes(p)
    if not redexes:
        return None
    if strategy == "default":
        e = max(redexes, key=graded_key)
        return e, ("x" if e[1] >= 2 else "y")
    if strategy == "reverse":
        e = min(redexes, key=graded_key)
        return e, ("y" if e[3] >= 2 else "x")
    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass
class NormalizeResult:
    poly: Poly
    steps: int
    trace: list[tuple[Exp, str]] = field(default_factory=list)


def normalize(
    p: Poly, n: int, m: int, strategy: str = "default", on_step=None, require_good: bool = True
) -> NormalizeResult:
    """Rewrite to normal form.  ``on_step(before, after, which)`` sees every step."""
    if require_good and not p.is_good():
        raise ValueError("normalize expects a good polynomial")
    trace = []
    while (r := choose_redex(p, strategy)) is not None:
        exp, which = r
        q = rewrite_step(p, n, m, exp, which)
        if on_step is not None:
            on_step(p, q, which)
        trace.append(r)
        p = q
    return NormalizeResult(p, len(trace), trace)


def measure(p: Poly) -> tuple[Counter, Counter]:
    """(multiset of x1-degrees, multiset of y1-degrees) over the monomials."""
    return Counter(e[1] for e in p.terms), Counter(e[3] for e in p.terms)


def pair_measure(p: Poly) -> Counter:
    """Multiset of ``(x1-degree, y1-degree)`` pairs, ordered componentwise."""
    return Counter((e[1], e[3]) for e in p.terms)


def _product_gt(u, v) -> bool:
    return u != v and u[0] >= v[0] and u[1] >= v[1]


def multiset_greater(big: Counter, small: Counter, gt=lambda u, v: u > v) -> bool:
    """Dershowitz-Manna: ``big > small`` iff they differ and every element
    ``small`` has in excess is dominated by some element ``big`` has in excess."""
    big, small = Counter(big), Counter(small)
    if big == small:
        return False
    more_big = big - small
    more_small = small - big
    return all(any(gt(x, y) for x in more_big) for y in more_small)


def pair_multiset_greater(big: Counter, small: Counter) -> bool:
    return multiset_greater(big, small, _product_gt)


# -- the witness matrix --------------------------------------------------------


def beta_numeric(inst: Instantiation) -> Mat2:
    return mat_mul(power_via_s(inst.n, inst.a), power_via_s(inst.m, inst.b))


def beta_symbolic(n: int, m: int) -> tuple[tuple[Poly, Poly], tuple[Poly, Poly]]:
    """Entries of ``[n]^a [m]^b`` as bilinear polynomials in the x's and y's."""
    x0, x1, y0, y1 = (Poly.var(v) for v in ("x0", "x1", "y0", "y1"))
    left = ((x1 - x0, n * x1), (x1, (n + 1) * x1 - x0))
    right = ((y1 - y0, m * y1), (y1, (m + 1) * y1 - y0))
    return tuple(
        tuple(left[i][0] * right[0][j] + left[i][1] * right[1][j] for j in range(2))
        for i in range(2)
    )  # type: ignore[return-value]


@dataclass
class BetaReport:
    inst: Instantiation
    elements: list[int]
    first: int
    last: int
    violations: list[int]
    symbolic_matches: bool

    @property
    def pattern_ok(self) -> bool:
        return self.elements == [self.inst.n] * self.inst.a + [self.inst.m] * self.inst.b

    def to_json(self) -> dict:
        return {
            "n": self.inst.n,
            "m": self.inst.m,
            "a": self.inst.a,
            "b": self.inst.b,
            "pattern_ok": self.pattern_ok,
            "length": len(self.elements),
            "first": self.first,
            "last": self.last,
            "violations": self.violations,
            "symbolic_matches_numeric": self.symbolic_matches,
        }


def analyze_beta(inst: Instantiation, g: GoedelNumbering = DEFAULT_GNUM) -> BetaReport:
    """Decode beta and list every position where the coded-proof condition fails.

    With ``n`` coding the axiom and ``m`` coding ``⊥``, the only failure is at
    index ``a``: the first ``⊥`` has no earlier ``⊥``.  Deleting the prefix
    ``[n]^a`` is exactly what the standard model cannot do.
    """
    beta = beta_numeric(inst)
    els = elements(beta)
    violations = []
    seen_bot = seen_ax = False
    for i, k in enumerate(els):
        if k == g.bot_imp_bot:
            seen_ax = True
        elif k == g.bot:
            if not (seen_bot and seen_ax):
                violations.append(i)
            seen_bot = True
        else:
            violations.append(i)
    sym = beta_symbolic(inst.n, inst.m)
    matches = all(
        eval_poly(sym[i][j], inst) == beta.rows()[i][j] for i in range(2) for j in range(2)
    )
    return BetaReport(inst, els, els[0], els[-1], violations, matches)


# -- domination ------------------------------------------------------------------


@dataclass
class DominationReport:
    case: str  # "y" when the top y-degree k > 0, "x" otherwise
    degree: int
    p0: int
    p1: int
    sign: int
    q: Fraction
    threshold: int
    checked: list[int]
    failures: list[int]
    below_threshold: list[int]

    @property
    def holds(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "degree": self.degree,
            "p0": str(self.p0),
            "p1": str(self.p1),
            "sign": self.sign,
            "q": str(self.q),
            "threshold": self.threshold,
            "checked": len(self.checked),
            "holds": self.holds,
            "below_threshold_failures": self.below_threshold,
        }


def top_slice(pnf: Poly) -> tuple[str, int, Poly, Poly]:
    """Split the leading slice as ``p0 * t0^k + p1 * t0^(k-1) * t1``.

    ``t`` is ``y`` when some monomial has positive y-degree (then ``p0, p1``
    are polynomials in the x's), otherwise ``x`` (then they are integers).
    """
    if not pnf.is_normal():
        raise ValueError("domination check expects a normal form")
    if pnf.is_constant():
        raise ValueError("domination check expects a nonconstant polynomial")
    k = max(e[2] + e[3] for e in pnf.terms)
    p0, p1 = {}, {}
    if k > 0:
        for e, c in pnf.terms.items():
            if e[2] + e[3] == k:
                (p1 if e[3] else p0)[(e[0], e[1], 0, 0)] = c
        return "y", k, Poly(p0), Poly(p1)
    ell = max(e[0] + e[1] for e in pnf.terms)
    for e, c in pnf.terms.items():
        if e[0] + e[1] == ell:
            (p1 if e[1] else p0)[ZERO_EXP] = c
    return "x", ell, Poly(p0), Poly(p1)


def domination_check(pnf: Poly, inst: Instantiation, i_range) -> DominationReport:
    """Check ``|p0 + p1 * s(i)/s(i-1)| > q`` for every ``i`` in ``i_range`` past the threshold.

    ``q`` is half a rational lower bound for ``|p0 + p1*lambda|``; the
    threshold ``e`` is the least index after which the ratio gap
    ``mu^(i-1)/s(i-1)`` times ``|p1|`` stays below ``|p0 + p1*lambda| - q``.
    Indices at or below the threshold are reported but not required.
    """
    case, deg, P0, P1 = top_slice(pnf)
    p0, p1 = eval_poly(P0, inst), eval_poly(P1, inst)
    if p0 == 0 and p1 == 0:
        raise ValueError("top slice vanishes: p0 = p1 = 0")
    ladder = inst.m if case == "y" else inst.n
    lam, mu = eigenvalues(ladder)
    v = p0 + p1 * lam
    sign = v.sign()
    absv = abs(v)
    q = absv.lower_bound() / 2
    # gap(i) = mu^(i-1)/s(i-1) decreases in i; find the first i where |p1|*gap(i) < |v| - q
    slack = absv - q
    threshold = 1
    if p1:
        i = 2
        while True:
            s_prev = s_pair(ladder, i)[1]
            if (abs(p1) * mu ** (i - 1) / s_prev) < slack:
                threshold = i - 1
                break
            i += 1
    checked, failures, below = [], [], []
    for i in i_range:
        if i < 2:
            continue
        s, s_prev = s_pair(ladder, i)
        ok = abs(p0 + p1 * Fraction(s, s_prev)) > q
        if i > threshold:
            checked.append(i)
            if not ok:
                failures.append(i)
        elif not ok:
            below.append(i)
    return DominationReport(case, deg, p0, p1, sign, q, threshold, checked, failures, below)


# -- membership search -----------------------------------------------------------

GENERATOR_NAMES = ("x0*y0", "x0*y1", "x1*y0", "x1*y1")
_GEN_EXPS: tuple[Exp, ...] = ((1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1))


def generator_products(degree_bound: int) -> list[tuple[int, ...]]:
    """Multisets of generator indices of size ``0..degree_bound``, graded-lex ordered."""
    out = []
    for d in range(degree_bound + 1):
        out.extend(itertools.combinations_with_replacement(range(4), d))
    return out


def product_poly(idx: tuple[int, ...]) -> Poly:
    e = [0, 0, 0, 0]
    for i in idx:
        for t in range(4):
            e[t] += _GEN_EXPS[i][t]
    return Poly({tuple(e): 1})


def format_product(idx: tuple[int, ...]) -> str:
    if not idx:
        return "1"
    counts = Counter(idx)
    parts = []
    for i in sorted(counts):
        base = f"({GENERATOR_NAMES[i]})"
        parts.append(base if counts[i] == 1 else f"{base}^{counts[i]}")
    return "*".join(parts)


@dataclass
class Certificate:
    terms: list[tuple[int, tuple[int, ...]]]  # (coefficient, generator multiset)

    def poly(self) -> Poly:
        out = Poly()
        for c, idx in self.terms:
            out = out + c * product_poly(idx)
        return out

    def __str__(self) -> str:
        out = ""
        for c, idx in self.terms:
            body = format_product(idx)
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
            elif not idx:
                body = "1"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out or "0"


@dataclass
class SearchResult:
    found: bool
    certificate: Certificate | None
    degree_bound: int
    coeff_bound: int
    products: int
    method: str
    checks: dict = field(default_factory=dict)

    @property
    def box_size(self) -> int:
        return (2 * self.coeff_bound + 1) ** self.products

    def to_json(self) -> dict:
        out = {
            "found": self.found,
            "degree_bound": self.degree_bound,
            "coeff_bound": self.coeff_bound,
            "products": self.products,
            "box_size": str(self.box_size),
            "method": self.method,
        }
        if self.certificate is not None:
            out["certificate"] = str(self.certificate)
            out["checks"] = self.checks
        return out


class SearchBudgetExhausted(RuntimeError):
    """The search gave up before covering its space; distinct from not-found."""


def _solution_space(columns: list[dict], target: dict):
    """Reduced row echelon form of ``sum c_j * columns[j] == target`` over Q.

    Returns ``(pivots, rows)`` where row ``r`` reads
    ``c[pivots[r]] + sum_f rows[r][f] * c[f] == rows[r][-1]`` over the free
    columns ``f``, or None when the system is inconsistent.
    """
    rows_keys = sorted(set(target).union(*columns), key=graded_key, reverse=True)
    ncols = len(columns)
    mat = [[Fraction(col.get(r, 0)) for col in columns] + [Fraction(target.get(r, 0))] for r in rows_keys]
    pivots = []
    row = 0
    for col in range(ncols):
        if row == len(mat):
            break
        piv = next((r for r in range(row, len(mat)) if mat[r][col] != 0), None)
        if piv is None:
            continue
        mat[row], mat[piv] = mat[piv], mat[row]
        pv = mat[row][col]
        mat[row] = [x / pv for x in mat[row]]
        for r in range(len(mat)):
            if r != row and mat[r][col] != 0:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
        pivots.append(col)
        row += 1
    if any(all(x == 0 for x in r[:-1]) and r[-1] != 0 for r in mat):
        return None
    return pivots, mat[: len(pivots)]


def _rref_solve(columns: list[dict], target: dict) -> list[Fraction] | None:
    """A rational solution with all free variables 0, or None."""
    space = _solution_space(columns, target)
    if space is None:
        return None
    sol = [Fraction(0)] * len(columns)
    for r, col in zip(space[1], space[0]):
        sol[col] = r[-1]
    return sol


def _integer_points(space, ncols: int, bound: int):
    """Every integer solution with all coefficients in ``[-bound, bound]``."""
    pivots, rows = space
    free = [j for j in range(ncols) if j not in set(pivots)]
    for values in itertools.product(range(-bound, bound + 1), repeat=len(free)):
        sol = [0] * ncols
        for j, v in zip(free, values):
            sol[j] = v
        ok = True
        for r, col in zip(rows, pivots):
            val = r[-1] - sum(r[j] * v for j, v in zip(free, values) if v)
            if val.denominator != 1 or abs(val) > bound:
                ok = False
                break
            sol[col] = int(val)
        if ok:
            yield sol


def _column_rank(columns: list[dict]) -> int:
    keys = sorted(set().union(*columns), key=graded_key)
    mat = [[Fraction(col.get(k, 0)) for k in keys] for col in columns]
    rank = 0
    ncols = len(keys)
    for c in range(ncols):
        piv = next((r for r in range(rank, len(mat)) if mat[r][c] != 0), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        for r in range(rank + 1, len(mat)):
            if mat[r][c] != 0:
                f = mat[r][c] / mat[rank][c]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
    return rank


def k0_membership_search(
    target: Poly,
    inst: Instantiation,
    degree_bound: int,
    coeff_bound: int,
    max_support: int = 3,
    enum_budget: int = 10**6,
) -> SearchResult:
    """Look for ``target`` as an integer combination of generator products.

    Products of at most ``degree_bound`` of the generators ``xi*yj`` (the
    empty product is 1) are normalized, and coefficients range over
    ``[-coeff_bound, coeff_bound]``.  Normal forms are unique, so this is a
    linear problem:

    * if the rational span of the products misses the target, the whole box
      is excluded;
    * if the solution space has few enough free variables (the box over
      them has at most ``enum_budget`` points), every integer point is
      visited; the certificate is the one with the smallest support, then
      the smallest coefficient sum, then lexicographically first;
    * otherwise basic solutions are tried by increasing support size, up to
      ``max_support`` products, and running out raises
      :class:`SearchBudgetExhausted`.
    """
    n, m = inst.n, inst.m
    prods = generator_products(degree_bound)
    cols = [normalize(product_poly(idx), n, m).poly.terms for idx in prods]
    tgt = normalize(target, n, m, require_good=False).poly.terms
    base = {"degree_bound": degree_bound, "coeff_bound": coeff_bound, "products": len(prods)}

    space = _solution_space(cols, tgt)
    if space is None:
        return SearchResult(False, None, method="rational span excludes target", **base)

    nfree = len(prods) - len(space[0])
    if (2 * coeff_bound + 1) ** nfree <= enum_budget:
        best = None
        for sol in _integer_points(space, len(prods), coeff_bound):
            key = (sum(1 for c in sol if c), sum(abs(c) for c in sol), sol)
            if best is None or key < best:
                best = key
        method = f"exhaustive over {nfree} free coefficients"
        if best is None:
            return SearchResult(False, None, method=method, **base)
        sol = best[2]
        cert = Certificate([(c, prods[j]) for j, c in enumerate(sol) if c])
        checks = verify_certificate(cert, target, inst)
        return SearchResult(all(checks.values()), cert, method=method, checks=checks, **base)

    tgt_keys = set(tgt)
    for size in range(1, max_support + 1):
        for support in itertools.combinations(range(len(prods)), size):
            sub = [cols[j] for j in support]
            if not tgt_keys <= set().union(*sub):
                continue
            if _column_rank(sub) < size:
                continue
            sol = _rref_solve(sub, tgt)
            if sol is None or any(x.denominator != 1 or abs(x) > coeff_bound for x in sol):
                continue
            cert = Certificate([(int(c), prods[j]) for c, j in zip(sol, support)])
            checks = verify_certificate(cert, target, inst)
            if all(checks.values()):
                return SearchResult(True, cert, method="basic solution", checks=checks, **base)
    raise SearchBudgetExhausted(
        f"target lies in the rational span but no integer combination with support "
        f"<= {max_support} and |coeff| <= {coeff_bound} was found"
    )


def verify_certificate(cert: Certificate, target: Poly, inst: Instantiation) -> dict:
    """Symbolic equality of normal forms plus numeric equality at three instantiations."""
    lhs = cert.poly()
    checks = {
        "symbolic": normalize(lhs, inst.n, inst.m).poly
        == normalize(target, inst.n, inst.m, require_good=False).poly
    }
    for k, i in enumerate([inst, *inst.perturbed()]):
        checks[f"numeric_{k}"] = eval_poly(lhs, i) == eval_poly(target, i)
    return checks


def pell_certificate_x0_squared(m: int) -> Poly:
    """``(x0 y1)^2 - (m+2)(x0 y0)(x0 y1) + (x0 y0)^2``, which normalizes to ``x0^2``."""
    a, b = Poly.monomial(1, 1, 0, 1, 0), Poly.monomial(1, 1, 0, 0, 1)
    return b * b - (m + 2) * a * b + a * a


def odd_or_even_below(k: int) -> bool:
    """Every ``j <= k`` is ``2q`` or ``2q+1`` for some ``q <= j`` (the standard-model triviality)."""
    return all(any(j in (2 * q, 2 * q + 1) for q in range(j + 1)) for j in range(k + 1))

