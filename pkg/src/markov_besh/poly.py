"""Integer polynomials in x0, x1, y0, y1, keyed by exponent quadruples.

A :class:`Poly` is a contracted map ``(k0, k1, l0, l1) -> coeff`` with the
constant term stored under ``(0, 0, 0, 0)``.  It is *good* when every
monomial has even x-degree minus y-degree, and *K0-shaped* when the two
degrees are equal.
"""

from __future__ import annotations

import re
from collections.abc import Mapping

VARS = ("x0", "x1", "y0", "y1")
Exp = tuple[int, int, int, int]
ZERO_EXP: Exp = (0, 0, 0, 0)


def _add_exp(e: Exp, f: Exp) -> Exp:
    return (e[0] + f[0], e[1] + f[1], e[2] + f[2], e[3] + f[3])


def graded_key(e: Exp) -> tuple:
    """Graded-lex key: total degree first, then the exponent tuple."""
    return (sum(e), e)


class Poly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, int] | None = None):
        clean: dict[Exp, int] = {}
        for e, c in (terms or {}).items():
            if len(e) != 4 or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e!r}")
            if c:
                clean[tuple(e)] = clean.get(tuple(e), 0) + int(c)
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def const(cls, c: int) -> Poly:
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, name: str) -> Poly:
        e = [0, 0, 0, 0]
        e[VARS.index(name)] = 1
        return cls({tuple(e): 1})

    @classmethod
    def monomial(cls, c: int, k0=0, k1=0, l0=0, l1=0) -> Poly:
        return cls({(k0, k1, l0, l1): c})

    @staticmethod
    def _lift(other) -> Poly:
        if isinstance(other, Poly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other) -> Poly:
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Poly:
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> Poly:
        return (-self) + other

    def __mul__(self, other) -> Poly:
        o = self._lift(other)
        if o is NotImplemented:
            return o
        out: dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _add_exp(e1, e2)
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)

    @property
    def constant(self) -> int:
        return self.terms.get(ZERO_EXP, 0)

    def is_constant(self) -> bool:
        return all(e == ZERO_EXP for e in self.terms)

    def is_good(self) -> bool:
        return all((e[0] + e[1] - e[2] - e[3]) % 2 == 0 for e in self.terms)

    def is_k0_shaped(self) -> bool:
        return all(e[0] + e[1] == e[2] + e[3] for e in self.terms if e != ZERO_EXP)

    def is_normal(self) -> bool:
        return all(e[1] <= 1 and e[3] <= 1 for e in self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        return sorted(self.terms.items(), key=lambda ec: graded_key(ec[0]), reverse=True)

    def evaluate(self, x0: int, x1: int, y0: int, y1: int) -> int:
        vals = (x0, x1, y0, y1)
        total = 0
        for e, c in self.terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            total += t
        return total

    def to_json(self) -> dict:
        return {"terms": [{"exp": list(e), "coeff": str(c)} for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj) -> Poly:
        return cls({tuple(t["exp"]): int(t["coeff"]) for t in obj["terms"]})


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        factors = []
        for name, k in zip(VARS, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_PTOKEN = re.compile(r"\s*(?:(\d+)|(x0|x1|y0|y1)|([-+*^()]))")


def parse_poly(text: str) -> Poly:
    """Parse ``3*x0^2*y0*y1 - 2 + x1``; parentheses and integer powers of them are allowed."""
    toks: list[tuple[str, str, int]] = []
    pos, text = 0, text.rstrip()
    while pos < len(text):
        m = _PTOKEN.match(text, pos)
        if not m:
            pos += len(text[pos:]) - len(text[pos:].lstrip())
            raise ValueError(f"unexpected character {text[pos]!r} at position {pos}")
        kind = {1: "int", 2: "var", 3: "op"}[m.lastindex]
        toks.append((kind, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    i = 0

    def peek():
        return toks[i]

    def take():
        nonlocal i
        i += 1
        return toks[i - 1]

    def expr() -> Poly:
        sign = 1
        if peek()[1] in "+-" and peek()[0] == "op":
            sign = -1 if take()[1] == "-" else 1
        out = term() * sign
        while peek()[0] == "op" and peek()[1] in "+-":
            op = take()[1]
            t = term()
            out = out + t if op == "+" else out - t
        return out

    def term() -> Poly:
        out = power()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            out = out * power()
        return out

    def power() -> Poly:
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, val, p = take()
            if kind != "int":
                raise ValueError(f"expected an exponent at position {p}")
            return base ** int(val)
        return base

    def atom() -> Poly:
        kind, val, p = take()
        if kind == "int":
            return Poly.const(int(val))
        if kind == "var":
            return Poly.var(val)
        if kind == "op" and val == "(":
            inner = expr()
            if take()[1] != ")":
                raise ValueError(f"unbalanced parenthesis opened at position {p}")
            return inner
        raise ValueError(f"unexpected {val or 'end of input'!r} at position {p}")

    result = expr()
    if peek()[0] != "eof":
        raise ValueError(f"trailing input at position {peek()[2]}")
    return result
