"""Bezout certificates and the divisibility argument that collapses the cut J.

The three ring facts are implemented constructively: each takes Bezout
certificates for its hypotheses and builds the certificate (or quotient) for
its conclusion with ring operations only, the way the argument uses them.
``gcd`` is consulted only to cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod


@dataclass(frozen=True)
class BezoutCert:
    a: int
    b: int
    g: int
    x: int
    y: int

    def valid(self) -> bool:
        return (
            self.x * self.a + self.y * self.b == self.g
            and self.g >= 0
            and (self.g == 0 or (self.a % self.g == 0 and self.b % self.g == 0))
        )

    @property
    def coprime(self) -> bool:
        return self.g == 1 and self.valid()


def bezout(a: int, b: int) -> BezoutCert:
    """Extended Euclid: ``x*a + y*b == gcd(a, b)``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return BezoutCert(a, b, old_r, old_x, old_y)


def fact_a(i: int, j: int, v: int) -> BezoutCert:
    """``1+iv`` and ``1+jv`` are co-prime when ``(j-i) | v``.

    With ``v = (j-i) w``: ``j(1+iv) - i(1+jv) = j - i``, so
    ``1 = (1+iv) - i w (j-i) = (1 - ijw)(1+iv) + i^2 w (1+jv)``.
    """
    if i == j:
        raise ValueError("fact (a) needs i != j")
    if v % (j - i):
        raise ValueError(f"fact (a) needs (j-i) | v; {j - i} does not divide {v}")
    w = v // (j - i)
    return BezoutCert(1 + i * v, 1 + j * v, 1, 1 - i * j * w, i * i * w)


def fact_b(ac: BezoutCert, bc: BezoutCert) -> BezoutCert:
    """From ``x a + y c = 1`` and ``x' b + y' c = 1`` build one for ``ab`` and ``c``."""
    if ac.b != bc.b or not (ac.coprime and bc.coprime):
        raise ValueError("fact (b) needs certificates (a, c) and (b, c) with the same c")
    a, b, c = ac.a, bc.a, ac.b
    # (x a + y c)(x' b + y' c) = x x' ab + (x a y' + y x' b + y y' c) c
    return BezoutCert(a * b, c, 1, ac.x * bc.x, ac.x * a * bc.y + ac.y * bc.x * b + ac.y * bc.y * c)


def fact_c(ab: BezoutCert, c: int) -> int:
    """From ``x a + y b = 1``, ``a | c`` and ``b | c`` return ``c / (ab)``.

    ``c = x a c + y b c = ab (x (c/b) + y (c/a))``.
    """
    a, b = ab.a, ab.b
    if not ab.coprime:
        raise ValueError("fact (c) needs a co-prime certificate")
    if c % a or c % b:
        raise ValueError("fact (c) needs a | c and b | c")
    quotient = ab.x * (c // b) + ab.y * (c // a)
    assert a * b * quotient == c
    return quotient


@dataclass
class FactReport:
    i: int
    j: int
    v: int
    hypothesis: bool
    coprime: bool
    certificate: BezoutCert | None
    fact_b: bool
    fact_c: bool

    @property
    def holds(self) -> bool:
        return (not self.hypothesis) or (self.coprime and self.fact_b and self.fact_c)

    def __bool__(self) -> bool:
        return self.holds


def fact_a_check(i: int, j: int, v: int) -> FactReport:
    """Check fact (a) at ``i, j, v``, plus facts (b) and (c) on derived numbers.

    For (b): ``c = 1 + ab`` is co-prime to both ``a`` and ``b``, so ``ab``
    and ``c`` must be co-prime.  For (c): ``ab | ab(1+v)``.
    """
    if i == j:
        raise ValueError("fact (a) needs i != j")
    a, b = 1 + i * v, 1 + j * v
    hyp = v % (j - i) == 0
    coprime = gcd(a, b) == 1
    if not hyp:
        return FactReport(i, j, v, False, coprime, None, True, True)
    cert = fact_a(i, j, v)
    c = 1 + a * b
    derived = fact_b(BezoutCert(a, c, 1, -b, 1), BezoutCert(b, c, 1, -a, 1))
    b_ok = derived.coprime and gcd(a * b, c) == 1
    c_ok = fact_c(cert, a * b * (1 + v)) == 1 + v
    return FactReport(i, j, v, True, coprime and cert.coprime, cert, b_ok, c_ok)


def family_witness(a: int, v: int) -> int:
    """``u = prod_{i <= a} (1 + i v)``; every ``1 + i v`` with ``i <= a`` divides it."""
    if a < 0:
        raise ValueError("a must be >= 0")
    return prod(1 + i * v for i in range(a + 1))


@dataclass
class CutReport:
    a: int
    c: int
    u0: int
    u: int
    factors: list[int]
    pairwise_coprime: bool
    divisibility: list[bool] = field(default_factory=list)
    growth: list[bool] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.pairwise_coprime and all(self.divisibility) and all(self.growth)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "c": self.c,
            "u0": str(self.u0),
            "u": str(self.u),
            "factors": [str(f) for f in self.factors],
            "pairwise_coprime": self.pairwise_coprime,
            "product_divides_u": all(self.divisibility),
            "powers_below_u": all(self.growth),
            "ok": self.ok,
        }


def cut_collapse_demo(a: int, c: int) -> CutReport:
    """Replay the collapse argument with standard numbers.

    ``u0`` witnesses the family for ``v = 1``; ``u`` witnesses it for
    ``v = u0 c``.  The factors ``1 + i u0 c`` are pairwise co-prime by fact
    (a), and induction with (b) and (c) shows their running products divide
    ``u``, which then exceeds ``c^n`` for every ``n <= a``.
    """
    if a < 1 or c < 2:
        raise ValueError("need a >= 1 and c >= 2")
    u0 = family_witness(a, 1)
    v = u0 * c
    u = family_witness(a, v)
    factors = [1 + i * v for i in range(1, a + 1)]

    pairwise = True
    for i in range(1, a + 1):
        for j in range(i + 1, a + 1):
            cert = fact_a(i, j, v)  # j - i <= a divides u0, hence v
            pairwise &= cert.coprime and gcd(cert.a, cert.b) == 1

    report = CutReport(a, c, u0, u, factors, pairwise)
    running = 1  # empty product; divides u
    report.divisibility.append(u % running == 0)
    for k in range(1, a + 1):
        nxt = factors[k - 1]
        # running = (1+v)...(1+(k-1)v) is co-prime to 1+kv by repeated (b)
        acc = BezoutCert(1, nxt, 1, 1, 0)
        for i in range(1, k):
            acc = fact_b(acc, fact_a(i, k, v))
        assert acc.a == running
        fact_c(acc, u)  # raises unless running | u and nxt | u
        running *= nxt
        report.divisibility.append(u % running == 0)
    report.growth = [c**n < u for n in range(a + 1)]
    return report
