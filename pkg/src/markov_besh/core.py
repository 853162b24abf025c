"""Exact 2x2 integer matrices and exact arithmetic in Q(sqrt d).

Everything downstream (word coding, ur-strings, proofs, Pell ladders) is
expressed through :class:`Mat2`.  :class:`QuadExt` holds the eigenvalues of
the singleton matrices ``[n]`` and is compared exactly, never via floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

Rational = int | Fraction


class BudgetExceeded(RuntimeError):
    """A bounded enumeration ran past its candidate budget."""


@dataclass(frozen=True)
class Mat2:
    """Row-major 2x2 integer matrix ``[[m00, m01], [m10, m11]]``."""

    m00: int
    m01: int
    m10: int
    m11: int

    def __post_init__(self):
        for name in ("m00", "m01", "m10", "m11"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int):
                raise TypeError(f"{name} must be an int, got {type(v).__name__}")

    @classmethod
    def from_rows(cls, rows) -> Mat2:
        (a, b), (c, d) = rows
        return cls(int(a), int(b), int(c), int(d))

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.m00, self.m01), (self.m10, self.m11))

    def entries(self) -> tuple[int, int, int, int]:
        return (self.m00, self.m01, self.m10, self.m11)

    def det(self) -> int:
        return self.m00 * self.m11 - self.m01 * self.m10

    def is_nonneg(self) -> bool:
        return self.m00 >= 0 and self.m01 >= 0 and self.m10 >= 0 and self.m11 >= 0

    def is_sl2n(self) -> bool:
        """Membership in SL2(N): determinant one and nonnegative entries."""
        return self.is_nonneg() and self.det() == 1

    def __matmul__(self, other: Mat2) -> Mat2:
        return mat_mul(self, other)

    def __mul__(self, other: Mat2) -> Mat2:
        return mat_mul(self, other)

    def __pow__(self, k: int) -> Mat2:
        if k < 0:
            return mat_inv(self) ** (-k)
        result, base = IDENTITY, self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def __str__(self) -> str:
        return f"[[{self.m00},{self.m01}],[{self.m10},{self.m11}]]"

    def to_json(self) -> dict[str, str]:
        return {k: str(v) for k, v in zip(("m00", "m01", "m10", "m11"), self.entries())}

    @classmethod
    def from_json(cls, obj) -> Mat2:
        """Accept the ``{"m00": "..."}`` object form or a nested ``[[a,b],[c,d]]`` list."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        if isinstance(obj, dict):
            try:
                return cls(*(int(obj[k]) for k in ("m00", "m01", "m10", "m11")))
            except KeyError as exc:
                raise ValueError(f"matrix object missing entry {exc}") from None
        if isinstance(obj, list) and len(obj) == 2 and all(
            isinstance(r, list) and len(r) == 2 for r in obj
        ):
            return cls.from_rows(obj)
        raise ValueError(f"not a 2x2 matrix: {obj!r}")


IDENTITY = Mat2(1, 0, 0, 1)
GEN_A = Mat2(1, 1, 0, 1)
GEN_B = Mat2(1, 0, 1, 1)


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return Mat2(
        a.m00 * b.m00 + a.m01 * b.m10,
        a.m00 * b.m01 + a.m01 * b.m11,
        a.m10 * b.m00 + a.m11 * b.m10,
        a.m10 * b.m01 + a.m11 * b.m11,
    )


def mat_inv(a: Mat2) -> Mat2:
    """Inverse of a determinant-one matrix (its adjugate)."""
    if a.det() != 1:
        raise ValueError(f"matrix {a} has determinant {a.det()}, expected 1")
    return Mat2(a.m11, -a.m01, -a.m10, a.m00)


def singleton(n: int) -> Mat2:
    """The one-element ur-string ``[n] = B A^n = [[1, n], [1, n+1]]``."""
    if n < 0:
        raise ValueError("singleton element must be a natural number")
    return Mat2(1, n, 1, n + 1)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class QuadExt:
    """The number ``r0 + r1*sqrt(d)`` with rational ``r0``, ``r1``.

    Operands must share ``d``; mixing radicands raises ``ValueError``.
    """

    r0: Fraction
    r1: Fraction
    d: int

    def __init__(self, r0: Rational, r1: Rational = 0, d: int = 0):
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise ValueError(f"radicand must be a nonnegative int, got {d!r}")
        object.__setattr__(self, "r0", Fraction(r0))
        object.__setattr__(self, "r1", Fraction(r1))
        object.__setattr__(self, "d", d)

    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError(f"radicand mismatch: {self.d} vs {other.d}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExt(other, 0, self.d)
        return NotImplemented

    def __add__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(self.r0 + o.r0, self.r1 + o.r1, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.r0, -self.r1, self.d)

    def __sub__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other) -> QuadExt:
        return (-self) + other

    def __mul__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadExt(
            self.r0 * o.r0 + self.r1 * o.r1 * self.d,
            self.r0 * o.r1 + self.r1 * o.r0,
            self.d,
        )

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.r0, -self.r1, self.d)

    def norm(self) -> Fraction:
        return self.r0 * self.r0 - self.r1 * self.r1 * self.d

    def inv(self) -> QuadExt:
        if self.sign() == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        nrm = self.norm()
        if nrm == 0:
            # only possible when d is a perfect square: sqrt(d) is rational
            return QuadExt(1 / (self.r0 + self.r1 * isqrt(self.d)), 0, self.d)
        c = self.conjugate()
        return QuadExt(c.r0 / nrm, c.r1 / nrm, self.d)

    def __truediv__(self, other) -> QuadExt:
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other) -> QuadExt:
        return self.inv() * other

    def __pow__(self, k: int) -> QuadExt:
        if k < 0:
            return self.inv() ** (-k)
        result, base = QuadExt(1, 0, self.d), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}; decided by squaring, never by floats."""
        s0, s1 = _sign(self.r0), _sign(self.r1)
        if self.d == 0 or s1 == 0:
            return s0
        if s0 == 0 or s0 == s1:
            return s1
        lhs, rhs = self.r0 * self.r0, self.r1 * self.r1 * self.d
        if lhs > rhs:
            return s0
        if lhs < rhs:
            return s1
        return 0

    def compare(self, other) -> int:
        return (self - other).sign()

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if isinstance(other, (QuadExt, int, Fraction)) else NotImplemented
        if o is NotImplemented:
            return NotImplemented
        return (self - o).sign() == 0

    def __hash__(self):
        return hash((self.r0, self.r1, self.d))

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __le__(self, other) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other) -> bool:
        return self.compare(other) >= 0

    def __abs__(self) -> QuadExt:
        return -self if self.sign() < 0 else self

    def lower_bound(self, bits: int = 8) -> Fraction:
        """A rational ``q <= self``, tightening until its sign matches ``self``."""
        if self.r1 == 0:
            return self.r0
        if self.sign() == 0:
            return Fraction(0)
        while True:
            scale = 1 << bits
            s = isqrt(self.d * scale * scale)
            lo, hi = Fraction(s, scale), Fraction(s + 1, scale)
            cand = self.r0 + (self.r1 * lo if self.r1 > 0 else self.r1 * hi)
            if _sign(cand) == self.sign():
                return cand
            bits *= 2

    def __float__(self) -> float:
        return float(self.r0) + float(self.r1) * self.d**0.5

    def __repr__(self) -> str:
        return f"QuadExt({self.r0}, {self.r1}, d={self.d})"


def eigenvalues(n: int) -> tuple[QuadExt, QuadExt]:
    """``(lambda_n, mu_n)``, the roots of ``x^2 - (n+2)x + 1`` in Q(sqrt(n(n+4)))."""
    if n < 1:
        raise ValueError("eigenvalues degenerate (both 1) for n = 0; need n >= 1")
    d = n * (n + 4)
    half = Fraction(1, 2)
    return QuadExt(Fraction(n + 2, 2), half, d), QuadExt(Fraction(n + 2, 2), -half, d)
