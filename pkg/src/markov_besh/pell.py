"""Powers of ``[n]``, the ladder ``s(n, m)`` and its Pell identity.

``s(n, 0) = 0``, ``s(n, 1) = 1``, ``s(n, m+1) = (n+2) s(n, m) - s(n, m-1)``,
so that ``[n]^m = s(n, m) [n] - s(n, m-1) I``.  Consecutive pairs are exactly
the nonnegative solutions of ``x^2 - (n+2) x y + y^2 = 1``; the descent in
:func:`pell_descend` walks any such pair back down to ``(1, 0)``.
"""

from __future__ import annotations

from fractions import Fraction

from .core import Mat2, QuadExt, eigenvalues


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"ladder parameter n must be >= 1, got {n}")


def s_seq(n: int, m: int) -> int:
    _check_n(n)
    if m < 0:
        raise ValueError("index m must be >= 0")
    prev, cur = 0, 1
    if m == 0:
        return 0
    for _ in range(m - 1):
        prev, cur = cur, (n + 2) * cur - prev
    return cur


def s_pair(n: int, m: int) -> tuple[int, int]:
    """``(s(n, m), s(n, m-1))``, with ``s(n, -1) = -1`` from running the recursion backwards."""
    _check_n(n)
    if m == 0:
        return 0, -1
    prev, cur = 0, 1
    for _ in range(m - 1):
        prev, cur = cur, (n + 2) * cur - prev
    return cur, prev


def s_values(n: int, upto: int) -> list[int]:
    """``[s(n, 0), ..., s(n, upto)]``."""
    _check_n(n)
    out = [0, 1]
    while len(out) <= upto:
        out.append((n + 2) * out[-1] - out[-2])
    return out[: upto + 1]


def power_via_s(n: int, m: int) -> Mat2:
    s, s_prev = s_pair(n, m)
    return Mat2(s - s_prev, n * s, s, (n + 1) * s - s_prev)


def pell_check(n: int, x: int, y: int) -> bool:
    return x * x - (n + 2) * x * y + y * y == 1


def descent_trace(n: int, x: int, y: int) -> list[tuple[int, int]]:
    """The pairs visited from ``{x, y}`` (ordered larger first) down to ``(1, 0)``."""
    _check_n(n)
    if not pell_check(n, x, y):
        raise ValueError(f"({x}, {y}) does not satisfy x^2 - {n + 2}xy + y^2 = 1")
    if x < 0 or y < 0:
        raise ValueError("ladder pairs are nonnegative")
    if x == y:
        raise ValueError("equal pair cannot be a ladder pair")
    if x < y:
        x, y = y, x
    trace = [(x, y)]
    while (x, y) != (1, 0):
        x, y = y, (n + 2) * y - x
        if y < 0 or y >= x:
            raise ArithmeticError(f"descent left the ladder at ({x}, {y})")
        trace.append((x, y))
    return trace


def pell_descend(n: int, x: int, y: int) -> int:
    """Index ``m >= 1`` with ``{x, y} == {s(n, m), s(n, m-1)}``."""
    return len(descent_trace(n, x, y))


def closed_form(n: int, m: int) -> QuadExt:
    """``(lambda^m - mu^m) / (lambda - mu)`` evaluated exactly."""
    lam, mu = eigenvalues(n)
    return (lam**m - mu**m) / (lam - mu)


def ratio_gap(n: int, m: int) -> QuadExt:
    """``s(n, m) / s(n, m-1) - lambda_n`` as an exact element of Q(sqrt(n(n+4)))."""
    s, s_prev = s_pair(n, m)
    if s_prev <= 0:
        raise ValueError("ratio gap needs s(n, m-1) > 0, i.e. m >= 2")
    lam, _ = eigenvalues(n)
    return Fraction(s, s_prev) - lam


def ratio_gap_identity(n: int, m: int) -> bool:
    """Check ``s(n,m)/s(n,m-1) - lambda = mu^(m-1) / s(n,m-1)`` and the closed form.

    The gap is positive and shrinks like ``mu^m``, so the ratios converge to
    ``lambda`` from above.
    """
    s, s_prev = s_pair(n, m)
    _, mu = eigenvalues(n)
    return (
        ratio_gap(n, m) == mu ** (m - 1) / s_prev
        and closed_form(n, m) == s
        and closed_form(n, m - 1) == s_prev
    )
