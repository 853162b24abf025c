"""Quantifier-free string predicates on SL2(N) and ur-strings.

An ur-string is the identity or a matrix starting with ``B``; it codes the
list ``n0, ..., n(k-1)`` as ``B A^n0 ... B A^n(k-1) = [n0] ... [n(k-1)]``.

The predicates here are the inequality definitions.  :func:`elements` and
the word-level helpers are the decode-based semantics used to cross-check
them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .core import GEN_B, IDENTITY, Mat2, mat_inv, mat_mul, singleton
from .nielsen import decode_runs


def leq_entrywise(a: Mat2, b: Mat2) -> bool:
    return a.m00 <= b.m00 and a.m01 <= b.m01 and a.m10 <= b.m10 and a.m11 <= b.m11


def lt_entrywise(a: Mat2, b: Mat2) -> bool:
    return leq_entrywise(a, b) and a != b


def is_initial(a: Mat2, b: Mat2) -> bool:
    """``a`` is a prefix of ``b``: the four inequalities saying a^-1 b >= 0."""
    return (
        a.m11 * b.m00 >= a.m01 * b.m10
        and a.m11 * b.m01 >= a.m01 * b.m11
        and a.m00 * b.m10 >= a.m10 * b.m00
        and a.m00 * b.m11 >= a.m10 * b.m01
    )


def is_final(a: Mat2, b: Mat2) -> bool:
    """``a`` is a suffix of ``b``: the four inequalities saying b a^-1 >= 0."""
    return (
        b.m00 * a.m11 >= b.m01 * a.m10
        and b.m01 * a.m00 >= b.m00 * a.m01
        and b.m10 * a.m11 >= b.m11 * a.m10
        and b.m11 * a.m00 >= b.m10 * a.m01
    )


def is_ur(a: Mat2) -> bool:
    return a == IDENTITY or is_initial(GEN_B, a)


def ur_initial(a: Mat2, b: Mat2) -> bool:
    return is_initial(a, b) and is_ur(a) and is_ur(mat_mul(mat_inv(a), b))


def ur_final(a: Mat2, b: Mat2) -> bool:
    return is_final(a, b) and is_ur(a) and is_ur(mat_mul(b, mat_inv(a)))


def occurs(a: Mat2, n: int, b: Mat2) -> bool:
    """``a`` is an occurrence of ``n`` in ``b``: an ur-prefix of ``b`` ending in ``[n]``."""
    if n < 0:
        return False
    return ur_initial(a, b) and ur_final(singleton(n), a)


def elements(b: Mat2) -> list[int]:
    """The coded list ``n0, ..., n(k-1)``; rejects matrices that are not ur-strings."""
    runs = decode_runs(b)
    if runs and runs[0][0] != "B":
        raise ValueError(f"{b} is not an ur-string (starts with A)")
    out: list[int] = []
    for letter, k in runs:
        if letter == "B":
            out.extend([0] * k)
        else:
            out[-1] = k
    return out


def occurrence_prefixes(b: Mat2) -> list[Mat2]:
    """The prefix matrices ``[n0], [n0][n1], ...``: one per occurrence, in order."""
    out, acc = [], IDENTITY
    for n in elements(b):
        acc = mat_mul(acc, singleton(n))
        out.append(acc)
    return out


def encode_elements(ns) -> Mat2:
    acc = IDENTITY
    for n in ns:
        acc = mat_mul(acc, singleton(n))
    return acc


@dataclass(frozen=True)
class UrStringView:
    matrix: Mat2
    elements: tuple[int, ...]

    @classmethod
    def of(cls, m: Mat2) -> UrStringView:
        return cls(m, tuple(elements(m)))

    def __len__(self) -> int:
        return len(self.elements)


def editors_split(a: Mat2, b: Mat2, c: Mat2, d: Mat2) -> tuple[Mat2, Literal["left", "right"]]:
    """Mediating string for ``a b = c d``.

    Returns ``(eta, "left")`` with ``a = c eta`` and ``eta b = d``, or
    ``(eta, "right")`` with ``a eta = c`` and ``b = eta d``.
    """
    if mat_mul(a, b) != mat_mul(c, d):
        raise ValueError("editors_split needs a*b == c*d")
    la = sum(k for _, k in decode_runs(a))
    lc = sum(k for _, k in decode_runs(c))
    if la >= lc:
        eta = mat_mul(mat_inv(c), a)
        side: Literal["left", "right"] = "left"
        ok = mat_mul(eta, b) == d
    else:
        eta = mat_mul(mat_inv(a), c)
        side = "right"
        ok = mat_mul(eta, d) == b
    if not (ok and eta.is_sl2n()):
        raise AssertionError("editors property failed; free-monoid invariant violated")
    return eta, side


def inspect(m: Mat2) -> dict:
    ur = is_ur(m)
    return {
        "ur": ur,
        "elements": elements(m) if ur else None,
        "word_length": sum(k for _, k in decode_runs(m)),
    }
