"""Words over {A, B} <-> SL2(N), via Nielsen's free-monoid isomorphism.

Words are plain ``str`` values over the characters ``'A'`` and ``'B'``.
Decoding peels letters off the left: a non-identity SL2(N) matrix has its
top row entrywise >= its bottom row exactly when it starts with ``A``, and
the reverse exactly when it starts with ``B``.
"""

from __future__ import annotations

from collections.abc import Iterator

from .core import GEN_A, GEN_B, IDENTITY, BudgetExceeded, Mat2, mat_mul

GENERATORS = {"A": GEN_A, "B": GEN_B}


def check_word(w: str) -> str:
    bad = set(w) - {"A", "B"}
    if bad:
        raise ValueError(f"word contains letters outside {{A, B}}: {sorted(bad)}")
    return w


def encode(w: str) -> Mat2:
    check_word(w)
    m = IDENTITY
    # run-length: A^k = [[1,k],[0,1]] and B^k = [[1,0],[k,1]]
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        k = j - i
        block = Mat2(1, k, 0, 1) if w[i] == "A" else Mat2(1, 0, k, 1)
        m = mat_mul(m, block)
        i = j
    return m


def _check_decodable(m: Mat2) -> None:
    if m.det() != 1:
        raise ValueError(f"cannot decode {m}: determinant {m.det()} != 1")
    if not m.is_nonneg():
        raise ValueError(f"cannot decode {m}: negative entry")


def decode_runs(m: Mat2) -> list[tuple[str, int]]:
    """Run-length Nielsen factorization: ``[(letter, count), ...]``.

    A whole block of equal letters is divided out at once, so tally
    numerals ``A^k`` with astronomically large ``k`` decode in a few steps.
    """
    _check_decodable(m)
    a, b, c, d = m.entries()
    runs: list[tuple[str, int]] = []
    while (a, b, c, d) != (1, 0, 0, 1):
        if a >= c and b >= d:
            # largest k with row0 - k*row1 >= 0; row1 is never zero
            k = min(x // y for x, y in ((a, c), (b, d)) if y)
            a, b = a - k * c, b - k * d
            runs.append(("A", k))
        elif c >= a and d >= b:
            k = min(x // y for x, y in ((c, a), (d, b)) if y)
            c, d = c - k * a, d - k * b
            runs.append(("B", k))
        else:
            raise AssertionError(f"no peel case applies to {m}; SL2(N) invariant violated")
    return runs


def decode(m: Mat2, fast: bool = True) -> str:
    """The unique word ``w`` with ``encode(w) == m``."""
    if fast:
        return "".join(letter * k for letter, k in decode_runs(m))
    _check_decodable(m)
    a, b, c, d = m.entries()
    out = []
    while (a, b, c, d) != (1, 0, 0, 1):
        if a >= c and b >= d:
            a, b = a - c, b - d
            out.append("A")
        elif c >= a and d >= b:
            c, d = c - a, d - b
            out.append("B")
        else:
            raise AssertionError(f"no peel case applies to {m}; SL2(N) invariant violated")
    return "".join(out)


def word_length(m: Mat2) -> int:
    return sum(k for _, k in decode_runs(m))


def all_words(max_len: int) -> Iterator[str]:
    """Every word of length <= max_len, shortest first, then lexicographic."""
    level = [""]
    for _ in range(max_len + 1):
        yield from level
        level = [w + x for w in level for x in "AB"]


def matrices_below(bound: Mat2, budget: list[int] | None = None) -> Iterator[Mat2]:
    """All SL2(N) matrices entrywise <= ``bound``.

    Right-multiplying by a generator never decreases an entry, so a DFS over
    words that prunes as soon as the bound is exceeded is complete and visits
    each matrix once.  ``budget`` is a one-element mutable counter shared
    across nested enumerations; :class:`BudgetExceeded` is raised when it
    would go negative.
    """
    b00, b01, b10, b11 = bound.entries()
    stack = [IDENTITY]
    if not (b00 >= 1 and b01 >= 0 and b10 >= 0 and b11 >= 1):
        return
    while stack:
        m = stack.pop()
        if budget is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise BudgetExceeded("bounded enumeration exceeded its candidate budget")
        yield m
        for g in (GEN_B, GEN_A):
            nxt = mat_mul(m, g)
            if nxt.m00 <= b00 and nxt.m01 <= b01 and nxt.m10 <= b10 and nxt.m11 <= b11:
                stack.append(nxt)
