"""The theory BeSh and its arithmetization as ur-strings.

BeSh has two sentences, ``bot`` and ``bot -> bot``; the second is the only
axiom and modus ponens derives ``bot`` from earlier ``bot`` and
``bot -> bot``.  A proof is coded as the ur-string of the Goedel numbers of
its lines.

Two evaluators decide the coded proof predicate: :func:`proof0_semantic`
works on the decoded element list, :func:`proof0_literal` runs the bounded
quantifiers of the defining formula over matrices directly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .core import IDENTITY, BudgetExceeded, Mat2, mat_mul, singleton
from .nielsen import all_words, encode, matrices_below
from .urstring import elements, is_final, is_ur, lt_entrywise, occurs


class Sentence(enum.Enum):
    BOT = "bot"
    BOT_IMP_BOT = "bot_imp_bot"

    def __str__(self) -> str:
        return "⊥" if self is Sentence.BOT else "(⊥→⊥)"


class Sequent(enum.Enum):
    BOT_SEQ_BOT = "bot_seq_bot"  # ⊥ ⇒ ⊥, the axiom
    SEQ_BOT = "seq_bot"  # ⇒ ⊥


@dataclass(frozen=True)
class GoedelNumbering:
    bot: int = 1
    bot_imp_bot: int = 2

    def __post_init__(self):
        if self.bot < 1 or self.bot_imp_bot < 1:
            raise ValueError("Goedel numbers must be >= 1")
        if self.bot == self.bot_imp_bot:
            raise ValueError("Goedel numbering must be injective")

    def __call__(self, s: Sentence) -> int:
        return self.bot if s is Sentence.BOT else self.bot_imp_bot

    def sentence(self, k: int) -> Sentence:
        if k == self.bot:
            return Sentence.BOT
        if k == self.bot_imp_bot:
            return Sentence.BOT_IMP_BOT
        raise ValueError(f"{k} is not the Goedel number of a BeSh sentence")


DEFAULT_GNUM = GoedelNumbering()


@dataclass(frozen=True)
class Verdict:
    valid: bool
    position: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        if self.valid:
            return {"verdict": "valid"}
        return {"verdict": "invalid", "position": self.position, "reason": self.reason}


def _premise_scan(lines, conclusion, axiom) -> Verdict:
    seen_conclusion = seen_axiom = False
    for i, s in enumerate(lines):
        if s == axiom:
            seen_axiom = True
        elif s == conclusion:
            if not (seen_conclusion and seen_axiom):
                return Verdict(False, i, "modus ponens lacks strictly earlier premises")
            seen_conclusion = True
        else:
            return Verdict(False, i, f"not a sentence of the language: {s!r}")
    return Verdict(True)


def check_hilbert(proof) -> Verdict:
    return _premise_scan(list(proof), Sentence.BOT, Sentence.BOT_IMP_BOT)


def check_sequent(proof) -> Verdict:
    """Sequent variant: axiom ``⊥ ⇒ ⊥``, and cut takes ``⇒ ⊥``, ``⊥ ⇒ ⊥`` to ``⇒ ⊥``."""
    return _premise_scan(list(proof), Sequent.SEQ_BOT, Sequent.BOT_SEQ_BOT)


def sequent_to_hilbert(proof) -> list[Sentence]:
    table = {Sequent.BOT_SEQ_BOT: Sentence.BOT_IMP_BOT, Sequent.SEQ_BOT: Sentence.BOT}
    return [table[s] for s in proof]


def encode_proof(proof, g: GoedelNumbering = DEFAULT_GNUM) -> Mat2:
    acc = IDENTITY
    for s in proof:
        acc = mat_mul(acc, singleton(g(s)))
    return acc


def decode_proof(pi: Mat2, g: GoedelNumbering = DEFAULT_GNUM) -> list[Sentence]:
    return [g.sentence(k) for k in elements(pi)]


def proof0_semantic(pi: Mat2, g: GoedelNumbering = DEFAULT_GNUM) -> bool:
    if not (pi.is_sl2n() and is_ur(pi)):
        return False
    return bool(_premise_scan(elements(pi), g.bot, g.bot_imp_bot))


def proof0_literal(pi: Mat2, g: GoedelNumbering = DEFAULT_GNUM, cap: int = 10**6) -> bool:
    """Evaluate the bounded U2 definition of proof0 by brute enumeration.

    Every quantifier over matrices runs over all SL2(N) elements entrywise
    below its bound.  Raises :class:`BudgetExceeded` once more than ``cap``
    candidates have been visited in total.
    """
    budget = [cap]

    def count(k: int = 1) -> None:
        budget[0] -= k
        if budget[0] < 0:
            raise BudgetExceeded(f"proof0_literal exceeded cap={cap}")

    if not is_ur(pi):
        return False
    # forall alpha <= pi  forall n <= alpha_01 (occ(alpha, n, pi) -> n in alphabet)
    for alpha in matrices_below(pi, budget):
        for n in range(alpha.m01 + 1):
            count()
            if occurs(alpha, n, pi) and n not in (g.bot_imp_bot, g.bot):
                return False
    # forall alpha <= pi (occ(alpha, bot, pi) -> exists beta < alpha exists gamma < alpha
    #   (occ(beta, bot, alpha) & occ(gamma, bot_imp_bot, alpha)))
    for alpha in matrices_below(pi, budget):
        if not occurs(alpha, g.bot, pi):
            continue
        found = False
        for beta in matrices_below(alpha, budget):
            if not (lt_entrywise(beta, alpha) and occurs(beta, g.bot, alpha)):
                continue
            for gamma in matrices_below(alpha, budget):
                if lt_entrywise(gamma, alpha) and occurs(gamma, g.bot_imp_bot, alpha):
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def is_proof_of(pi: Mat2, n: int, g: GoedelNumbering = DEFAULT_GNUM, literal: bool = False) -> bool:
    if not is_final(singleton(n), pi):
        return False
    return proof0_literal(pi, g) if literal else proof0_semantic(pi, g)


def con_scan(g: GoedelNumbering = DEFAULT_GNUM, max_word_len: int = 10) -> bool:
    """No word of length <= max_word_len codes a proof of ``⊥``."""
    target = g.bot
    return not any(is_proof_of(encode(w), target, g) for w in all_words(max_word_len))


def first_bot_argument(proof) -> Verdict:
    """Why no proof of ``⊥`` exists: the first ``⊥`` cannot have an earlier ``⊥``.

    Returns the verdict of :func:`check_hilbert` restricted to the first
    occurrence of ``⊥`` (valid when there is none).
    """
    lines = list(proof)
    if Sentence.BOT not in lines:
        return Verdict(True)
    i = lines.index(Sentence.BOT)
    return Verdict(False, i, "first occurrence of ⊥ has no strictly earlier ⊥")
