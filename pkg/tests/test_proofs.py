import itertools
import random

import pytest

from markov_besh.core import IDENTITY, BudgetExceeded, Mat2, singleton
from markov_besh.nielsen import all_words, encode
from markov_besh.proofs import (
    DEFAULT_GNUM,
    GoedelNumbering,
    Sentence,
    Sequent,
    check_hilbert,
    check_sequent,
    con_scan,
    decode_proof,
    encode_proof,
    first_bot_argument,
    is_proof_of,
    proof0_literal,
    proof0_semantic,
    sequent_to_hilbert,
)
from markov_besh.urstring import is_ur

BOT, AX = Sentence.BOT, Sentence.BOT_IMP_BOT


def reference_valid(lines):
    """Each line is the axiom or follows by modus ponens from two earlier lines."""
    for i, s in enumerate(lines):
        if s == AX:
            continue
        earlier = lines[:i]
        # modus ponens from phi and (phi -> s); the only implication available is (bot -> bot)
        if not any(p == BOT and q == AX for p, q in itertools.product(earlier, earlier)):
            return False
    return True


def test_hilbert_examples():
    assert check_hilbert([AX]).valid
    v = check_hilbert([BOT])
    assert not v.valid and v.position == 0
    v = check_hilbert([AX, BOT])
    assert not v.valid and v.position == 1
    assert check_hilbert([]).valid


def test_sequent_examples():
    assert check_sequent([Sequent.BOT_SEQ_BOT]).valid
    v = check_sequent([Sequent.SEQ_BOT])
    assert not v.valid and v.position == 0
    v = check_sequent([Sequent.BOT_SEQ_BOT, Sequent.SEQ_BOT])
    assert not v.valid and v.position == 1


def all_proofs(max_len):
    for k in range(max_len + 1):
        yield from itertools.product([BOT, AX], repeat=k)


def test_hilbert_matches_reference():
    for p in all_proofs(8):
        assert check_hilbert(p).valid == reference_valid(list(p))


def test_sequent_hilbert_translation():
    table = {BOT: Sequent.SEQ_BOT, AX: Sequent.BOT_SEQ_BOT}
    for p in all_proofs(7):
        seq = [table[s] for s in p]
        assert sequent_to_hilbert(seq) == list(p)
        assert check_sequent(seq).valid == check_hilbert(p).valid


def test_encode_examples():
    assert encode_proof([]) == IDENTITY
    assert encode_proof([AX]) == Mat2.from_rows([[1, 2], [1, 3]])
    assert encode_proof([AX, AX]) == Mat2.from_rows([[3, 8], [4, 11]])


def test_goedel_numbering_validation():
    with pytest.raises(ValueError):
        GoedelNumbering(1, 1)
    with pytest.raises(ValueError):
        GoedelNumbering(0, 2)
    assert DEFAULT_GNUM(BOT) == 1 and DEFAULT_GNUM(AX) == 2


def test_semantic_examples():
    assert proof0_semantic(singleton(2))
    assert not proof0_semantic(singleton(1))
    assert not proof0_semantic(singleton(3))
    assert proof0_semantic(IDENTITY)


def test_literal_examples():
    assert proof0_literal(singleton(2), cap=10**6)
    assert not proof0_literal(singleton(1), cap=10**6)
    # the identity is itself the only candidate at each of the three quantifier levels it reaches
    assert proof0_literal(IDENTITY, cap=3)


def test_literal_budget():
    with pytest.raises(BudgetExceeded):
        proof0_literal(encode_proof([AX, AX, AX, AX]), cap=5)


def test_encode_check_agree_on_short_proofs():
    for p in all_proofs(6):
        pi = encode_proof(p)
        assert proof0_semantic(pi) == check_hilbert(p).valid
        assert decode_proof(pi) == list(p)


def test_semantic_valid_strings_decode_to_valid_proofs():
    for w in all_words(12):
        pi = encode(w)
        if proof0_semantic(pi):
            assert check_hilbert(decode_proof(pi)).valid


@pytest.mark.parametrize("g", [GoedelNumbering(1, 2), GoedelNumbering(3, 1), GoedelNumbering(2, 5)])
def test_other_numberings(g):
    for p in all_proofs(5):
        pi = encode_proof(p, g)
        assert proof0_semantic(pi, g) == check_hilbert(p).valid
    assert con_scan(g, 8)


def test_is_proof_of_examples():
    assert is_proof_of(singleton(2), 2)
    assert not is_proof_of(singleton(2), 1)
    for n in range(5):
        assert not is_proof_of(IDENTITY, n)


def test_is_proof_of_last_element():
    for p in all_proofs(6):
        if p and check_hilbert(p).valid:
            pi = encode_proof(p)
            assert is_proof_of(pi, DEFAULT_GNUM(p[-1]))
            assert is_proof_of(pi, 2)  # only the axiom can be proved


def test_literal_and_semantic_on_random_proofs():
    rng = random.Random(3)
    for _ in range(15):
        p = [rng.choice([BOT, AX]) for _ in range(rng.randint(1, 3))]
        pi = encode_proof(p)
        assert proof0_literal(pi) == proof0_semantic(pi)
        assert is_proof_of(pi, 2, literal=True) == is_proof_of(pi, 2)


def test_con_scan_small():
    assert con_scan(max_word_len=0)
    assert con_scan(max_word_len=10)


def test_first_bot_argument():
    # whatever the sequence, the first bot has no earlier bot, so no valid proof contains bot
    for p in all_proofs(10):
        v = first_bot_argument(p)
        if BOT in p:
            i = p.index(BOT)
            assert not v.valid and v.position == i
            assert BOT not in p[:i]
            assert not check_hilbert(p).valid
        else:
            assert v.valid and check_hilbert(p).valid


def test_non_ur_is_not_a_proof():
    for w in ["A", "AB", "AAB"]:
        assert not is_ur(encode(w))
        assert not proof0_semantic(encode(w))
        assert not proof0_literal(encode(w))


@pytest.mark.parametrize("g", [GoedelNumbering(1, 2), GoedelNumbering(2, 1)])
def test_literal_matches_semantic_up_to_length_8(g):
    # with (2, 1) the axiom is BA, so short words hold longer valid proofs
    for w in all_words(8):
        pi = encode(w)
        if is_ur(pi):
            assert proof0_literal(pi, g) == proof0_semantic(pi, g), w
