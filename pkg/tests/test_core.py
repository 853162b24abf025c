import json
import random
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from markov_besh.core import (
    GEN_A,
    GEN_B,
    IDENTITY,
    Mat2,
    QuadExt,
    eigenvalues,
    mat_inv,
    mat_mul,
    singleton,
)
from markov_besh.nielsen import encode


def naive_product(a, b):
    ra, rb = a.rows(), b.rows()
    return [[sum(ra[i][k] * rb[k][j] for k in range(2)) for j in range(2)] for i in range(2)]


words = st.text(alphabet="AB", max_size=40)
ints = st.integers(min_value=-(10**30), max_value=10**30)
mats = st.builds(Mat2, ints, ints, ints, ints)


def test_generator_products():
    assert mat_mul(GEN_A, GEN_B) == Mat2.from_rows([[2, 1], [1, 1]])
    assert mat_mul(singleton(1), singleton(1)) == Mat2.from_rows([[2, 3], [3, 5]])
    m = Mat2(3, 7, 2, 5)
    assert m @ IDENTITY == m and IDENTITY @ m == m


def test_inverse_examples():
    assert mat_inv(GEN_A) == Mat2.from_rows([[1, -1], [0, 1]])
    assert mat_inv(GEN_B) == Mat2.from_rows([[1, 0], [-1, 1]])
    assert mat_inv(IDENTITY) == IDENTITY


def test_inverse_rejects_det_not_one():
    with pytest.raises(ValueError):
        mat_inv(Mat2(1, 2, 3, 4))
    with pytest.raises(ValueError):
        mat_inv(Mat2(-1, 0, 0, 1))


def test_rejects_non_integer_entries():
    with pytest.raises(TypeError):
        Mat2(1.0, 0, 0, 1)


@given(mats, mats)
def test_mul_matches_naive(a, b):
    assert [list(r) for r in (a @ b).rows()] == naive_product(a, b)


@given(mats, mats)
def test_det_multiplicative(a, b):
    assert (a @ b).det() == a.det() * b.det()


@given(words, words)
def test_sl2_closed_under_mul(u, v):
    p = mat_mul(encode(u), encode(v))
    assert p.det() == 1 and p.is_sl2n()


def test_inverse_on_random_sl2n():
    rng = random.Random(7)
    for _ in range(1000):
        m = encode("".join(rng.choice("AB") for _ in range(rng.randint(0, 80))))
        assert mat_mul(m, mat_inv(m)) == IDENTITY
        assert mat_mul(mat_inv(m), m) == IDENTITY


def test_negative_power_is_inverse():
    m = encode("ABBAB")
    assert m**-3 == mat_inv(m) ** 3
    assert m**0 == IDENTITY


def test_json_round_trip():
    m = Mat2(10**40, 3, 7, 10**40 * 2)
    obj = m.to_json()
    assert obj == {"m00": str(10**40), "m01": "3", "m10": "7", "m11": str(2 * 10**40)}
    assert Mat2.from_json(obj) == m
    assert Mat2.from_json(json.dumps(obj)) == m
    assert Mat2.from_json([[1, 3], [1, 4]]) == singleton(3)
    with pytest.raises(ValueError):
        Mat2.from_json([[1, 2, 3]])


def test_singleton_shape():
    for n in range(20):
        assert singleton(n) == Mat2.from_rows([[1, n], [1, n + 1]])
    with pytest.raises(ValueError):
        singleton(-1)


# -- quadratic field ---------------------------------------------------------------

getcontext().prec = 120


def decimal_value(q: QuadExt) -> Decimal:
    r0 = Decimal(q.r0.numerator) / Decimal(q.r0.denominator)
    r1 = Decimal(q.r1.numerator) / Decimal(q.r1.denominator)
    return r0 + r1 * Decimal(q.d).sqrt()


fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=50)
nonsquare = st.sampled_from([2, 3, 5, 6, 7, 12, 21, 32, 45])


@given(fracs, fracs, nonsquare)
def test_sign_matches_high_precision(r0, r1, d):
    q = QuadExt(r0, r1, d)
    val = decimal_value(q)
    expected = 0 if val == 0 else (1 if val > 0 else -1)
    if abs(val) > Decimal("1e-60") or val == 0:
        assert q.sign() == expected


@given(fracs, fracs, fracs, fracs, nonsquare)
def test_field_operations(a0, a1, b0, b1, d):
    x, y = QuadExt(a0, a1, d), QuadExt(b0, b1, d)
    assert x + y - y == x
    assert (x * y).norm() == x.norm() * y.norm()
    assert x * y == y * x
    assert -x.__neg__() == x
    if x.sign() != 0:
        assert x * x.inv() == QuadExt(1, 0, d)
        assert (y / x) * x == y
    gap = decimal_value(x) - decimal_value(y)
    if abs(gap) > Decimal("1e-60"):
        assert (x < y) == (gap < 0)


@given(fracs, fracs, nonsquare, st.integers(min_value=1, max_value=40))
def test_lower_bound_is_below(r0, r1, d, bits):
    q = abs(QuadExt(r0, r1, d))
    lb = q.lower_bound(bits)
    assert 0 <= lb
    assert QuadExt(lb, 0, d) <= q


def test_mixed_radicands_rejected():
    with pytest.raises(ValueError):
        QuadExt(1, 1, 5) + QuadExt(1, 1, 6)
    with pytest.raises(ValueError):
        QuadExt(1, 1, 5) * QuadExt(1, 1, 6)


def test_zero_inverse_rejected():
    with pytest.raises(ZeroDivisionError):
        QuadExt(0, 0, 5).inv()
    assert QuadExt(0, 0, 5).sign() == 0


def test_eigenvalues_small():
    lam, mu = eigenvalues(3)
    assert lam * mu == 1
    assert lam + mu == 5
    assert lam == QuadExt(Fraction(5, 2), Fraction(1, 2), 21)


@pytest.mark.parametrize("n", range(1, 51))
def test_eigenvalue_identities(n):
    lam, mu = eigenvalues(n)
    assert lam * mu == 1
    assert lam + mu == n + 2
    assert 0 < mu < 1 < lam


def test_eigenvalues_reject_degenerate():
    with pytest.raises(ValueError):
        eigenvalues(0)
