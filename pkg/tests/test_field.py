import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisector_lab.errors import NotOdd, NotPrime, UnsupportedModulus, ZeroInverse
from bisector_lab.field import fp_inv, fp_is_square, is_prime, make_modulus

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 43, 101]


def test_make_modulus_examples():
    m = make_modulus(7)
    assert (m.p, m.mod4) == (7, 3)
    assert m.anisotropic
    m = make_modulus(13)
    assert (m.p, m.mod4) == (13, 1)
    assert not m.anisotropic


@pytest.mark.parametrize("n", [0, 1, 4, 9, 15, 561, 2**31 - 3])
def test_make_modulus_rejects_composites(n):
    with pytest.raises(NotPrime):
        make_modulus(n)


def test_make_modulus_rejects_two_and_large():
    with pytest.raises(NotOdd):
        make_modulus(2)
    with pytest.raises(UnsupportedModulus):
        make_modulus(2**31 + 11)  # prime, but out of range
    assert is_prime(2**31 + 11)


def test_is_prime_matches_trial_division():
    def slow(n):
        return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))

    assert [n for n in range(3000) if is_prime(n)] == [n for n in range(3000) if slow(n)]
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_fp_inv_examples():
    m = make_modulus(7)
    assert fp_inv(3, m) == 5
    assert fp_inv(1, m) == 1
    with pytest.raises(ZeroInverse):
        fp_inv(0, m)
    with pytest.raises(ZeroDivisionError):
        fp_inv(14, m)


@given(st.sampled_from(SMALL_PRIMES), st.integers(min_value=1, max_value=10**6))
def test_fp_inv_property(p, a):
    m = make_modulus(p)
    if a % p == 0:
        return
    b = fp_inv(a, m)
    assert a * b % p == 1
    assert fp_inv(b, m) == a % p


def test_fp_is_square_examples():
    m = make_modulus(7)
    assert fp_is_square(2, m)
    assert not fp_is_square(6, m)
    assert fp_is_square(0, m)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_square_count_and_minus_one(p):
    m = make_modulus(p)
    squares = {x * x % p for x in range(p)}
    assert [fp_is_square(a, m) for a in range(p)] == [a in squares for a in range(p)]
    assert sum(fp_is_square(a, m) for a in range(p)) == (p + 1) // 2
    if p % 4 == 3:
        assert not fp_is_square(p - 1, m)
