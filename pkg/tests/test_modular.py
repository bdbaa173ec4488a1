import pytest

from qpdense.errors import QpdenseError
from qpdense.modular import (
    inv_mod,
    is_prime,
    is_qth_power_residue,
    legendre_symbol,
    primes_upto,
    valuation_int,
    xgcd,
)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31}
    for n in range(-3, 32):
        assert is_prime(n) == (n in primes)


def test_is_prime_larger():
    assert is_prime(88747)
    assert not is_prime(88749)
    assert is_prime(2**31 - 1)
    assert not is_prime(2**32 + 1)


def test_primes_upto():
    assert primes_upto(20) == [2, 3, 5, 7, 11, 13, 17, 19]
    assert primes_upto(1) == []


def test_xgcd_identity():
    for a, b in [(12, 18), (35, 64), (0, 5), (7, 0), (-12, 30)]:
        g, x, y = xgcd(a, b)
        assert a * x + b * y == g


def test_inv_mod():
    assert inv_mod(3, 7) * 3 % 7 == 1
    with pytest.raises(QpdenseError):
        inv_mod(6, 9)


def test_legendre_trivial_cases():
    assert legendre_symbol(1, 13) == 1
    assert legendre_symbol(13, 13) == 0


def test_legendre_paper_value():
    # -891 is a quadratic residue mod 5
    assert legendre_symbol(-891, 5) == 1


def test_legendre_matches_enumeration():
    for p in primes_upto(100):
        if p == 2:
            continue
        squares = {x * x % p for x in range(1, p)}
        for a in range(p):
            expected = 0 if a == 0 else (1 if a in squares else -1)
            assert legendre_symbol(a, p) == expected


def test_qth_power_residue():
    # q not dividing p-1: the power map is bijective
    assert is_qth_power_residue(2, 3, 5) is True
    # cubes mod 7 are {1, 6}
    assert is_qth_power_residue(2, 3, 7) is False
    assert is_qth_power_residue(1, 3, 7) is True
    # 4^3 = 64 = 2 mod 31
    assert is_qth_power_residue(2, 3, 31) is True
    # 2^4 = 16 = 3 mod 13, not 1
    assert is_qth_power_residue(2, 3, 13) is False


def test_qth_power_residue_needs_unit():
    with pytest.raises(QpdenseError):
        is_qth_power_residue(14, 3, 7)


def test_valuation_int():
    assert valuation_int(12, 2) == 2
    assert valuation_int(35, 5) == 1
    assert valuation_int(7, 5) == 0
