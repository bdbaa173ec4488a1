"""Modular arithmetic helpers: primality, inverses, residue symbols."""

from __future__ import annotations

from math import gcd

from .errors import QpdenseError

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise QpdenseError(f"{p} is not prime")


def primes_upto(n: int) -> list[int]:
    """All primes <= n by sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def inv_mod(a: int, m: int) -> int:
    """Inverse of a modulo m; error when gcd(a, m) != 1."""
    g, x, _ = xgcd(a % m, m)
    if g != 1:
        raise QpdenseError(f"{a} is not invertible modulo {m}")
    return x % m


def legendre_symbol(a: int, p: int) -> int:
    """Legendre symbol (a/p) in {-1, 0, 1} by Euler's criterion; p an odd prime."""
    require_prime(p)
    if p == 2:
        raise QpdenseError("Legendre symbol requires an odd prime")
    a %= p
    if a == 0:
        return 0
    e = pow(a, (p - 1) // 2, p)
    return -1 if e == p - 1 else 1


def is_qth_power_residue(a: int, q: int, p: int) -> bool:
    """True iff a is a q-th power in F_p^*.

    Computed as a^((p-1)/g) == 1 mod p with g = gcd(q, p-1); when
    q does not divide p-1 the power map is a bijection, so always true.
    """
    require_prime(p)
    if a % p == 0:
        raise QpdenseError(f"{p} divides {a}: power residue test needs a unit")
    g = gcd(q, p - 1)
    return pow(a, (p - 1) // g, p) == 1


def valuation_int(n: int, p: int) -> int:
    """Exponent of p in n, for n != 0."""
    if n == 0:
        raise ZeroDivisionError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
