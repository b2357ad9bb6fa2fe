"""Prime moduli and exact arithmetic in F_p.

Residues are plain Python ints kept canonical in ``[0, p)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotOdd, NotPrime, UnsupportedModulus, ZeroInverse

# Largest modulus the counting engines accept (products of residues fit in int64).
MAX_MODULUS = 2**31

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 2**64."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


@dataclass(frozen=True)
class PrimeModulus:
    p: int
    mod4: int

    def __int__(self) -> int:
        return self.p

    def reduce(self, a: int) -> int:
        return a % self.p

    @property
    def anisotropic(self) -> bool:
        """True when x1^2 + x2^2 = 0 forces x = 0, i.e. p = 3 (mod 4)."""
        return self.mod4 == 3


def make_modulus(n: int) -> PrimeModulus:
    n = int(n)
    if n == 2:
        raise NotOdd("p = 2 is not supported: the field must have odd characteristic")
    if n >= 2**64:
        raise UnsupportedModulus(f"{n} is beyond the deterministic primality range")
    if not is_prime(n):
        raise NotPrime(f"{n} is not prime")
    if n >= MAX_MODULUS:
        raise UnsupportedModulus(f"p = {n} exceeds the supported range p < 2**31")
    return PrimeModulus(n, n % 4)


def fp_inv(a: int, m: PrimeModulus) -> int:
    a %= m.p
    if a == 0:
        raise ZeroInverse("0 has no inverse")
    return pow(a, -1, m.p)


def fp_is_square(a: int, m: PrimeModulus) -> bool:
    """Euler's criterion; 0 counts as a square."""
    a %= m.p
    return a == 0 or pow(a, (m.p - 1) // 2, m.p) == 1

