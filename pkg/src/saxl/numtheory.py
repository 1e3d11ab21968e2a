"""Elementary number theory on exact integers."""

from __future__ import annotations

import math
import random
from collections import Counter

__all__ = [
    "mobius",
    "euler_phi",
    "divisors",
    "is_prime",
    "factorize",
    "multiplicative_order",
    "is_prime_power",
    "zsigmondy_primitive_prime",
]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
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


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorize(n: int) -> Counter:
    """Prime factorisation as a Counter {prime: exponent}; trial division then Pollard rho."""
    if n < 1:
        raise ValueError(f"cannot factorise {n}")
    out: Counter = Counter()
    for p in range(2, 1000):
        if p * p > n:
            break
        while n % p == 0:
            out[p] += 1
            n //= p
    if n == 1:
        return out
    rng = random.Random(0x5A1)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] += 1
            continue
        d = _pollard_rho(m, rng)
        stack.extend((d, m // d))
    return out


def mobius(n: int) -> int:
    if n < 1:
        raise ValueError("mobius is defined for n >= 1")
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def euler_phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def multiplicative_order(q: int, r: int) -> int:
    """Least k >= 1 with q^k = 1 (mod r)."""
    if math.gcd(q, r) != 1:
        raise ValueError(f"gcd({q}, {r}) != 1")
    if r == 1:
        return 1
    phi = euler_phi(r)
    k = phi
    for p in factorize(phi):
        while k % p == 0 and pow(q, k // p, r) == 1:
            k //= p
    return k


def is_prime_power(n: int) -> bool:
    return n > 1 and len(factorize(n)) == 1


def zsigmondy_primitive_prime(q: int, n: int, eps: int = 1):
    """A prime dividing ``q^n - eps`` but no ``q^j - eps`` with ``0 < j < n``.

    Returns ``None`` exactly in Zsigmondy's exceptional cases.
    """
    if q < 2 or n < 2:
        raise ValueError("need q >= 2 and n >= 2")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    for s in sorted(factorize(q**n - eps)):
        if all((q**j - eps) % s for j in range(1, n)):
            return s
    return None


def zsigmondy_exception(q: int, n: int, eps: int = 1) -> bool:
    """True when (eps, n, q, 1) is one of the listed exceptions to Zsigmondy's theorem."""
    if eps == 1 and n == 2:
        s = q + 1
        return s >= 4 and s & (s - 1) == 0
    return (eps, n, q) in {(1, 6, 2), (-1, 3, 2)}
