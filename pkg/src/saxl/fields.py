"""Finite fields F_{p^k} with elements encoded as integers 0..q-1.

The integer ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}`` encodes the residue
``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` modulo the field's modulus.  The
modulus is the first monic irreducible polynomial of degree k when the
coefficient vectors ``(c_0, ..., c_{k-1})`` are enumerated as integers in the
encoding above; the stored generator is the least integer code of
multiplicative order ``q - 1``.
"""

from __future__ import annotations

import itertools
from functools import cached_property

from .numtheory import factorize, is_prime

__all__ = ["FiniteField", "build_field", "poly_mulmod", "poly_powmod", "primitive_polynomial"]

MAX_FIELD_ORDER = 2**20


def _digits(x: int, p: int, k: int) -> list:
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + d
    return x


def _prime_poly_mod(a: list, f: list, p: int) -> list:
    """a mod f over F_p, f monic; lists low -> high."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    a = [c % p for c in a[:df]]
    return a + [0] * (df - len(a))


def _prime_poly_is_irreducible(f: list, p: int) -> bool:
    k = len(f) - 1
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not any(_prime_poly_mod(f, g, p)):
                return False
    return True


class FiniteField:
    def __init__(self, p: int, k: int = 1):
        if not is_prime(p) or k < 1:
            raise ValueError(f"invalid field parameters p={p}, k={k}")
        if p**k > MAX_FIELD_ORDER:
            raise ValueError(f"field order {p}^{k} exceeds {MAX_FIELD_ORDER}")
        self.p = p
        self.k = k
        self.q = p**k
        q = self.q
        if k == 1:
            self.modulus = [0, 1]
        else:
            for code in range(p**k):
                f = _digits(code, p, k) + [1]
                if f[0] and _prime_poly_is_irreducible(f, p):
                    self.modulus = f
                    break
        self._build_tables()
        if len(set(self.exp[: q - 1])) != q - 1:
            raise AssertionError("generator search failed")

    def _raw_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        if k == 1:
            return a * b % p
        da, db = _digits(a, p, k), _digits(b, p, k)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _undigits(_prime_poly_mod(prod, self.modulus, p), p)

    def _build_tables(self) -> None:
        q = self.q
        target = q - 1
        ps = list(factorize(target)) if target > 1 else []
        for g in range(1, q):
            if target == 1 or all(self._raw_pow(g, target // r) != 1 for r in ps):
                self.generator = g
                break
        exp = [0] * (2 * q)
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = self._raw_mul(x, self.generator)
        for i in range(q - 1, 2 * q):
            exp[i] = exp[i - (q - 1)]
        self.exp = exp
        self.log = log

    def _raw_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return result

    # -- arithmetic -------------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        table = self._add_table
        if table is not None:
            return table[a][b]
        p = self.p
        out, mult = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    @cached_property
    def _add_table(self):
        if self.q > 256:
            return None
        p, k = self.p, self.k
        digits = [_digits(x, p, k) for x in range(self.q)]
        return [[_undigits([(x + y) % p for x, y in zip(da, db)], p) for db in digits] for da in digits]

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return _undigits([(-d) % self.p for d in _digits(a, self.p, self.k)], self.p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("0 has no inverse")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def order_of(self, a: int) -> int:
        from math import gcd

        return (self.q - 1) // gcd(self.log[a], self.q - 1)

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    def is_square(self, a: int) -> bool:
        return a == 0 or self.p == 2 or self.log[a] % 2 == 0

    @property
    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


def build_field(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


# ---------------------------------------------------------------------------
# polynomials over a FiniteField, coefficient lists low -> high


def poly_mod(F: FiniteField, a: list, f: list) -> list:
    """a mod f with f monic."""
    a = list(a)
    df = len(f) - 1
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i]
        if c:
            for j in range(df + 1):
                a[i - df + j] = F.sub(a[i - df + j], F.mul(c, f[j]))
    a = a[:df]
    return a + [0] * (df - len(a))


def poly_mulmod(F: FiniteField, a: list, b: list, f: list) -> list:
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = F.add(prod[i + j], F.mul(x, y))
    return poly_mod(F, prod, f)


def poly_powmod(F: FiniteField, a: list, e: int, f: list) -> list:
    r = len(f) - 1
    result = [1] + [0] * (r - 1)
    base = poly_mod(F, a, f)
    while e:
        if e & 1:
            result = poly_mulmod(F, result, base, f)
        base = poly_mulmod(F, base, base, f)
        e >>= 1
    return result


def primitive_polynomial(F: FiniteField, r: int) -> list:
    """First monic f of degree r over F (coefficient codes enumerated base q) with x of order q^r - 1."""
    q = F.q
    N = q**r - 1
    primes = list(factorize(N))
    x = [0, 1] + [0] * (r - 2) if r >= 2 else [0]
    one = [1] + [0] * (r - 1)
    for code in range(q**r):
        f = _digits(code, q, r) + [1]
        if f[0] == 0:
            continue
        if poly_powmod(F, x, N, f) != one:
            continue
        if all(poly_powmod(F, x, N // s, f) != one for s in primes):
            return f
    raise ValueError(f"no primitive polynomial of degree {r} over {F}")
