"""Integer arithmetic: Jacobi symbols, primality, factorization."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache

import gmpy2
from sympy.ntheory import ecm as sympy_ecm

# n < 3.3e24 is decided by these bases (covers every n < 2^64)
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_DETERMINISTIC_LIMIT = 1 << 64
PROBABLE_ROUNDS = 40
TRIAL_LIMIT = 10**6


def jacobi_symbol(a: int, n: int) -> int:
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    a %= n
    sign = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker extension of the Jacobi symbol to all integers n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    if n == 1:
        return sign
    return sign * jacobi_symbol(a, n)


def legendre_symbol(a: int, p: int) -> int:
    return jacobi_symbol(a, p)


def _strong_probable_prime(n: int, base: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(base, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def is_prime(n: int, seed: int = 0) -> bool:
    """Deterministic below 2^64; 40 seeded strong-probable-prime rounds above."""
    n = abs(n)
    if n < 2:
        return False
    for p in _SMALL:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, b) for b in _DETERMINISTIC_BASES)
    if not all(_strong_probable_prime(n, b) for b in _DETERMINISTIC_BASES):
        return False
    rng = random.Random(f"{seed}:{n}")
    return all(_strong_probable_prime(n, rng.randrange(2, n - 1)) for _ in range(PROBABLE_ROUNDS))


def primality(n: int, seed: int = 0) -> str:
    """'composite', 'prime' (proven below 2^64) or 'probable'."""
    if not is_prime(n, seed):
        return "composite"
    return "prime" if abs(n) < _DETERMINISTIC_LIMIT else "probable"


def next_prime(n: int) -> int:
    n = max(n + 1, 2)
    while not is_prime(n):
        n += 1
    return n


@lru_cache(maxsize=4)
def primes_up_to(n: int) -> tuple[int, ...]:
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, n + 1, i)))
    return tuple(i for i, v in enumerate(sieve) if v)


@lru_cache(maxsize=2)
def _prime_blocks(limit: int, size: int = 512) -> tuple[tuple[int, tuple[int, ...]], ...]:
    ps = primes_up_to(limit)
    out = []
    for i in range(0, len(ps), size):
        block = ps[i : i + size]
        prod = gmpy2.mpz(1)
        for p in block:
            prod *= p
        out.append((int(prod), block))
    return tuple(out)


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def squarefree_part(n: int) -> int:
    """Signed squarefree kernel of a nonzero integer of modest size."""
    if n == 0:
        raise ValueError("zero has no squarefree part")
    sign = -1 if n < 0 else 1
    f = factorint_small(abs(n))
    out = 1
    for p, e in f.items():
        if e % 2:
            out *= p
    return sign * out


def factorint_small(n: int) -> dict[int, int]:
    """Complete factorization for integers whose cofactors stay tractable."""
    res = factor_integer(n)
    if res.cofactors:
        raise ArithmeticError(f"could not fully factor {n}")
    return dict(res.primes)


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint_small(abs(n)))


@dataclass
class Factorization:
    """Prime factorization with any unsplit composite cofactors kept apart."""

    n: int
    primes: dict[int, int] = field(default_factory=dict)
    cofactors: list[int] = field(default_factory=list)
    probable: list[int] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.cofactors


def _brent_rho(n: int, rng: random.Random, max_iter: int) -> int | None:
    n_ = gmpy2.mpz(n)
    for _ in range(8):
        y = gmpy2.mpz(rng.randrange(1, n - 1))
        c = gmpy2.mpz(rng.randrange(1, n - 1))
        m, g, r, q = 128, gmpy2.mpz(1), 1, gmpy2.mpz(1)
        done = 0
        x = ys = y
        while g == 1 and done < max_iter:
            x = y
            for _ in range(r):
                y = (y * y + c) % n_
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n_
                    q = q * abs(x - y) % n_
                g = gmpy2.gcd(q, n_)
                k += m
            done += r
            r *= 2
        if g == n_:
            g = gmpy2.mpz(1)
            while g == 1:
                ys = (ys * ys + c) % n_
                g = gmpy2.gcd(abs(x - ys), n_)
        if 1 < g < n_:
            return int(g)
    return None


def _pm1(n: int, bound: int) -> int | None:
    n_ = gmpy2.mpz(n)
    a = gmpy2.mpz(2)
    for p in primes_up_to(bound):
        pk = p
        while pk * p <= bound:
            pk *= p
        a = gmpy2.powmod(a, pk, n_)
    g = gmpy2.gcd(a - 1, n_)
    if 1 < g < n_:
        return int(g)
    return None


def _ecm(n: int, seed: int, curves: int) -> int | None:
    try:
        found = sympy_ecm(n, B1=10_000, B2=1_000_000, max_curve=curves, seed=seed)
    except ValueError:
        return None
    for f in sorted(int(x) for x in found):
        if 1 < f < n and n % f == 0:
            return f
    return None


def factor_integer(n: int, seed: int = 0, rho_iterations: int = 200_000,
                   trial_limit: int = TRIAL_LIMIT, ecm_curves: int = 200) -> Factorization:
    """Trial division to ``trial_limit``, then p-1, Brent's rho and ECM.

    Cofactors that resist all methods within their budgets are returned in
    ``cofactors`` rather than guessed at.
    """
    n = abs(int(n))
    if n == 0:
        raise ValueError("cannot factor zero")
    out = Factorization(n)
    m = gmpy2.mpz(n)
    for prod, block in _prime_blocks(trial_limit):
        if m == 1:
            break
        g = gmpy2.gcd(m, prod)
        if g == 1:
            continue
        for p in block:
            if g % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                out.primes[p] = e
    if m == 1:
        return out
    rng = random.Random(f"{seed}:{n}")
    stack = [int(m)]
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if c < trial_limit * trial_limit or is_prime(c, seed):
            # below trial_limit^2 a cofactor free of small primes is prime
            out.primes[c] = out.primes.get(c, 0) + 1
            if primality(c, seed) == "probable":
                out.probable.append(c)
            continue
        r = gmpy2.iroot(gmpy2.mpz(c), 2)
        if r[1]:
            stack.extend([int(r[0])] * 2)
            continue
        d = _pm1(c, 20_000) or _brent_rho(c, rng, rho_iterations) or (
            _ecm(c, seed, ecm_curves) if ecm_curves else None)
        if d is None:
            out.cofactors.append(c)
            continue
        stack.extend([d, c // d])
    out.primes = dict(sorted(out.primes.items()))
    out.cofactors.sort()
    out.probable.sort()
    return out
