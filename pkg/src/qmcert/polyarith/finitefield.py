"""Polynomials over the prime field F_p and their factorization.

Polynomials are plain lists of residues, lowest degree first, with no
trailing zeros.  The public entry point is :func:`factor_mod_p`.
"""

from __future__ import annotations

import random
from typing import Sequence

from .poly import IntPolynomial

FpPoly = list


def fp_normalize(a: Sequence[int], p: int) -> FpPoly:
    out = [x % p for x in a]
    while out and out[-1] == 0:
        out.pop()
    return out


def fp_add(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    n = max(len(a), len(b))
    return fp_normalize([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)], p)


def fp_sub(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    n = max(len(a), len(b))
    return fp_normalize([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)], p)


def fp_mul(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return fp_normalize(out, p)


def fp_divmod(a: FpPoly, b: FpPoly, p: int) -> tuple[FpPoly, FpPoly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return [], r
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] * inv % p
        q[k - db] = c
        if c:
            for j in range(db + 1):
                r[k - db + j] = (r[k - db + j] - c * b[j]) % p
    return fp_normalize(q, p), fp_normalize(r[:db], p)


def fp_rem(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    return fp_divmod(a, b, p)[1]


def fp_monic(a: FpPoly, p: int) -> FpPoly:
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def fp_gcd(a: FpPoly, b: FpPoly, p: int) -> FpPoly:
    while b:
        a, b = b, fp_rem(a, b, p)
    return fp_monic(a, p)


def fp_deriv(a: FpPoly, p: int) -> FpPoly:
    return fp_normalize([i * c for i, c in enumerate(a)][1:], p)


def fp_powmod(base: FpPoly, e: int, mod: FpPoly, p: int) -> FpPoly:
    result: FpPoly = [1]
    base = fp_rem(base, mod, p)
    while e:
        if e & 1:
            result = fp_rem(fp_mul(result, base, p), mod, p)
        e >>= 1
        if e:
            base = fp_rem(fp_mul(base, base, p), mod, p)
    return result


def fp_is_irreducible(f: FpPoly, p: int) -> bool:
    """Rabin's test for a monic polynomial."""
    f = fp_monic(f, p)
    n = len(f) - 1
    if n < 1:
        return False
    x = [0, 1]
    primes_of_n = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    for q in primes_of_n:
        h = fp_sub(fp_powmod(x, p ** (n // q), f, p), x, p)
        if len(fp_gcd(f, h, p)) > 1:
            return False
    return fp_powmod(x, p**n, f, p) == fp_rem(x, f, p)


def _squarefree_decomposition(f: FpPoly, p: int) -> list[tuple[FpPoly, int]]:
    """Monic f -> [(g_i, m_i)] with f = prod g_i^m_i and each g_i squarefree."""
    out: list[tuple[FpPoly, int]] = []
    if len(f) <= 1:
        return out
    d = fp_deriv(f, p)
    if not d:
        # f(x) = g(x^p); over F_p the p-th root maps coefficients to themselves
        g = [f[i] for i in range(0, len(f), p)]
        return [(h, m * p) for h, m in _squarefree_decomposition(g, p)]
    c = fp_gcd(f, d, p)
    w = fp_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = fp_gcd(w, c, p)
        z = fp_divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((fp_monic(z, p), i))
        i += 1
        w = y
        c = fp_divmod(c, y, p)[0]
    if len(c) > 1:
        g = [c[i] for i in range(0, len(c), p)]
        out.extend((h, m * p) for h, m in _squarefree_decomposition(g, p))
    return out


def _distinct_degree(f: FpPoly, p: int) -> list[tuple[FpPoly, int]]:
    out = []
    x = [0, 1]
    h = x
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = fp_powmod(h, p, f, p)
        g = fp_gcd(f, fp_sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = fp_divmod(f, g, p)[0]
            h = fp_rem(h, f, p)
    if len(f) > 1:
        out.append((fp_monic(f, p), len(f) - 1))
    return out


def _equal_degree(f: FpPoly, d: int, p: int, rng: random.Random) -> list[FpPoly]:
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = fp_normalize([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, s = a, a
            for _ in range(d - 1):
                s = fp_rem(fp_mul(s, s, p), f, p)
                t = fp_add(t, s, p)
            g = fp_gcd(f, t, p)
        else:
            b = fp_powmod(a, (p**d - 1) // 2, f, p)
            g = fp_gcd(f, fp_sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            h = fp_divmod(f, g, p)[0]
            return _equal_degree(g, d, p, rng) + _equal_degree(fp_monic(h, p), d, p, rng)


def _sort_key(g: FpPoly) -> tuple:
    return (len(g), tuple(g))


def factor_fp(f: Sequence[int], p: int, seed: int = 0) -> list[tuple[FpPoly, int]]:
    f = fp_normalize(f, p)
    if not f:
        raise ValueError(f"polynomial vanishes identically modulo {p}")
    f = fp_monic(f, p)
    rng = random.Random(seed)
    out: dict[tuple, int] = {}
    for g, m in _squarefree_decomposition(f, p):
        for h, d in _distinct_degree(g, p):
            for irr in _equal_degree(h, d, p, rng):
                key = tuple(fp_monic(irr, p))
                out[key] = out.get(key, 0) + m
    return sorted(((list(k), m) for k, m in out.items()), key=lambda t: _sort_key(t[0]))


def factor_mod_p(f: IntPolynomial, p: int, seed: int = 0) -> list[tuple[IntPolynomial, int]]:
    """Monic irreducible factors of f over F_p with multiplicities.

    Sorted by degree, then by coefficient tuple (lowest degree first).
    The product equals f mod p up to the unit lc(f).
    """
    from .arith import is_prime

    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [(IntPolynomial(g), m) for g, m in factor_fp(f.coeffs, p, seed)]


def roots_mod_p(f: IntPolynomial, p: int, seed: int = 0) -> list[int]:
    return sorted((-g[0]) % p for g, _ in factor_fp(f.coeffs, p, seed) if len(g) == 2)
