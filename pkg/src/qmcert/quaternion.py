"""Quaternion algebras (a, b / Q): Hilbert symbols, ramification, splitting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd

from .numfield.field import NumberFieldSpec
from .numfield.splitting import splitting_data
from .polyarith.arith import is_prime, kronecker_symbol, legendre_symbol, prime_divisors, squarefree_part

INF = "inf"


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; signals a bug, not bad input."""


def _to_int_class(x) -> int:
    # a/b and ab share a square class
    r = Fraction(x)
    if r == 0:
        raise ValueError("Hilbert symbol arguments must be nonzero")
    return r.numerator * r.denominator


def _split_valuation(a: int, p: int) -> tuple[int, int]:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v, a


def hilbert_symbol(a, b, v) -> int:
    """(a, b)_v for nonzero rationals a, b and v a prime or ``INF``."""
    a = _to_int_class(a)
    b = _to_int_class(b)
    if v == INF:
        return -1 if a < 0 and b < 0 else 1
    p = int(v)
    if not is_prime(p):
        raise ValueError(f"{v} is not a place of Q")
    alpha, u = _split_valuation(a, p)
    beta, w = _split_valuation(b, p)
    if p != 2:
        s = (-1) ** (alpha * beta * ((p - 1) // 2))
        if beta % 2:
            s *= legendre_symbol(u, p)
        if alpha % 2:
            s *= legendre_symbol(w, p)
        return s
    eps = lambda x: ((x - 1) // 2) % 2
    omega = lambda x: ((x * x - 1) // 8) % 2
    e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u)
    return -1 if e % 2 else 1


def candidate_places(a: int, b: int) -> list:
    return sorted(set(prime_divisors(2 * abs(a * b)))) + [INF]


def ramification_set(a: int, b: int) -> list:
    """Places where (a, b / Q) is a division algebra, finite primes first, then ``INF``."""
    a = _to_int_class(a)
    b = _to_int_class(b)
    ram = [v for v in candidate_places(a, b) if hilbert_symbol(a, b, v) == -1]
    if len(ram) % 2:
        raise InvariantViolation(f"odd number of ramified places for ({a}, {b}): {ram}")
    return ram


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: int
    b: int

    @cached_property
    def ram_set(self) -> list:
        return ramification_set(self.a, self.b)

    @property
    def finite_ramified(self) -> list[int]:
        return [v for v in self.ram_set if v != INF]

    @property
    def d(self) -> int:
        out = 1
        for p in self.finite_ramified:
            out *= p
        return out

    @property
    def is_indefinite(self) -> bool:
        return INF not in self.ram_set

    @property
    def is_division(self) -> bool:
        return bool(self.ram_set)


def check_discriminant(d: int) -> list[int]:
    """Prime factors of an indefinite quaternion discriminant; raises ValueError otherwise."""
    if d <= 1 or squarefree_part(d) != d:
        raise ValueError(f"d = {d} must be a squarefree integer > 1")
    ps = prime_divisors(d)
    if len(ps) % 2:
        raise ValueError(f"d = {d} has an odd number of prime factors")
    return ps


def _scan(bound: int):
    for s in range(2, 2 * bound + 1):
        for a in range(-bound, bound + 1):
            if a == 0 or abs(a) >= s:
                continue
            r = s - abs(a)
            if r > bound:
                continue
            yield a, -r
            yield a, r


def find_presentation(d: int, bound: int = 200) -> QuaternionAlgebra:
    """First (a, b) in (|a|+|b|, a, b) order whose algebra has discriminant d."""
    target = check_discriminant(d)
    seen = 0
    while True:
        for a, b in _scan(bound):
            if abs(a) + abs(b) <= seen:
                continue
            # ramified primes divide 2ab, so every prime of d must
            if any((2 * a * b) % p for p in target):
                continue
            if ramification_set(a, b) == target:
                return QuaternionAlgebra(a, b)
        seen = 2 * bound
        bound *= 2


def imag_quadratic_discriminant(q: int) -> int:
    """Discriminant of Q(sqrt(-q)) for a prime q."""
    return -q if q % 4 == 3 else -4 * q


def split_witness(B: QuaternionAlgebra, q: int) -> int | None:
    """A prime divisor of d that splits in Q(sqrt(-q)), if any."""
    D = imag_quadratic_discriminant(q)
    return next((p for p in B.finite_ramified if kronecker_symbol(D, p) == 1), None)


def nonsplit_over_imag_quad(B: QuaternionAlgebra, q: int) -> bool:
    """True iff B tensor Q(sqrt(-q)) is not a matrix algebra."""
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    return split_witness(B, q) is not None


def _splits_for_residue(p: int, r: int) -> bool:
    # p splits in Q(sqrt(-q)) for primes q = r mod 8p
    if p == 2:
        return r % 8 == 7
    return r % p != 0 and legendre_symbol(-r, p) == 1


def congruence_classes_nonsplit(d: int) -> tuple[int, list[int]]:
    """(M, residues): for primes q, B tensor Q(sqrt(-q)) is nonsplit iff q mod M is listed."""
    ps = check_discriminant(d)
    M = 8
    for p in ps:
        if p != 2:
            M *= p
    out = []
    for r in range(M):
        # a class sharing a factor with M holds a prime only when r is that prime
        if gcd(r, M) != 1 and not (r == 2 or r in ps):
            continue
        if any(_splits_for_residue(p, r) for p in ps):
            out.append(r)
    return M, out


def splits_over_K(B: QuaternionAlgebra, K: NumberFieldSpec) -> bool:
    """B tensor K is a matrix algebra iff every local degree above each p | d is even."""
    for p in B.finite_ramified:
        if any(ld % 2 for ld in splitting_data(K, p).local_degrees()):
            return False
    return True
