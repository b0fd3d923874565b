"""Prime decomposition data (e_i, f_i, g) and ramification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..polyarith import linalg_fp
from ..polyarith.arith import is_prime, prime_divisors
from ..polyarith.finitefield import factor_fp, fp_is_irreducible, fp_normalize, fp_powmod, fp_rem
from ..polyarith.hnf import reduce_mod_lattice
from .field import FieldElement, NumberFieldSpec
from .ideals import IntegralIdeal, ideal_from_generators, ideal_multiply, ideal_power, unit_ideal


class IndexDivisorError(ValueError):
    """p divides [O_K : Z[theta]] and no verified factorization was supplied."""


class FactorizationClaimError(ValueError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check


@dataclass(frozen=True)
class SplittingData:
    p: int
    factors: tuple[tuple[int, int], ...]

    @property
    def g(self) -> int:
        return len(self.factors)

    def efg(self) -> tuple[int, int, int]:
        """(e, f, g) when all primes above p share e and f (always, for Galois K)."""
        es = {e for e, _ in self.factors}
        fs = {f for _, f in self.factors}
        if len(es) != 1 or len(fs) != 1:
            raise ValueError(f"non-uniform splitting at {self.p}: {self.factors}")
        return es.pop(), fs.pop(), self.g

    def local_degrees(self) -> list[int]:
        return [e * f for e, f in self.factors]


def _residue_coords(I: IntegralIdeal, v: Sequence[int], p: int) -> list[int]:
    h = I.hnf_matrix
    red = reduce_mod_lattice(h, v)
    return [red[i] % p for i in range(h.rows) if h[i, i] == p]


def residue_field_certificate(I: IntegralIdeal, p: int, f: int) -> FieldElement | None:
    """An element of O/I whose minimal polynomial over F_p is irreducible of degree f."""
    K = I.K
    n = K.degree
    if f == 1:
        return K.one()
    basis = [FieldElement(K, tuple(int(k == i) for k in range(n)), 1) for i in range(n)]
    candidates = list(basis)
    candidates += [a + b for i, a in enumerate(basis) for b in basis[i + 1:]]
    candidates += [a + b + b for i, a in enumerate(basis) for b in basis[i + 1:]]
    for x in candidates:
        powers = [_residue_coords(I, K.one().num, p)]
        cur = K.one()
        for _ in range(f):
            cur = cur * x
            cur = FieldElement(K, tuple(c % p for c in cur.num), 1)
            powers.append(_residue_coords(I, cur.num, p))
        rel = linalg_fp.left_kernel(powers, p)
        if len(rel) != 1:
            continue
        # the unique relation among 1, x, ..., x^f is the minimal polynomial
        mp = rel[0]
        if mp[-1] % p == 0:
            continue
        if fp_is_irreducible(mp, p):
            return x
    return None


def verify_prime_factorization(K: NumberFieldSpec, p: int,
                               claimed: Sequence[tuple[IntegralIdeal, int]]) -> SplittingData:
    n = K.degree
    if not is_prime(p):
        raise FactorizationClaimError("prime", f"{p} is not prime")
    prod = unit_ideal(K)
    factors = []
    for I, e in claimed:
        N = I.norm
        f = 0
        while N % p == 0:
            N //= p
            f += 1
        if N != 1 or f == 0:
            raise FactorizationClaimError("norm", f"ideal norm {I.norm} is not a power of {p}")
        for j in range(n):
            pb = FieldElement(K, tuple(p * int(k == j) for k in range(n)), 1)
            if not I.contains(pb):
                raise FactorizationClaimError("norm", f"ideal does not contain {p}")
        if residue_field_certificate(I, p, f) is None:
            raise FactorizationClaimError("residue field", f"could not certify O/I as a field of order {p}^{f}")
        prod = ideal_multiply(prod, ideal_power(I, e))
        factors.append((e, f))
    if sum(e * f for e, f in factors) != n:
        raise FactorizationClaimError("degree sum", "sum of e_i f_i differs from [K:Q]")
    if prod != ideal_from_generators(K, [K.rational(p)]):
        raise FactorizationClaimError("product mismatch", f"product of claimed ideals is not {p}O_K")
    if len({I for I, _ in claimed}) != len(claimed):
        raise FactorizationClaimError("product mismatch", "repeated prime ideal")
    return SplittingData(p, tuple(sorted(factors)))


def claimed_ideals(K: NumberFieldSpec, p: int) -> list[tuple[IntegralIdeal, int]]:
    out = []
    for cp in K.prime_factorizations.get(p, ()):
        gens = [K.element(g) for g in cp.generators]
        out.append((ideal_from_generators(K, gens), cp.e))
    return out


def splitting_data(K: NumberFieldSpec, p: int, seed: int = 0) -> SplittingData:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if K.index % p == 0:
        if p not in K.prime_factorizations:
            raise IndexDivisorError(
                f"index divisor: {p} divides [O_K : Z[theta]] = {K.index}; "
                "supply a prime factorization for it")
        return _verified_factorization(K, p)
    fac = factor_fp(K.defining_poly.coeffs, p, seed)
    return SplittingData(p, tuple(sorted((m, len(g) - 1) for g, m in fac)))


_VERIFIED: dict[tuple[NumberFieldSpec, int], SplittingData] = {}


def _verified_factorization(K: NumberFieldSpec, p: int) -> SplittingData:
    # field specs hash by identity, so this caches per loaded field
    if (K, p) not in _VERIFIED:
        _VERIFIED[K, p] = verify_prime_factorization(K, p, claimed_ideals(K, p))
    return _VERIFIED[K, p]


def splits_completely(K: NumberFieldSpec, q: int) -> bool:
    if K.index % q == 0:
        sd = splitting_data(K, q)
        return sd.g == K.degree and all(ef == (1, 1) for ef in sd.factors)
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    if K.poly_discriminant % q == 0:
        return False
    # f squarefree mod q: it splits into distinct linear factors iff x^q = x mod (f, q)
    f = fp_normalize(K.defining_poly.coeffs, q)
    return fp_powmod([0, 1], q, f, q) == fp_rem([0, 1], f, q)


def ramified_primes(K: NumberFieldSpec) -> list[int]:
    d = int(K.basis_discriminant)
    return prime_divisors(d) if abs(d) > 1 else []
