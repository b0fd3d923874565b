"""Exact integer, rational and polynomial arithmetic."""

from .arith import (
    Factorization,
    factor_integer,
    is_prime,
    is_square,
    jacobi_symbol,
    kronecker_symbol,
    legendre_symbol,
    next_prime,
    prime_divisors,
    primality,
    primes_up_to,
    squarefree_part,
)
from .finitefield import factor_mod_p, fp_is_irreducible, roots_mod_p
from .hnf import IntMatrix, determinant, hnf, hnf_basis, hnf_mod, in_lattice, reduce_mod_lattice
from .poly import IntPolynomial, count_real_roots, discriminant, is_squarefree, poly_resultant

__all__ = [
    "Factorization",
    "IntMatrix",
    "IntPolynomial",
    "count_real_roots",
    "determinant",
    "discriminant",
    "factor_integer",
    "factor_mod_p",
    "fp_is_irreducible",
    "hnf",
    "hnf_basis",
    "hnf_mod",
    "in_lattice",
    "is_prime",
    "is_square",
    "is_squarefree",
    "jacobi_symbol",
    "kronecker_symbol",
    "legendre_symbol",
    "next_prime",
    "poly_resultant",
    "primality",
    "prime_divisors",
    "primes_up_to",
    "reduce_mod_lattice",
    "roots_mod_p",
    "squarefree_part",
]
