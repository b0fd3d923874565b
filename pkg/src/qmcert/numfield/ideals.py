"""Integral ideals of O_K as full-rank lattices in Hermite normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..polyarith.hnf import IntMatrix, hnf_mod, in_lattice
from .field import FieldElement, NumberFieldSpec, element_norm


class IdealError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IntegralIdeal:
    K: NumberFieldSpec
    hnf_matrix: IntMatrix

    @property
    def norm(self) -> int:
        out = 1
        for i in range(self.hnf_matrix.rows):
            out *= self.hnf_matrix[i, i]
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, IntegralIdeal) and self.hnf_matrix == other.hnf_matrix

    def __hash__(self) -> int:
        return hash(self.hnf_matrix)

    def contains(self, x: FieldElement) -> bool:
        if not x.is_integral():
            return False
        return in_lattice(self.hnf_matrix, x.num)

    def __contains__(self, x: FieldElement) -> bool:
        return self.contains(x)

    def generators(self) -> list[FieldElement]:
        return [FieldElement(self.K, tuple(c), 1) for c in self.hnf_matrix.columns()]

    def __mul__(self, other: IntegralIdeal) -> IntegralIdeal:
        return ideal_multiply(self, other)

    def __pow__(self, k: int) -> IntegralIdeal:
        return ideal_power(self, k)

    def __repr__(self) -> str:
        return f"IntegralIdeal(norm={self.norm}, hnf={self.hnf_matrix.tolist()})"


def unit_ideal(K: NumberFieldSpec) -> IntegralIdeal:
    return IntegralIdeal(K, IntMatrix.identity(K.degree))


def _from_z_generators(K: NumberFieldSpec, gens: Sequence[Sequence[int]], modulus: int) -> IntegralIdeal:
    n = K.degree
    m = IntMatrix.from_columns([list(g) for g in gens], n)
    h = hnf_mod(m, abs(modulus))
    return _checked(K, h)


def _checked(K: NumberFieldSpec, h: IntMatrix) -> IntegralIdeal:
    I = IntegralIdeal(K, h)
    # the lattice must be stable under multiplication by every basis element
    n = K.degree
    for j in range(n):
        bj = FieldElement(K, tuple(int(i == j) for i in range(n)), 1)
        for g in I.generators():
            if not I.contains(g * bj):
                raise IdealError("lattice is not an O_K-module")
    return I


def ideal_from_generators(K: NumberFieldSpec, elements: Sequence[FieldElement]) -> IntegralIdeal:
    """The O_K-ideal generated by integral elements (not all zero)."""
    elems = [e for e in elements if not e.is_zero()]
    if not elems:
        raise IdealError("the zero ideal is not a full-rank lattice")
    for e in elems:
        if not e.is_integral():
            raise IdealError(f"generator {e} is not integral")
    modulus = min(abs(int(element_norm(K, e))) for e in elems)
    n = K.degree
    gens = []
    for e in elems:
        for j in range(n):
            bj = FieldElement(K, tuple(int(i == j) for i in range(n)), 1)
            gens.append((e * bj).num)
    return _from_z_generators(K, gens, modulus)


def principal_ideal(K: NumberFieldSpec, x: FieldElement) -> IntegralIdeal:
    return ideal_from_generators(K, [x])


def ideal_multiply(I: IntegralIdeal, J: IntegralIdeal) -> IntegralIdeal:
    K = I.K
    gens = [(a * b).num for a in I.generators() for b in J.generators()]
    return _from_z_generators(K, gens, I.norm * J.norm)


def ideal_power(I: IntegralIdeal, k: int) -> IntegralIdeal:
    if k < 0:
        raise ValueError("negative ideal powers are not supported")
    result = unit_ideal(I.K)
    base = I
    while k:
        if k & 1:
            result = ideal_multiply(result, base)
        k >>= 1
        if k:
            base = ideal_multiply(base, base)
    return result


def ideal_from_prime(K: NumberFieldSpec, q: int, root: int) -> IntegralIdeal:
    """The prime (q, theta - r) above a root r of f modulo q."""
    if K.defining_poly(root) % q:
        raise IdealError(f"{root} is not a root of the defining polynomial modulo {q}")
    return ideal_from_generators(K, [K.rational(q), K.theta - K.rational(root)])


def verify_principal_generator(K: NumberFieldSpec, I: IntegralIdeal, alpha: FieldElement) -> bool:
    """True iff I = alpha O_K (alpha in I and |N(alpha)| = N(I))."""
    if alpha.is_zero() or not alpha.is_integral():
        return False
    return I.contains(alpha) and abs(element_norm(K, alpha)) == I.norm
