"""Number fields Q[x]/(f) with a chosen integral basis, and their elements."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm
from typing import Sequence

from ..polyarith.hnf import determinant
from ..polyarith.poly import IntPolynomial, discriminant


class FieldSpecError(ValueError):
    """Malformed or inconsistent number-field input."""


@dataclass(frozen=True)
class ClassGenerator:
    q: int
    root: int
    alpha: tuple[int, ...]


@dataclass(frozen=True)
class QuadraticSubfield:
    m: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ClaimedPrime:
    """A prime ideal given by O_K-module generators (basis coordinates)."""

    generators: tuple[tuple[int, ...], ...]
    e: int


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _poly_rem_q(a: Sequence[Fraction], f: Sequence[int]) -> list[Fraction]:
    # remainder modulo a monic integer polynomial, rational coefficients
    r = list(a)
    n = len(f) - 1
    for k in range(len(r) - 1, n - 1, -1):
        c = r[k]
        if c:
            for j in range(n + 1):
                r[k - n + j] -= c * f[j]
    r = r[:n] + [Fraction(0)] * max(0, n - len(r))
    return r[:n]


def _poly_mul_q(a: Sequence, b: Sequence) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _mat_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise FieldSpecError("integral basis is linearly dependent")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                k = a[r][c]
                a[r] = [x - k * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@dataclass(frozen=True, eq=False)
class NumberFieldSpec:
    """K = Q(theta), f(theta) = 0, with asserted arithmetic data.

    ``basis`` rows give the integral basis in powers of theta.  Everything
    here is user input; :func:`qmcert.numfield.verify_field_spec` checks it.
    """

    defining_poly: IntPolynomial
    basis: tuple[tuple[Fraction, ...], ...]
    automorphisms: tuple[tuple[Fraction, ...], ...]
    class_number: int = 1
    class_generators: tuple[ClassGenerator, ...] = ()
    quadratic_subfields: tuple[QuadraticSubfield, ...] = ()
    prime_factorizations: dict = field(default_factory=dict)
    maximality_assumed: bool = False
    name: str = ""

    @property
    def degree(self) -> int:
        return self.defining_poly.degree

    @cached_property
    def is_power_basis(self) -> bool:
        n = self.degree
        return all(self.basis[i][j] == int(i == j) for i in range(n) for j in range(n))

    @cached_property
    def _to_basis(self) -> list[list[Fraction]]:
        # power-basis coordinates -> integral-basis coordinates
        n = self.degree
        bt = [[self.basis[j][i] for j in range(n)] for i in range(n)]
        return _mat_inverse(bt)

    def power_to_basis(self, v: Sequence) -> list[Fraction]:
        v = list(v) + [0] * (self.degree - len(v))
        return [sum((c * x for c, x in zip(row, v) if x), Fraction(0)) for row in self._to_basis]

    def basis_to_power(self, c: Sequence) -> list[Fraction]:
        n = self.degree
        out = [Fraction(0)] * n
        for i, x in enumerate(c):
            if x:
                for j in range(n):
                    out[j] += x * self.basis[i][j]
        return out

    def reduce_power(self, coeffs: Sequence) -> list[Fraction]:
        return _poly_rem_q([_frac(c) for c in coeffs], self.defining_poly.coeffs)

    @cached_property
    def mult_table(self) -> list[list[list[Fraction]]]:
        """Coordinates of b_i * b_j in the integral basis."""
        n = self.degree
        f = self.defining_poly.coeffs
        tab = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = _poly_rem_q(_poly_mul_q(self.basis[i], self.basis[j]), f)
                tab[i][j] = tab[j][i] = self.power_to_basis(prod)
        return tab

    @cached_property
    def int_mult_table(self) -> list[list[list[int]]]:
        tab = self.mult_table
        out = []
        for row in tab:
            r = []
            for v in row:
                if any(x.denominator != 1 for x in v):
                    raise FieldSpecError("integral basis is not closed under multiplication")
                r.append([int(x) for x in v])
            out.append(r)
        return out

    @cached_property
    def basis_index(self) -> Fraction:
        """det of the basis matrix; equals 1/[O : Z[theta]] for a valid basis."""
        n = self.degree
        den = lcm(*(x.denominator for row in self.basis for x in row)) if n else 1
        num = determinant([[int(x * den) for x in row] for row in self.basis])
        return Fraction(num, den**n)

    @cached_property
    def poly_discriminant(self) -> int:
        return discriminant(self.defining_poly) if self.degree > 1 else 1

    @cached_property
    def basis_discriminant(self) -> Fraction:
        return self.poly_discriminant * self.basis_index**2

    @cached_property
    def index(self) -> int:
        """[O : Z[theta]]; meaningful once the basis has been verified."""
        inv = 1 / abs(self.basis_index)
        if inv.denominator != 1:
            raise FieldSpecError("Z[theta] is not contained in the span of the basis")
        return int(inv)

    def element(self, coords: Sequence) -> FieldElement:
        return FieldElement.from_coords(self, coords)

    def from_power(self, coeffs: Sequence) -> FieldElement:
        return FieldElement.from_coords(self, self.power_to_basis(self.reduce_power(coeffs)))

    def one(self) -> FieldElement:
        return self.from_power([1])

    def rational(self, r) -> FieldElement:
        return self.from_power([r])

    @cached_property
    def theta(self) -> FieldElement:
        return self.from_power([0, 1]) if self.degree > 1 else self.from_power([-self.defining_poly[0]])

    @cached_property
    def automorphism_matrices(self) -> list[list[list[Fraction]]]:
        """Column j of matrix s = integral-basis coordinates of sigma_s(b_j)."""
        f = self.defining_poly.coeffs
        mats = []
        for g in self.automorphisms:
            # powers of g(theta) reduced mod f
            powers = [[Fraction(1)]]
            for _ in range(1, self.degree):
                powers.append(_poly_rem_q(_poly_mul_q(powers[-1], g), f))
            cols = []
            for b in self.basis:
                acc = [Fraction(0)] * self.degree
                for k, c in enumerate(b):
                    if c:
                        for t, y in enumerate(powers[k]):
                            acc[t] += c * y
                cols.append(self.power_to_basis(acc))
            mats.append(cols)
        return mats

    def automorphism_images_of_theta(self) -> list[list[Fraction]]:
        return [self.reduce_power(g) for g in self.automorphisms]


@dataclass(frozen=True, eq=False)
class FieldElement:
    """Element of K as integer numerators over a common positive denominator."""

    K: NumberFieldSpec
    num: tuple[int, ...]
    den: int = 1

    @classmethod
    def from_coords(cls, K: NumberFieldSpec, coords: Sequence) -> FieldElement:
        fr = [_frac(c) for c in coords]
        fr += [Fraction(0)] * (K.degree - len(fr))
        d = lcm(*(x.denominator for x in fr)) if fr else 1
        return cls._make(K, [int(x * d) for x in fr], d)

    @classmethod
    def _make(cls, K: NumberFieldSpec, num: Sequence[int], den: int) -> FieldElement:
        g = den
        for x in num:
            g = gcd(g, x)
            if g == 1:
                break
        if den < 0:
            g = -g
        if g not in (0, 1):
            num = [x // g for x in num]
            den //= g
        return cls(K, tuple(num), den)

    @property
    def coords(self) -> list[Fraction]:
        return [Fraction(x, self.den) for x in self.num]

    def is_integral(self) -> bool:
        return self.den == 1

    def is_zero(self) -> bool:
        return not any(self.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other: FieldElement) -> FieldElement:
        if isinstance(other, int):
            other = self.K.rational(other)
        d = lcm(self.den, other.den)
        a, b = d // self.den, d // other.den
        return FieldElement._make(self.K, [a * x + b * y for x, y in zip(self.num, other.num)], d)

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement(self.K, tuple(-x for x in self.num), self.den)

    def __sub__(self, other: FieldElement) -> FieldElement:
        if isinstance(other, int):
            other = self.K.rational(other)
        return self + (-other)

    def __mul__(self, other) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            o = _frac(other)
            return FieldElement._make(self.K, [x * o.numerator for x in self.num], self.den * o.denominator)
        K = self.K
        n = K.degree
        if K.is_power_basis:
            prod = [0] * (2 * n - 1)
            for i, x in enumerate(self.num):
                if x:
                    for j, y in enumerate(other.num):
                        if y:
                            prod[i + j] += x * y
            f = K.defining_poly.coeffs
            for k in range(2 * n - 2, n - 1, -1):
                c = prod[k]
                if c:
                    for j in range(n + 1):
                        prod[k - n + j] -= c * f[j]
            return FieldElement._make(K, prod[:n], self.den * other.den)
        tab = K.int_mult_table
        out = [0] * n
        for i, x in enumerate(self.num):
            if not x:
                continue
            row = tab[i]
            for j, y in enumerate(other.num):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += xy * c
        return FieldElement._make(K, out, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            raise ValueError("negative powers are not supported")
        result = self.K.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mult_matrix(self) -> list[list[int]]:
        """Integer matrix of multiplication by num (denominator excluded), columns = x*b_j."""
        K = self.K
        n = K.degree
        cols = []
        for j in range(n):
            bj = FieldElement(K, tuple(int(i == j) for i in range(n)), 1)
            cols.append((FieldElement(K, self.num, 1) * bj).num)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def power_coords(self) -> list[Fraction]:
        return self.K.basis_to_power(self.coords)

    def __repr__(self) -> str:
        return f"FieldElement({[str(c) for c in self.coords]})"


def element_norm(K: NumberFieldSpec, x: FieldElement) -> Fraction:
    """N_{K/Q}(x) as the determinant of multiplication by x."""
    if x.is_zero():
        return Fraction(0)
    d = determinant(x.mult_matrix())
    return Fraction(d, x.den**K.degree)


def apply_automorphism(K: NumberFieldSpec, sigma: int, x: FieldElement) -> FieldElement:
    if not 0 <= sigma < len(K.automorphisms):
        raise IndexError(f"no automorphism with index {sigma}")
    m = K.automorphism_matrices[sigma]
    n = K.degree
    out = [Fraction(0)] * n
    for j, c in enumerate(x.num):
        if c:
            col = m[j]
            for i in range(n):
                out[i] += c * col[i]
    return FieldElement.from_coords(K, [v / x.den for v in out])
