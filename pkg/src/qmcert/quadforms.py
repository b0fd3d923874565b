"""Reduced binary quadratic forms, imaginary quadratic class numbers, and the
Hilbert class field containment check for a Galois field K."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .numfield.field import NumberFieldSpec
from .numfield.splitting import ramified_primes, splitting_data
from .numfield.verify import VerificationReport, is_abelian, subgroup_fixing, verify_field_spec
from .polyarith.arith import squarefree_part


class DiscriminantError(ValueError):
    pass


@dataclass(frozen=True)
class QuadraticForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def reduce(self) -> QuadraticForm:
        """Gauss reduction of a positive definite form."""
        a, b, c = self.a, self.b, self.c
        if a <= 0 or b * b - 4 * a * c >= 0:
            raise ValueError("only positive definite forms can be reduced")
        while True:
            if b > a or b <= -a:
                # translate b into (-a, a]
                k = (a - b) // (2 * a)
                c = a * k * k + b * k + c
                b = b + 2 * a * k
            if a > c:
                a, b, c = c, -b, a
                continue
            if a == c and b < 0:
                b = -b
            return QuadraticForm(a, b, c)


def is_fundamental_discriminant(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return squarefree_part(D) == D
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and squarefree_part(m) == m
    return False


def reduced_forms(D: int) -> list[QuadraticForm]:
    """All reduced primitive forms of discriminant D < 0, sorted by (a, b)."""
    if D >= 0 or D % 4 not in (0, 1):
        raise DiscriminantError(f"{D} is not a negative discriminant")
    out = []
    amax = isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (a == c and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                out.append(QuadraticForm(a, b, c))
    return out


def class_number_imag(D: int) -> int:
    if D >= 0:
        raise DiscriminantError(f"discriminant must be negative, got {D}")
    if not is_fundamental_discriminant(D):
        raise DiscriminantError(f"{D} is not a fundamental discriminant")
    return len(reduced_forms(D))


def quadratic_field_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)) for squarefree m != 0, 1."""
    return m if m % 4 == 1 else 4 * m


def _e_quadratic(m: int, p: int) -> int:
    return 2 if quadratic_field_discriminant(m) % p == 0 else 1


# ---------------------------------------------------------------- HCF check
@dataclass(frozen=True)
class NoImagQuadSubfieldHasHCFInK:
    details: tuple = ()
    kind: str = field(default="all-clear", init=False)


@dataclass(frozen=True)
class ContainsHCF:
    m: int
    reason: str
    details: tuple = ()
    kind: str = field(default="contains-hcf", init=False)


@dataclass(frozen=True)
class Undetermined:
    reason: str
    details: tuple = ()
    kind: str = field(default="undetermined", init=False)


HCFVerdict = NoImagQuadSubfieldHasHCFInK | ContainsHCF | Undetermined


def hcf_containment_check(K: NumberFieldSpec, report: VerificationReport | None = None) -> HCFVerdict:
    """Decide whether K contains the Hilbert class field of an imaginary quadratic field.

    Only imaginary quadratic subfields F of K can have their Hilbert class field
    H_F inside K, and H_F is Galois over Q of degree 2 h_F.  ``details`` lists
    one (m, h, branch, reason) record per imaginary subfield.
    """
    if report is None:
        report = verify_field_spec(K)
    report.raise_for_failure()
    n = K.degree
    ram = ramified_primes(K)
    details = []
    for sub in sorted(K.quadratic_subfields, key=lambda s: (abs(s.m), s.m)):
        m = sub.m
        if m > 0:
            continue
        D = quadratic_field_discriminant(m)
        h = class_number_imag(D)
        if h == 1:
            details.append((m, h, "a", "class number one: F is its own Hilbert class field"))
            return ContainsHCF(m, f"Q(sqrt({m})) has class number one", tuple(details))
        if n % (2 * h):
            details.append((m, h, "b", f"2h = {2 * h} does not divide [K:Q] = {n}"))
            continue
        if 2 * h == n:
            witness = next((p for p in ram if splitting_data(K, p).efg()[0] > _e_quadratic(m, p)), None)
            if witness is not None:
                details.append((m, h, "c", f"K/F is ramified above {witness}"))
                continue
            fixing = subgroup_fixing(K, K.element(sub.witness))
            if not is_abelian(report.closure_table, fixing):
                details.append((m, h, "c", "K/F is unramified but not abelian"))
                continue
            details.append((m, h, "c", "K/F is unramified abelian of degree h_F"))
            return ContainsHCF(m, f"K is the Hilbert class field of Q(sqrt({m}))", tuple(details))
        details.append((m, h, "d", f"2h = {2 * h} is a proper divisor of [K:Q] = {n}"))
        return Undetermined(f"intermediate fields of degree {2 * h} containing Q(sqrt({m})) "
                            "are not enumerated", tuple(details))
    return NoImagQuadSubfieldHasHCFInK(tuple(details))
