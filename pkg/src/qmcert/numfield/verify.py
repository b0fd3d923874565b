"""Machine verification of asserted number-field data."""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from ..polyarith import linalg_fp
from ..polyarith.arith import is_square, prime_divisors, primes_up_to, squarefree_part
from ..polyarith.finitefield import factor_fp, fp_gcd, fp_mul, fp_normalize
from ..polyarith.hnf import IntMatrix, hnf_mod, solve_upper
from ..polyarith.poly import IntPolynomial
from .field import FieldElement, NumberFieldSpec, _poly_mul_q, _poly_rem_q

PASS, FAIL, ASSUMED = "pass", "fail", "assumed"


class FieldVerificationError(ValueError):
    def __init__(self, check: str, detail: str):
        super().__init__(f"{check}: {detail}")
        self.check = check
        self.detail = detail


@dataclass
class Check:
    name: str
    status: str
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    closure_table: list[list[int]] = field(default_factory=list)
    maximal_at: list[int] = field(default_factory=list)
    unverified_maximality: list[int] = field(default_factory=list)
    irreducibility_witness: str = ""

    def add(self, name: str, status: str, detail: str = "") -> None:
        self.checks.append(Check(name, status, detail))

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def failed(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]

    @property
    def assumptions(self) -> list[str]:
        return [c.detail for c in self.checks if c.status == ASSUMED]

    def raise_for_failure(self) -> None:
        bad = self.failed()
        if bad:
            raise FieldVerificationError(bad[0].name, bad[0].detail)

    @property
    def closure_table_hash(self) -> str:
        blob = json.dumps(self.closure_table, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()


# ---------------------------------------------------------------- irreducibility

def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


def _root_subset_factor(f: IntPolynomial, admissible: set[int]) -> bool:
    n, lead = f.degree, f.lead
    roots = mpmath.polyroots([mpmath.mpf(c) for c in reversed(f.coeffs)], maxsteps=400, extraprec=400)
    for d in sorted(admissible):
        for sub in itertools.combinations(range(n), d):
            poly = [mpmath.mpc(1)]
            for i in sub:
                r = roots[i]
                poly = [mpmath.mpc(0)] + poly
                for k in range(len(poly) - 1):
                    poly[k] -= r * poly[k + 1]
            cand = [int(mpmath.nint(mpmath.re(c * lead))) for c in poly]
            if any(abs(mpmath.im(c)) > 0.25 for c in poly):
                continue
            g = IntPolynomial(cand)
            if g.degree != d:
                continue
            if _divides_over_q(g, f):
                return True
    return False


def irreducibility_witness(f: IntPolynomial, max_prime: int = 400) -> str | None:
    """A short certificate that f is irreducible over Q, or None if f factors.

    First looks for a prime modulo which f stays irreducible; failing that
    intersects the admissible factor degrees over several primes and tests
    every remaining root subset of the complex roots for an integral factor.
    """
    n = f.degree
    if n <= 1:
        return "degree <= 1"
    lead = f.lead
    admissible = set(range(1, n // 2 + 1))
    for p in primes_up_to(max_prime):
        if lead % p == 0:
            continue
        fac = factor_fp(f.coeffs, p)
        if any(m > 1 for _, m in fac):
            continue
        degs = [len(g) - 1 for g, _ in fac]
        if degs == [n]:
            return f"irreducible modulo {p}"
        admissible &= _subset_sums(degs)
        if not admissible:
            return f"factor-degree patterns exclude all splittings (primes <= {p})"
    # exhaustive check over complex root subsets of the admissible sizes
    with mpmath.workdps(60 + 4 * n):
        if _root_subset_factor(f, admissible):
            return None
    sizes = ",".join(str(d) for d in sorted(admissible))
    return f"no integral factor among complex root subsets of size {sizes}"


def _divides_over_q(g: IntPolynomial, f: IntPolynomial) -> bool:
    from ..polyarith.poly import _qdivmod

    _, r = _qdivmod(list(f.coeffs), list(g.coeffs))
    return not r


# ----------------------------------------------------------------- Galois group

def _compose_mod_f(K: NumberFieldSpec, outer, inner) -> list[Fraction]:
    # outer(inner(theta)) mod f
    f = K.defining_poly.coeffs
    acc = [Fraction(0)] * K.degree
    power = [Fraction(1)]
    for c in outer:
        if c:
            for i, y in enumerate(power):
                acc[i] += c * y
        power = _poly_rem_q(_poly_mul_q(power, inner), f)
    return _poly_rem_q(acc, f)


def composition_table(K: NumberFieldSpec) -> list[list[int]]:
    """table[i][j] = index of sigma_i o sigma_j."""
    images = [tuple(v) for v in K.automorphism_images_of_theta()]
    lookup = {img: k for k, img in enumerate(images)}
    n = len(images)
    table = [[-1] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            # sigma_i(sigma_j(theta)) = g_j(g_i(theta))
            comp = tuple(_compose_mod_f(K, K.automorphisms[j], images[i]))
            table[i][j] = lookup.get(comp, -1)
    return table


def identity_index(K: NumberFieldSpec) -> int:
    x = tuple(K.reduce_power([0, 1])) if K.degree > 1 else tuple(K.reduce_power([0]))
    for k, img in enumerate(K.automorphism_images_of_theta()):
        if tuple(img) == x:
            return k
    return -1


def count_index_two_subgroups(table: list[list[int]], ident: int) -> int:
    """2^r - 1 where G / <squares> has order 2^r."""
    n = len(table)
    sq = {table[g][g] for g in range(n)} | {ident}
    sub = set(sq)
    frontier = list(sub)
    while frontier:
        a = frontier.pop()
        for b in list(sub):
            for c in (table[a][b], table[b][a]):
                if c not in sub:
                    sub.add(c)
                    frontier.append(c)
    quotient = n // len(sub)
    r = quotient.bit_length() - 1
    return (1 << r) - 1


def subgroup_fixing(K: NumberFieldSpec, x: FieldElement) -> list[int]:
    from .field import apply_automorphism

    return [s for s in range(len(K.automorphisms)) if apply_automorphism(K, s, x) == x]


def is_abelian(table: list[list[int]], elems: list[int]) -> bool:
    return all(table[a][b] == table[b][a] for a in elems for b in elems)


# -------------------------------------------------------------------- maximality

def _frobenius_kernel(K: NumberFieldSpec, p: int) -> list[list[int]]:
    """Basis of the p-radical of O/pO: kernel of x -> x^(p^j), p^j >= n."""
    n = K.degree
    e = p
    while e < n:
        e *= p
    images = []
    for i in range(n):
        b = FieldElement(K, tuple(int(k == i) for k in range(n)), 1)
        images.append(_pow_mod_p(b, e, p))
    # images[i] is the column for basis vector i
    rows = [[images[i][r] for i in range(n)] for r in range(n)]
    return linalg_fp.kernel(rows, p, n)


def _pow_mod_p(x: FieldElement, e: int, p: int) -> list[int]:
    K = x.K
    result = K.one()
    base = FieldElement(K, tuple(c % p for c in x.num), 1)
    while e:
        if e & 1:
            result = FieldElement(K, tuple(c % p for c in (result * base).num), 1)
        e >>= 1
        if e:
            base = FieldElement(K, tuple(c % p for c in (base * base).num), 1)
    return [c % p for c in result.num]


def is_p_maximal(K: NumberFieldSpec, p: int) -> bool:
    """Pohst-Zassenhaus test: O is p-maximal iff the multiplier ring of its p-radical is O."""
    n = K.degree
    ker = _frobenius_kernel(K, p)
    gens = [list(v) for v in ker]
    rad = hnf_mod(IntMatrix.from_columns(gens, n) if gens else IntMatrix([[0] for _ in range(n)], n, 1), p)
    rad_cols = rad.columns()
    rows = []
    for i in range(n):
        b = FieldElement(K, tuple(int(k == i) for k in range(n)), 1)
        row = []
        for g in rad_cols:
            prod = (b * FieldElement(K, tuple(g), 1)).num
            coords = solve_upper(rad, prod)
            if any(c.denominator != 1 for c in coords):
                raise FieldVerificationError("ring closure", f"p-radical at {p} is not an ideal")
            row.extend(int(c) % p for c in coords)
        rows.append(row)
    # rows[i] is the image of b_i; trivial kernel <=> rank n
    return linalg_fp.rank(rows, p) == n


def dedekind_criterion(f: IntPolynomial, p: int) -> bool:
    """True iff Z[theta] is p-maximal."""
    fac = factor_fp(f.coeffs, p)
    g = [1]
    h = [1]
    for gi, e in fac:
        g = fp_mul(g, gi, p)
        for _ in range(e - 1):
            h = fp_mul(h, gi, p)
    # lifts with coefficients in [0, p)
    gh = [0] * (len(g) + len(h) - 1)
    for i, x in enumerate(g):
        for j, y in enumerate(h):
            gh[i + j] += x * y
    diff = [a - (gh[i] if i < len(gh) else 0) for i, a in enumerate(f.coeffs)]
    diff += [-c for c in gh[len(f.coeffs):]]
    F = fp_normalize([d // p for d in diff], p)
    if not F:
        return len(fp_gcd(g, h, p)) <= 1
    common = fp_gcd(fp_gcd(F, g, p), h, p)
    return len(common) <= 1


# --------------------------------------------------------------------- driver

def verify_field_spec(K: NumberFieldSpec) -> VerificationReport:
    rep = VerificationReport()
    f = K.defining_poly
    n = K.degree

    if n < 1 or not f.is_monic():
        rep.add("defining polynomial", FAIL, "f must be monic of degree >= 1")
        return rep
    w = irreducibility_witness(f)
    if w is None:
        rep.add("irreducible", FAIL, f"{f} factors over Q")
        return rep
    rep.irreducibility_witness = w
    rep.add("irreducible", PASS, w)

    # integral basis: shape, 1 and theta in the span, ring closure, discriminant
    if len(K.basis) != n or any(len(b) != n for b in K.basis):
        rep.add("integral basis shape", FAIL, f"need {n} vectors of length {n}")
        return rep
    if K.basis_index == 0:
        rep.add("integral basis rank", FAIL, "basis vectors are linearly dependent")
        return rep
    one = K.power_to_basis([1])
    th = K.power_to_basis([0, 1]) if n > 1 else one
    if any(c.denominator != 1 for c in one + th):
        rep.add("contains Z[theta]", FAIL, "1 or theta is not an integral combination of the basis")
        return rep
    rep.add("contains Z[theta]", PASS)
    bad = [(i, j) for i in range(n) for j in range(n) if any(c.denominator != 1 for c in K.mult_table[i][j])]
    if bad:
        rep.add("ring closure", FAIL, f"b_{bad[0][0]} * b_{bad[0][1]} leaves the lattice")
        return rep
    rep.add("ring closure", PASS)
    inv = 1 / abs(K.basis_index)
    q = Fraction(K.poly_discriminant) / K.basis_discriminant
    if inv.denominator != 1 or q.denominator != 1 or not is_square(int(q)):
        rep.add("discriminant consistency", FAIL, "disc(f)/disc(basis) is not a square integer")
        return rep
    rep.add("discriminant consistency", PASS,
            f"disc(basis) = {K.basis_discriminant}, index [O:Z[theta]] = {int(inv)}")

    # maximality at every p with p^2 | disc(basis)
    dB = int(K.basis_discriminant)
    candidates = [p for p in prime_divisors(dB)] if abs(dB) > 1 else []
    for p in candidates:
        if dB % (p * p):
            rep.maximal_at.append(p)
            continue
        if K.is_power_basis:
            ok = dedekind_criterion(f, p)
            method = "Dedekind criterion"
        else:
            ok = is_p_maximal(K, p)
            method = "Pohst-Zassenhaus multiplier test"
        if ok:
            rep.maximal_at.append(p)
        elif K.maximality_assumed:
            rep.unverified_maximality.append(p)
        else:
            rep.add("maximality", FAIL,
                    f"basis is not maximal at {p} ({method}); supply an integral basis")
            return rep
    if rep.unverified_maximality:
        rep.add("maximality", ASSUMED,
                f"basis maximality at {rep.unverified_maximality} is assumed; Ram(K) is an upper bound")
    else:
        rep.add("maximality", PASS, f"p-maximal at all primes dividing disc(basis): {rep.maximal_at}")

    # automorphisms
    imgs = K.automorphism_images_of_theta()
    fq = [Fraction(c) for c in f.coeffs]
    for k, g in enumerate(K.automorphisms):
        val = _compose_mod_f(K, fq, K.reduce_power(g))
        if any(val):
            rep.add("automorphism roots", FAIL, f"f(g_{k}(theta)) != 0")
            return rep
    rep.add("automorphism roots", PASS)
    if len({tuple(v) for v in imgs}) != len(imgs):
        rep.add("Galois count", FAIL, "automorphism list has duplicates")
        return rep
    if len(imgs) != n:
        rep.add("Galois count", FAIL, f"{len(imgs)} automorphisms for a degree-{n} field")
        return rep
    ident = identity_index(K)
    if ident < 0:
        rep.add("Galois count", FAIL, "identity automorphism missing")
        return rep
    table = composition_table(K)
    if any(v < 0 for row in table for v in row):
        rep.add("group closure", FAIL, "composition leaves the automorphism list")
        return rep
    rep.closure_table = table
    rep.add("Galois count", PASS, f"{n} automorphisms")
    rep.add("group closure", PASS)
    for k, mat in enumerate(K.automorphism_matrices):
        if any(c.denominator != 1 for col in mat for c in col):
            rep.add("automorphisms preserve O_K", FAIL, f"sigma_{k} does not map the basis into itself")
            return rep
    rep.add("automorphisms preserve O_K", PASS)

    # quadratic subfields
    ms = []
    for sub in K.quadratic_subfields:
        m = sub.m
        if m in (0, 1) or squarefree_part(m) != m:
            rep.add("quadratic subfields", FAIL, f"{m} is not a squarefree integer != 0, 1")
            return rep
        wit = K.element(sub.witness)
        if wit * wit != K.rational(m):
            rep.add("quadratic subfields", FAIL, f"witness for sqrt({m}) does not square to {m}")
            return rep
        ms.append(m)
    if len(set(ms)) != len(ms):
        rep.add("quadratic subfields", FAIL, "repeated subfield")
        return rep
    expected = count_index_two_subgroups(table, ident)
    if len(ms) != expected:
        rep.add("quadratic subfields", FAIL,
                f"{len(ms)} subfields supplied, Galois group has {expected} index-2 subgroups")
        return rep
    rep.add("quadratic subfields", PASS, f"complete list {sorted(ms)}")

    if K.class_number < 1:
        rep.add("class number", FAIL, "class number must be positive")
        return rep
    rep.add("class number", ASSUMED, f"class number h_K = {K.class_number} is asserted, not computed")
    return rep
