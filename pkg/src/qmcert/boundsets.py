"""Exceptional prime sets built from Frobenius roots and class group generators.

For each generator q of the class data, each exponent vector eps over the
Galois group and each Weil number beta of norm q, the enumeration computes

    N_{K/Q}((alpha^eps)^2 - t_m alpha^eps + q^m),    t_m = beta^m + conj(beta)^m,

which is the norm to Q of alpha^eps - beta^m taken over K(beta).  The primes
dividing the nonzero values, together with the residue characteristics of the
generators, 2, 3 and the ramified primes, form the exceptional set.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

import mpmath

from .numfield.field import FieldElement, NumberFieldSpec, apply_automorphism, element_norm
from .numfield.ideals import IntegralIdeal, ideal_from_prime, ideal_power, verify_principal_generator
from .numfield.splitting import ramified_primes, splits_completely
from .polyarith.arith import factor_integer, is_prime, prime_divisors, squarefree_part
from .quaternion import QuaternionAlgebra, splits_over_K

log = logging.getLogger(__name__)

PRIMED, UNPRIMED = "primed", "unprimed"
EXPONENT_VALUES = {PRIMED: (0, 4, 6, 8, 12), UNPRIMED: (0, 8, 12, 16, 24)}
BETA_EXPONENT = {PRIMED: 12, UNPRIMED: 24}
DEFAULT_BUDGET = 10**7
# factoring effort per norm value; values that resist it keep composite cofactors
RHO_ITERATIONS = 200_000
ECM_CURVES = 200


class ClassDataError(ValueError):
    pass


# ---------------------------------------------------------------- Weil numbers
@dataclass(frozen=True)
class FrobeniusRoot:
    a: int
    q: int

    def __post_init__(self):
        if self.a * self.a >= 4 * self.q:
            raise ValueError(f"a = {self.a} violates a^2 < 4q for q = {self.q}")


def frobenius_roots(q: int) -> list[FrobeniusRoot]:
    if not is_prime(q):
        raise ValueError(f"{q} is not prime")
    r = isqrt(4 * q)
    return [FrobeniusRoot(a, q) for a in range(-r, r + 1)]


def beta_power_trace(root: FrobeniusRoot, m: int) -> int:
    """beta^m + conj(beta)^m for beta^2 + a beta + q = 0."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    t0, t1 = 2, -root.a
    if m == 0:
        return t0
    for _ in range(m - 1):
        t0, t1 = t1, -root.a * t1 - root.q * t0
    return t1


# ---------------------------------------------------------------- class data
@dataclass(frozen=True)
class ClassEntry:
    q: int
    root: int
    ideal: IntegralIdeal
    alpha: FieldElement


@dataclass(frozen=True)
class ClassData:
    entries: tuple[ClassEntry, ...]
    h: int

    @property
    def primes(self) -> list[int]:
        return sorted({e.q for e in self.entries})


def build_class_data(K: NumberFieldSpec) -> ClassData:
    """Check each supplied generator: q splits completely, q does not divide 6h,
    and the h-th power of the prime (q, theta - r) equals alpha O_K."""
    h = K.class_number
    if not K.class_generators:
        raise ClassDataError("no class generators supplied")
    entries = []
    for g in K.class_generators:
        if not is_prime(g.q):
            raise ClassDataError(f"{g.q} is not prime")
        if (6 * h) % g.q == 0:
            raise ClassDataError(f"{g.q} divides 6h = {6 * h}")
        if not splits_completely(K, g.q):
            raise ClassDataError(f"{g.q} does not split completely in K")
        P = ideal_from_prime(K, g.q, g.root)
        alpha = K.element(g.alpha)
        if not verify_principal_generator(K, ideal_power(P, h), alpha):
            raise ClassDataError(f"alpha does not generate the {h}-th power of the prime ({g.q}, theta - {g.root})")
        entries.append(ClassEntry(g.q, g.root, P, alpha))
    return ClassData(tuple(entries), h)


# ---------------------------------------------------------------- norm values
def alpha_power(K: NumberFieldSpec, alpha: FieldElement, eps: Sequence[int]) -> FieldElement:
    """prod_sigma sigma(alpha)^{a_sigma}."""
    if len(eps) != len(K.automorphisms):
        raise ValueError("exponent vector length must equal the number of automorphisms")
    out = K.one()
    for s, a in enumerate(eps):
        if a:
            out = out * apply_automorphism(K, s, alpha) ** a
    return out


def norm_value(K: NumberFieldSpec, alpha: FieldElement, eps: Sequence[int], root: FrobeniusRoot, m: int) -> int:
    """N_{K/Q}((alpha^eps)^2 - t_m alpha^eps + q^m); symmetric in beta and its conjugate."""
    x = alpha_power(K, alpha, eps)
    return _norm_of_quadratic(K, x, beta_power_trace(root, m), root.q**m)


def _norm_of_quadratic(K: NumberFieldSpec, x: FieldElement, t: int, qm: int) -> int:
    y = x * x - x * t + qm
    v = element_norm(K, y)
    if v.denominator != 1:
        raise ArithmeticError("norm of an algebraic integer is not an integer")
    return int(v)


def beta_in_K(K: NumberFieldSpec, root: FrobeniusRoot) -> FieldElement | None:
    """beta = (-a + sqrt(a^2 - 4q)) / 2 as an element of K, if K contains it."""
    disc = root.a * root.a - 4 * root.q
    m = squarefree_part(disc)
    s = isqrt(disc // m)
    for sub in K.quadratic_subfields:
        if sub.m == m:
            w = K.element(sub.witness)
            return (w * s - K.rational(root.a)) * Fraction(1, 2)
    return None


def split_norm_values(K: NumberFieldSpec, x: FieldElement, root: FrobeniusRoot, m: int) -> list[int]:
    """N_K(x - beta^m) and N_K(x - conj(beta)^m) when beta lies in K, else []."""
    beta = beta_in_K(K, root)
    if beta is None:
        return []
    bm = beta**m
    tm = beta_power_trace(root, m)
    bbar_m = K.rational(tm) - bm
    out = []
    for b in (bm, bbar_m):
        v = element_norm(K, x - b)
        out.append(int(v))
    return out


def embeddings(K: NumberFieldSpec, dps: int) -> list:
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpf(c) for c in reversed(K.defining_poly.coeffs)]
        if K.degree == 1:
            return [-coeffs[1] / coeffs[0]]
        return mpmath.polyroots(coeffs, maxsteps=200, extraprec=4 * dps)


def _embed(x: FieldElement, r) -> mpmath.mpc:
    pc = x.power_coords()
    acc = mpmath.mpf(0)
    for c in reversed(pc):
        acc = acc * r + mpmath.mpf(c.numerator) / c.denominator
    return acc


def norm_value_float(K: NumberFieldSpec, alpha: FieldElement, eps: Sequence[int], root: FrobeniusRoot,
                     m: int, dps: int = 60):
    """Embedding product of x^2 - t_m x + q^m at ``dps`` digits."""
    with mpmath.workdps(dps):
        rts = embeddings(K, dps)
        conj = [apply_automorphism(K, s, alpha) for s in range(len(eps))]
        t = mpmath.mpf(beta_power_trace(root, m))
        qm = mpmath.mpf(root.q) ** m
        total = mpmath.mpc(1)
        for r in rts:
            x = mpmath.mpc(1)
            for c, a in zip(conj, eps):
                if a:
                    x *= _embed(c, r) ** a
            total *= x * x - t * x + qm
        return total


def float_oracle(K: NumberFieldSpec, alpha: FieldElement, eps: Sequence[int], root: FrobeniusRoot, m: int,
                 digits: int) -> tuple[int, mpmath.mpf]:
    """Rounded embedding product and an error estimate from two working precisions.

    ``digits`` is the decimal size of the value; the precisions are chosen
    with 30 and 60 guard digits, and the estimate is their difference.
    """
    lo = norm_value_float(K, alpha, eps, root, m, digits + 30)
    hi = norm_value_float(K, alpha, eps, root, m, digits + 60)
    with mpmath.workdps(digits + 60):
        err = abs(hi - lo) + abs(hi.imag)
        val = int(mpmath.nint(hi.real))
        err += abs(hi.real - val)
        return val, err


# ---------------------------------------------------------------- enumeration
@dataclass(frozen=True)
class EnumerationInfeasible:
    count: int
    budget: int
    degree: int
    support_size: int
    kind: str = field(default="enumeration-infeasible", init=False)

    @property
    def message(self) -> str:
        return (f"enumeration infeasible at this degree: 5^{self.support_size} = {self.count} "
                f"exponent vectors exceed the budget {self.budget}")


@dataclass
class ValueRecord:
    q: int
    eps: tuple[int, ...]
    a: int
    value: int
    split_factor: bool = False


@dataclass
class ExceptionalSets:
    variant: str
    m: int
    N0: list[int]
    T: list[int]
    Ram: list[int]
    N1: list[int]
    provenance: dict[int, dict]
    tuple_count: int
    value_count: int
    zero_count: int
    distinct_values: int
    incomplete: list[dict] = field(default_factory=list)
    probable_primes: list[int] = field(default_factory=list)
    support: tuple[int, ...] = ()
    ram_is_upper_bound: bool = False

    @property
    def complete(self) -> bool:
        return not self.incomplete

    @property
    def max_cofactor(self) -> int:
        return max((c for rec in self.incomplete for c in rec["cofactors"]), default=0)


def exponent_vectors(n: int, variant: str, support: Sequence[int] | None = None):
    """Exponent vectors in lexicographic order, zero outside ``support``."""
    vals = EXPONENT_VALUES[variant]
    idx = list(range(n)) if support is None else sorted(set(support))
    for combo in itertools.product(vals, repeat=len(idx)):
        eps = [0] * n
        for i, v in zip(idx, combo):
            eps[i] = v
        yield tuple(eps)


def _evaluate(args) -> list[tuple]:
    K, alpha, q, eps_list, m = args
    roots = frobenius_roots(q)
    qm = q**m
    out = []
    for eps in eps_list:
        x = alpha_power(K, alpha, eps)
        x2 = x * x
        for root in roots:
            t = beta_power_trace(root, m)
            y = x2 - x * t + qm
            v = element_norm(K, y)
            value = int(v)
            out.append((eps, root.a, value, False))
            if value == 0:
                for sv in split_norm_values(K, x, root, m):
                    out.append((eps, root.a, sv, True))
    return out


def _factor(args):
    value, seed, rho, ecm = args
    return value, factor_integer(value, seed=seed, rho_iterations=rho, ecm_curves=ecm)


def build_exceptional_sets(K: NumberFieldSpec, classdata: ClassData, variant: str = PRIMED,
                           budget: int = DEFAULT_BUDGET, support: Sequence[int] | None = None,
                           workers: int = 1, seed: int = 0, maximality_assumed: bool = False,
                           rho_iterations: int = RHO_ITERATIONS, ecm_curves: int = ECM_CURVES):
    """Enumerate all (q, eps, beta), factor the nonzero norm values and assemble N1.

    Values whose factorization exceeds the rho/ECM effort leave composite
    cofactors; those are reported in ``incomplete`` and the set is not complete.
    """
    if variant not in EXPONENT_VALUES:
        raise ValueError(f"unknown variant {variant!r}")
    n = K.degree
    if support is not None and any(not 0 <= s < n for s in support):
        raise ValueError(f"support indices must lie in [0, {n})")
    k = n if support is None else len(set(support))
    count = len(EXPONENT_VALUES[variant]) ** k
    if count > budget:
        return EnumerationInfeasible(count, budget, n, k)
    m = BETA_EXPONENT[variant] * classdata.h
    eps_all = list(exponent_vectors(n, variant, support))
    chunk = max(1, len(eps_all) // (4 * max(1, workers)))
    jobs = [(K, e.alpha, e.q, eps_all[i:i + chunk], m)
            for e in classdata.entries for i in range(0, len(eps_all), chunk)]
    job_q = [e.q for e in classdata.entries for _ in range(0, len(eps_all), chunk)]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_evaluate, jobs))
    else:
        results = [_evaluate(j) for j in jobs]
    records = [ValueRecord(q, eps, a, v, sf) for q, res in zip(job_q, results) for eps, a, v, sf in res]

    nonzero = sorted({abs(r.value) for r in records if r.value})
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            facs = dict(ex.map(_factor, [(v, seed, rho_iterations, ecm_curves) for v in nonzero], chunksize=4))
    else:
        facs = dict(_factor((v, seed, rho_iterations, ecm_curves)) for v in nonzero)

    provenance: dict[int, dict] = {}
    N0: set[int] = set()
    incomplete = []
    probable: set[int] = set()
    seen_incomplete = set()
    for r in records:
        if r.value == 0:
            continue
        fac = facs[abs(r.value)]
        for p in fac.primes:
            N0.add(p)
            if p not in provenance:
                provenance[p] = {"sources": [], "witness": {"q": r.q, "eps": list(r.eps), "a": r.a,
                                                            "value": r.value, "split_factor": r.split_factor}}
        probable.update(fac.probable)
        if fac.cofactors and abs(r.value) not in seen_incomplete:
            seen_incomplete.add(abs(r.value))
            incomplete.append({"q": r.q, "eps": list(r.eps), "a": r.a, "value": r.value,
                               "cofactors": list(fac.cofactors)})
    T = set(classdata.primes) | {2, 3}
    Ram = set(ramified_primes(K))
    for p in sorted(N0 | T | Ram):
        src = provenance.setdefault(p, {"sources": []})["sources"]
        for name, s in (("N0", N0), ("T", T), ("Ram", Ram)):
            if p in s:
                src.append(name)
    N1 = sorted(N0 | T | Ram)
    provenance = {p: provenance[p] for p in N1}
    if incomplete:
        log.warning("%d norm values were not completely factored", len(incomplete))
    return ExceptionalSets(
        variant=variant, m=m, N0=sorted(N0), T=sorted(T), Ram=sorted(Ram), N1=N1,
        provenance=provenance, tuple_count=count, value_count=len(records),
        zero_count=sum(1 for r in records if r.value == 0 and not r.split_factor),
        distinct_values=len(nonzero), incomplete=incomplete, probable_primes=sorted(probable),
        support=tuple(range(n)) if support is None else tuple(sorted(set(support))),
        ram_is_upper_bound=maximality_assumed,
    )


# ---------------------------------------------------------------- bounds
def _cofactors(sets: ExceptionalSets | None) -> tuple[int, ...]:
    if sets is None:
        return ()
    return tuple(sorted({c for rec in sets.incomplete for c in rec["cofactors"]}))


@dataclass(frozen=True)
class IrreducibilityBound:
    """P(p): p > 4q, p does not divide d, p is outside N1 and divides no unfactored cofactor."""

    q: int
    d: int
    excluded: tuple[int, ...]
    cofactors: tuple[int, ...]
    constant: int | None
    components: tuple[tuple[str, int | None], ...]

    @property
    def available(self) -> bool:
        return self.constant is not None

    def holds(self, p: int) -> bool:
        if not self.available:
            raise ValueError("exceptional set not computed; the predicate cannot be evaluated")
        return (is_prime(p) and p > 4 * self.q and self.d % p != 0 and p not in self.excluded
                and all(c % p for c in self.cofactors))


def assemble_irreducibility_bound(K: NumberFieldSpec, B: QuaternionAlgebra,
                                  sets: ExceptionalSets | None, q: int) -> IrreducibilityBound:
    """P(p) and the constant C(B, K) with P(p) true for every prime p > C(B, K)."""
    d = B.d
    comps = [("4q", 4 * q), ("max prime of d", max(prime_divisors(d)))]
    if sets is None:
        comps.append(("max N1", None))
        return IrreducibilityBound(q, d, (), (), None, tuple(comps))
    comps.append(("max N1", max(sets.N1)))
    cof = _cofactors(sets)
    if cof:
        comps.append(("max unfactored cofactor", max(cof)))
    C = max(v for _, v in comps)
    return IrreducibilityBound(q, d, tuple(sets.N1), cof, C, tuple(comps))


THEOREM_GAMMA0_SPLIT = "M_0^B(p)(K) is empty"
THEOREM_GAMMA0_NONSPLIT = "M_0^B(p)(K) is contained in the set of elliptic points of order 2 or 3"


@dataclass(frozen=True)
class Gamma0Report:
    """Q(p): p > 4q, p >= 11, p != 13, p does not divide d, p outside N1 and N1'."""

    q: int
    d: int
    excluded: tuple[int, ...]
    cofactors: tuple[int, ...]
    constant: int | None
    splits_over_K: bool
    conclusion: str

    @property
    def available(self) -> bool:
        return self.constant is not None

    def holds(self, p: int) -> bool:
        if not self.available:
            raise ValueError("exceptional sets not computed; the predicate cannot be evaluated")
        return (is_prime(p) and p > 4 * self.q and p >= 11 and p != 13 and self.d % p != 0
                and p not in self.excluded and all(c % p for c in self.cofactors))


def assemble_gamma0_report(K: NumberFieldSpec, B: QuaternionAlgebra, primed: ExceptionalSets | None,
                           unprimed: ExceptionalSets | None, q: int) -> Gamma0Report:
    split = splits_over_K(B, K)
    conclusion = THEOREM_GAMMA0_SPLIT if split else THEOREM_GAMMA0_NONSPLIT
    d = B.d
    if primed is None or unprimed is None:
        return Gamma0Report(q, d, (), (), None, split, conclusion)
    excluded = tuple(sorted(set(primed.N1) | set(unprimed.N1)))
    cof = tuple(sorted(set(_cofactors(primed)) | set(_cofactors(unprimed))))
    C = max([4 * q, 13, max(prime_divisors(d)), *excluded, *cof])
    return Gamma0Report(q, d, excluded, cof, C, split, conclusion)
