"""Points on the genus-0 Shimura curves x^2 + y^2 + m = 0 (d = 6, 10, 22)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .numfield.field import NumberFieldSpec
from .numfield.splitting import splitting_data
from .polyarith.arith import prime_divisors
from .polyarith.poly import count_real_roots
from .quaternion import INF, InvariantViolation, QuaternionAlgebra, hilbert_symbol, splits_over_K

CONIC_CONSTANTS = {6: 3, 10: 2, 22: 11}


@dataclass(frozen=True)
class ConicModel:
    d: int
    m: int

    def __post_init__(self):
        if CONIC_CONSTANTS.get(self.d) != self.m:
            raise ValueError(f"no conic model with (d, m) = ({self.d}, {self.m})")


@dataclass(frozen=True)
class UnsupportedGenus:
    d: int
    kind: str = field(default="unsupported-genus", init=False)

    @property
    def reason(self) -> str:
        return f"unsupported: genus > 0 for d = {self.d}"


@dataclass(frozen=True)
class NonEmptyInfinite:
    kind: str = field(default="nonempty-infinite", init=False)


@dataclass(frozen=True)
class Empty:
    place: str
    kind: str = field(default="empty", init=False)

    def describe(self) -> str:
        return "empty at a real place" if self.place == INF else f"empty at a place above {self.place}"


def conic_model(d: int) -> ConicModel | UnsupportedGenus:
    if d in CONIC_CONSTANTS:
        return ConicModel(d, CONIC_CONSTANTS[d])
    return UnsupportedGenus(d)


def local_points_Qp(model: ConicModel, p: int) -> bool:
    # x^2 + y^2 = -m z^2 has a nontrivial solution iff -m is a norm from Q_p(i)
    return hilbert_symbol(-1, -model.m, p) == 1


def real_points(model: ConicModel) -> bool:
    if hilbert_symbol(-1, -model.m, INF) != -1:
        raise InvariantViolation("x^2 + y^2 + m = 0 with m > 0 must have no real points")
    return False


def local_points_Kv(model: ConicModel, K: NumberFieldSpec, p: int) -> list[bool]:
    """One flag per prime of K above p, ordered as in the splitting data."""
    over_qp = local_points_Qp(model, p)
    return [over_qp or (e * f) % 2 == 0 for e, f in splitting_data(K, p).factors]


def has_real_place(K: NumberFieldSpec) -> bool:
    return count_real_roots(K.defining_poly) > 0


def bad_places(model: ConicModel, K: NumberFieldSpec) -> list[int]:
    """Primes dividing 2 m disc(basis); elsewhere the conic has good reduction."""
    return prime_divisors(abs(2 * model.m * int(K.basis_discriminant)))


def global_points(model: ConicModel | UnsupportedGenus, K: NumberFieldSpec):
    if isinstance(model, UnsupportedGenus):
        return model
    if has_real_place(K):
        real_points(model)
        return Empty(INF)
    for p in bad_places(model, K):
        if not all(local_points_Kv(model, K, p)):
            return Empty(str(p))
    return NonEmptyInfinite()


@dataclass(frozen=True)
class ModuliFlags:
    points_representable_by_QM_surface: bool
    infinitely_many_QM_surfaces: bool | None
    trivial_emptiness: bool
    trivial_emptiness_reasons: tuple[str, ...]
    global_points: str


def moduli_flags(model: ConicModel | UnsupportedGenus, K: NumberFieldSpec, B: QuaternionAlgebra) -> ModuliFlags:
    split = splits_over_K(B, K)
    real = has_real_place(K)
    reasons = []
    if real:
        reasons.append("(i) K has a real place")
    if not split:
        reasons.append("(ii) B tensor K is not a matrix algebra")
    gp = global_points(model, K)
    if isinstance(gp, UnsupportedGenus):
        infinite = None
        gp_text = gp.kind
    else:
        infinite = isinstance(gp, NonEmptyInfinite) and split
        gp_text = gp.kind if isinstance(gp, NonEmptyInfinite) else gp.describe()
    return ModuliFlags(split, infinite, bool(reasons), tuple(reasons), gp_text)
