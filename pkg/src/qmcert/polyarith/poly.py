"""Integer polynomials: arithmetic, subresultant resultants, Sturm root counting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _strip(coeffs: Iterable) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in coeffs))

    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @property
    def degree(self) -> int:
        # the zero polynomial has degree -1
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self), len(other))
        return IntPolynomial(self[i] + other[i] for i in range(n))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self), len(other))
        return IntPolynomial(self[i] - other[i] for i in range(n))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(c * other for c in self.coeffs)
        return IntPolynomial(poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = _gcd(g, c)
        return g

    def is_monic(self) -> bool:
        return self.lead == 1

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                s = mono
            else:
                s = f"{abs(c)}*{mono}" if mono else str(abs(c))
            terms.append(("-" if c < 0 else "+", s))
        out = terms[0][1] if terms[0][0] == "+" else "-" + terms[0][1]
        for sign, s in terms[1:]:
            out += f" {sign} {s}"
        return out


def _gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def poly_divmod_monic(a: Sequence[int], m: Sequence[int]) -> tuple[list, list]:
    """Quotient and remainder of a by a monic polynomial m (exact over Z)."""
    if not m or m[-1] != 1:
        raise ValueError("divisor must be monic")
    r = list(a)
    dm = len(m) - 1
    if len(r) - 1 < dm:
        return [], list(_strip(r))
    q = [0] * (len(r) - dm)
    for k in range(len(r) - 1, dm - 1, -1):
        c = r[k]
        if c:
            q[k - dm] = c
            for j in range(dm + 1):
                r[k - dm + j] -= c * m[j]
    return list(_strip(q)), list(_strip(r[:dm]))


def poly_rem_monic(a: Sequence, m: Sequence[int]) -> list:
    return poly_divmod_monic(a, m)[1]


def _pseudo_rem(a: list, b: list) -> list:
    # lc(b)^(deg a - deg b + 1) * a  mod  b, exact over Z
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    e = len(r) - len(b) + 1
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for j in range(db + 1):
            r[shift + j] -= c * b[j]
        r = list(_strip(r))
        e -= 1
    if e > 0 and r:
        r = [x * lb**e for x in r]
    return r


def poly_resultant(f: IntPolynomial, g: IntPolynomial) -> int:
    """Res(f, g) via the subresultant PRS; no rational arithmetic."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of the zero polynomial is undefined")
    a, b = list(f.coeffs), list(g.coeffs)
    da, db = len(a) - 1, len(b) - 1
    if da == 0:
        return a[0] ** db
    if db == 0:
        return b[0] ** da
    ca, cb = _content(a), _content(b)
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    t = ca**db * cb**da
    s = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if da % 2 and db % 2:
            s = -1
    g_, h = 1, 1
    while db > 0:
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _pseudo_rem(a, b)
        if not r:
            return 0
        div = g_ * h**delta
        a, b = b, [x // div for x in r]
        g_ = a[-1]
        if delta:
            h = g_**delta // h ** (delta - 1)
        da, db = len(a) - 1, len(b) - 1
    h = b[0] ** da // h ** (da - 1)
    return s * t * h


def _content(c: Sequence[int]) -> int:
    g = 0
    for x in c:
        g = _gcd(g, x)
    return g or 1


def discriminant(f: IntPolynomial) -> int:
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    r = poly_resultant(f, f.derivative()) if n > 1 else 1
    s = -1 if (n * (n - 1) // 2) % 2 else 1
    if n == 1:
        return 1
    return s * r // f.lead


# Rational polynomial helpers used by the Sturm sequence.

def _qdivmod(a: list, b: list) -> tuple[list, list]:
    r = [Fraction(x) for x in a]
    db = len(b) - 1
    lb = Fraction(b[-1])
    if len(r) - 1 < db:
        return [], list(_strip(r))
    q = [Fraction(0)] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k] / lb
        q[k - db] = c
        if c:
            for j in range(db + 1):
                r[k - db + j] -= c * b[j]
    return list(_strip(q)), list(_strip(r[:db]))


def poly_gcd_q(a: Sequence, b: Sequence) -> list:
    a, b = list(_strip(a)), list(_strip(b))
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, r
    if not a:
        return []
    lc = Fraction(a[-1])
    return [Fraction(x) / lc for x in a]


def is_squarefree(f: IntPolynomial) -> bool:
    return len(poly_gcd_q(f.coeffs, f.derivative().coeffs)) <= 1


def sturm_sequence(f: IntPolynomial) -> list[list]:
    seq = [[Fraction(c) for c in f.coeffs], [Fraction(c) for c in f.derivative().coeffs]]
    while seq[-1] and len(seq[-1]) > 1:
        _, r = _qdivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])
    return seq


def _sign_changes(values: Iterable) -> int:
    n, prev = 0, 0
    for v in values:
        if v == 0:
            continue
        s = 1 if v > 0 else -1
        if prev and s != prev:
            n += 1
        prev = s
    return n


def count_real_roots(f: IntPolynomial) -> int:
    """Number of distinct real roots of a squarefree integer polynomial."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if not is_squarefree(f):
        raise ValueError("count_real_roots requires a squarefree polynomial")
    if f.degree < 1:
        return 0
    seq = sturm_sequence(f)
    # signs at -inf and +inf come from leading coefficients and degrees
    at_neg = [p[-1] * (-1) ** (len(p) - 1) for p in seq if p]
    at_pos = [p[-1] for p in seq if p]
    return _sign_changes(at_neg) - _sign_changes(at_pos)
