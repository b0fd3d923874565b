"""Reading number-field specifications from JSON or TOML files."""

from __future__ import annotations

import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from ..polyarith.poly import IntPolynomial
from .field import ClaimedPrime, ClassGenerator, FieldSpecError, NumberFieldSpec, QuadraticSubfield

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

BUNDLED = {
    "Q": "q.json",
    "Q(sqrt(-5))": "q_sqrt_m5.json",
    "Q(sqrt(-1))": "q_sqrt_m1.json",
    "Q(sqrt(2))": "q_sqrt_2.json",
    "Q(sqrt(3),sqrt(-5))": "q_sqrt3_sqrt_m5.json",
    "Q(zeta_5)": "q_zeta5.json",
    "Q(zeta_17)": "q_zeta17.json",
}


def _rational(x: Any, where: str) -> Fraction:
    if isinstance(x, bool):
        raise FieldSpecError(f"{where}: expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise FieldSpecError(f"{where}: cannot parse rational {x!r}") from None
    raise FieldSpecError(f"{where}: expected an integer or 'num/den' string, got {x!r}")


def _integer(x: Any, where: str) -> int:
    r = _rational(x, where)
    if r.denominator != 1:
        raise FieldSpecError(f"{where}: expected an integer, got {x!r}")
    return int(r)


def _int_list(v: Any, where: str) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise FieldSpecError(f"{where}: expected a list")
    return tuple(_integer(x, f"{where}[{i}]") for i, x in enumerate(v))


def _rat_list(v: Any, where: str) -> tuple[Fraction, ...]:
    if not isinstance(v, list):
        raise FieldSpecError(f"{where}: expected a list")
    return tuple(_rational(x, f"{where}[{i}]") for i, x in enumerate(v))


def spec_from_dict(d: dict) -> NumberFieldSpec:
    if "defining_poly" not in d:
        raise FieldSpecError("defining_poly: missing required key")
    f = IntPolynomial(_int_list(d["defining_poly"], "defining_poly"))
    n = f.degree
    if n < 1:
        raise FieldSpecError("defining_poly: degree must be at least 1")
    if "integral_basis" in d:
        rows = d["integral_basis"]
        if not isinstance(rows, list):
            raise FieldSpecError("integral_basis: expected a list of rows")
        basis = tuple(_rat_list(r, f"integral_basis[{i}]") for i, r in enumerate(rows))
        basis = tuple(tuple(r) + (Fraction(0),) * (n - len(r)) for r in basis)
    else:
        basis = tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))
    auts_raw = d.get("automorphisms")
    if auts_raw is None:
        if n != 1:
            raise FieldSpecError("automorphisms: missing required key")
        auts_raw = [[0, 1]]
    if not isinstance(auts_raw, list):
        raise FieldSpecError("automorphisms: expected a list")
    auts = tuple(_rat_list(a, f"automorphisms[{i}]") for i, a in enumerate(auts_raw))
    h = _integer(d.get("class_number", 1), "class_number")
    gens = []
    for i, g in enumerate(d.get("class_generators", [])):
        w = f"class_generators[{i}]"
        try:
            gens.append(ClassGenerator(_integer(g["q"], f"{w}.q"), _integer(g["root"], f"{w}.root"),
                                       _int_list(g["alpha_coordinates"], f"{w}.alpha_coordinates")))
        except KeyError as e:
            raise FieldSpecError(f"{w}: missing key {e}") from None
    subs = []
    for i, s in enumerate(d.get("quadratic_subfields", [])):
        w = f"quadratic_subfields[{i}]"
        try:
            subs.append(QuadraticSubfield(_integer(s["m"], f"{w}.m"),
                                          _int_list(s["witness_coordinates"], f"{w}.witness_coordinates")))
        except KeyError as e:
            raise FieldSpecError(f"{w}: missing key {e}") from None
    facs = {}
    for p_raw, plist in d.get("prime_factorizations", {}).items():
        p = _integer(p_raw, f"prime_factorizations.{p_raw}")
        items = []
        for i, cp in enumerate(plist):
            w = f"prime_factorizations.{p_raw}[{i}]"
            try:
                g = tuple(_int_list(x, f"{w}.generators[{j}]") for j, x in enumerate(cp["generators"]))
                items.append(ClaimedPrime(g, _integer(cp["e"], f"{w}.e")))
            except KeyError as e:
                raise FieldSpecError(f"{w}: missing key {e}") from None
        facs[p] = tuple(items)
    return NumberFieldSpec(
        defining_poly=f,
        basis=basis,
        automorphisms=auts,
        class_number=h,
        class_generators=tuple(gens),
        quadratic_subfields=tuple(subs),
        prime_factorizations=facs,
        maximality_assumed=bool(d.get("maximality_assumed", False)),
        name=str(d.get("name", "")),
    )


def parse_field_text(text: str, fmt: str = "json") -> NumberFieldSpec:
    try:
        if fmt == "toml":
            data = tomllib.loads(text)
        else:
            data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FieldSpecError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    except tomllib.TOMLDecodeError as e:
        raise FieldSpecError(f"TOML: {e}") from None
    if not isinstance(data, dict):
        raise FieldSpecError("top level must be an object")
    return spec_from_dict(data)


def load_field(path: str | Path) -> NumberFieldSpec:
    path = resolve_field_path(path)
    fmt = "toml" if path.suffix == ".toml" else "json"
    return parse_field_text(path.read_text(encoding="utf-8"), fmt)


def resolve_field_path(path: str | Path) -> Path:
    p = Path(path)
    if p.exists():
        return p
    if str(path) in BUNDLED:
        return DATA_DIR / BUNDLED[str(path)]
    if (DATA_DIR / str(path)).exists():
        return DATA_DIR / str(path)
    raise FieldSpecError(f"field file not found: {path}")


def field_file_hash(path: str | Path) -> str:
    return hashlib.sha256(resolve_field_path(path).read_bytes()).hexdigest()


def bundled_field(name: str) -> NumberFieldSpec:
    return load_field(DATA_DIR / BUNDLED[name])
