"""Hypothesis checks and certificate assembly for a pair (d, K)."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .boundsets import (
    DEFAULT_BUDGET,
    ECM_CURVES,
    RHO_ITERATIONS,
    PRIMED,
    UNPRIMED,
    ClassDataError,
    EnumerationInfeasible,
    ExceptionalSets,
    assemble_gamma0_report,
    assemble_irreducibility_bound,
    build_class_data,
    build_exceptional_sets,
)
from .numfield.field import NumberFieldSpec
from .numfield.io import field_file_hash, load_field, resolve_field_path
from .numfield.splitting import splits_completely
from .numfield.verify import PASS, verify_field_spec
from .polyarith.arith import next_prime
from .polyarith.finitefield import roots_mod_p
from .quadforms import NoImagQuadSubfieldHasHCFInK, hcf_containment_check
from .quaternion import QuaternionAlgebra, check_discriminant, find_presentation, nonsplit_over_imag_quad, split_witness
from .shimura import conic_model, has_real_place, moduli_flags

SAFE_INT = 2**53
Q_CEILING = 10**6

FINITE, TRIVIAL, PARTIAL = "finite", "trivially-empty", "partial"
FINITE_TEXT = ("the set A(K,2)_B is finite: for every prime p > C(B,K) the mod-p representation "
               "attached to any QM-abelian surface by O over K is irreducible")
TRIVIAL_TEXT = "empty for a trivial reason: there are no QM-abelian surfaces by O over K"
SET_STATUS_COMPUTED = "computed"


@dataclass
class CertifyOptions:
    gamma0: bool = False
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    workers: int = 1
    enumerate_sets: bool = True
    support: Sequence[int] | None = None
    q_ceiling: int = Q_CEILING
    rho_iterations: int = RHO_ITERATIONS
    ecm_curves: int = ECM_CURVES


@dataclass(frozen=True)
class AuxiliaryPrime:
    q: int
    roots: tuple[int, ...]
    split_prime: int


def find_minimal_q(K: NumberFieldSpec, B: QuaternionAlgebra, ceiling: int = Q_CEILING) -> AuxiliaryPrime | None:
    """Least prime q splitting completely in K with B tensor Q(sqrt(-q)) nonsplit."""
    q = 2
    while q <= ceiling:
        if nonsplit_over_imag_quad(B, q) and splits_completely(K, q):
            return AuxiliaryPrime(q, tuple(roots_mod_p(K.defining_poly, q)), split_witness(B, q))
        q = next_prime(q)
    return None


# ---------------------------------------------------------------- JSON helpers
def jsonable(x: Any) -> Any:
    """Plain JSON data with integers beyond 53 bits written as decimal strings."""
    if isinstance(x, bool) or x is None or isinstance(x, (str, float)):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > SAFE_INT else x
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(cert: dict) -> str:
    return json.dumps(cert, indent=2, ensure_ascii=False) + "\n"


def loads(text: str) -> dict:
    return json.loads(text)


def certificate_schema() -> dict:
    """The JSON schema that every certificate conforms to."""
    return json.loads((Path(__file__).parent / "data" / "certificate.schema.json").read_text(encoding="utf-8"))


def sets_to_json(sets) -> dict:
    if sets is None:
        return {"status": "not computed"}
    if isinstance(sets, EnumerationInfeasible):
        return {"status": sets.kind, "count": sets.count, "budget": sets.budget,
                "support_size": sets.support_size, "message": sets.message}
    if isinstance(sets, str):
        return {"status": "not computed", "reason": sets}
    return {
        "status": SET_STATUS_COMPUTED,
        "variant": sets.variant,
        "beta_exponent": sets.m,
        "support": list(sets.support),
        "tuple_count": sets.tuple_count,
        "value_count": sets.value_count,
        "zero_values_excluded": sets.zero_count,
        "distinct_nonzero_values": sets.distinct_values,
        "complete": sets.complete,
        "N0": sets.N0,
        "T": sets.T,
        "Ram": sets.Ram,
        "Ram_is_upper_bound": sets.ram_is_upper_bound,
        "N1": sets.N1,
        "provenance": [dict(prime=p, **sets.provenance[p]) for p in sets.N1],
        "probable_primes": sets.probable_primes,
        "incomplete_factorizations": sets.incomplete,
    }


def _hcf_json(v) -> dict:
    out = {"verdict": v.kind}
    if hasattr(v, "m"):
        out["field"] = f"Q(sqrt({v.m}))"
    if hasattr(v, "reason"):
        out["reason"] = v.reason
    out["subfields"] = [{"m": m, "class_number": h, "branch": b, "reason": r} for m, h, b, r in v.details]
    return out


# ---------------------------------------------------------------- driver
def certify(d: int, field_file: str | Path, options: CertifyOptions | None = None) -> dict:
    """Run every hypothesis check for (d, K) and assemble the certificate."""
    opts = options or CertifyOptions()
    check_discriminant(d)
    path = resolve_field_path(field_file)
    K = load_field(path)
    B = find_presentation(d)
    return _certify(d, K, B, path, field_file_hash(path), opts)


def certify_spec(d: int, K: NumberFieldSpec, options: CertifyOptions | None = None, source: str = "",
                 digest: str = "") -> dict:
    opts = options or CertifyOptions()
    check_discriminant(d)
    return _certify(d, K, find_presentation(d), source, digest, opts)


def _certify(d: int, K: NumberFieldSpec, B: QuaternionAlgebra, path, digest: str, opts: CertifyOptions) -> dict:
    keys = ("tool", "input", "quaternion_algebra", "assumptions", "field_verification", "hypotheses",
            "trivial_emptiness", "moduli", "exceptional_sets", "bound", "gamma0", "conclusion")
    cert: dict[str, Any] = dict.fromkeys(keys)
    cert["tool"] = {"name": "qmcert", "version": __version__, "seed": opts.seed}
    cert["input"] = {
        "d": d,
        "field_file": Path(str(path)).name if path else "",
        "field_sha256": digest,
        "field_name": K.name,
        "options": {"gamma0": opts.gamma0, "budget": opts.budget, "enumerate_sets": opts.enumerate_sets,
                    "support": None if opts.support is None else sorted(set(opts.support)),
                    "q_ceiling": opts.q_ceiling, "rho_iterations": opts.rho_iterations,
                    "ecm_curves": opts.ecm_curves},
    }
    cert["quaternion_algebra"] = {"a": B.a, "b": B.b, "d": B.d, "ram_set": B.ram_set}
    assumptions: list[str] = []
    cert["assumptions"] = assumptions
    hyp: dict[str, Any] = {}

    rep = verify_field_spec(K)
    cert["field_verification"] = {
        "ok": rep.ok,
        "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in rep.checks],
        "irreducibility_witness": rep.irreducibility_witness,
        "closure_table_sha256": rep.closure_table_hash if rep.closure_table else "",
        "maximal_at": rep.maximal_at,
    }
    assumptions.extend(rep.assumptions)
    cert["hypotheses"] = hyp
    galois_ok = rep.ok and any(c.name == "group closure" and c.status == PASS for c in rep.checks)
    hyp["galois"] = {"status": "verified" if galois_ok else "failed", "degree": K.degree}
    if not rep.ok:
        bad = rep.failed()[0]
        return _finish(cert, PARTIAL, f"field verification failed: {bad.name}: {bad.detail}")

    model = conic_model(d)
    flags = moduli_flags(model, K, B)
    real = has_real_place(K)
    hyp["real_place"] = real
    hyp["splits_over_K"] = flags.points_representable_by_QM_surface
    cert["trivial_emptiness"] = {"flag": flags.trivial_emptiness, "reasons": list(flags.trivial_emptiness_reasons)}
    cert["moduli"] = {
        "genus_zero_model": None if not hasattr(model, "m") else f"x^2 + y^2 + {model.m} = 0",
        "global_points": flags.global_points,
        "points_representable_by_QM_surface": flags.points_representable_by_QM_surface,
        "infinitely_many_QM_surfaces": flags.infinitely_many_QM_surfaces,
    }
    if flags.trivial_emptiness:
        return _finish(cert, TRIVIAL, TRIVIAL_TEXT)

    verdict = hcf_containment_check(K, rep)
    hyp["hcf_check"] = _hcf_json(verdict)
    if not isinstance(verdict, NoImagQuadSubfieldHasHCFInK):
        why = getattr(verdict, "reason", verdict.kind)
        return _finish(cert, PARTIAL, f"Hilbert class field hypothesis not established: {why}")

    aux = find_minimal_q(K, B, opts.q_ceiling)
    if aux is None:
        hyp["auxiliary_prime"] = {"found": False, "ceiling": opts.q_ceiling}
        return _finish(cert, PARTIAL, f"no q found below ceiling {opts.q_ceiling}")
    hyp["auxiliary_prime"] = {"found": True, "q": aux.q, "roots_mod_q": list(aux.roots),
                              "split_prime_of_d": aux.split_prime}

    primed = unprimed = None
    if opts.enumerate_sets:
        try:
            cd = build_class_data(K)
        except ClassDataError as e:
            primed = f"class data rejected: {e}"
            cd = None
        if cd is not None:
            assumptions.append(f"the generator primes {cd.primes} generate the class group of K")
            kw = dict(budget=opts.budget, support=opts.support, workers=opts.workers, seed=opts.seed,
                      maximality_assumed=bool(rep.unverified_maximality), rho_iterations=opts.rho_iterations,
                      ecm_curves=opts.ecm_curves)
            primed = build_exceptional_sets(K, cd, PRIMED, **kw)
            if opts.gamma0:
                unprimed = build_exceptional_sets(K, cd, UNPRIMED, **kw)
    sets_json = {"primed": sets_to_json(primed)}
    if opts.gamma0:
        sets_json["unprimed"] = sets_to_json(unprimed)
    if opts.support is not None and isinstance(primed, ExceptionalSets):
        sets_json["restricted_support_note"] = "exponents outside the support were fixed at 0; sets are partial"
    cert["exceptional_sets"] = sets_json

    p_sets = primed if isinstance(primed, ExceptionalSets) and opts.support is None else None
    u_sets = unprimed if isinstance(unprimed, ExceptionalSets) and opts.support is None else None
    bound = assemble_irreducibility_bound(K, B, p_sets, aux.q)
    cert["bound"] = {
        "C": bound.constant,
        "available": bound.available,
        "components": [{"name": k, "value": v} for k, v in bound.components],
        "predicate": "p > 4q and p does not divide d and p not in N1' and p divides no unfactored value",
    }
    if not bound.available:
        cert["bound"]["reason"] = "the exceptional set was not fully enumerated, so C(B,K) is not computed"
    if opts.gamma0:
        g0 = assemble_gamma0_report(K, B, p_sets, u_sets, aux.q)
        cert["gamma0"] = {"C": g0.constant, "available": g0.available, "splits_over_K": g0.splits_over_K,
                          "conclusion": g0.conclusion,
                          "predicate": "p > 4q, p >= 11, p != 13, p does not divide d, p not in N1 or N1'"}
    return _finish(cert, FINITE, FINITE_TEXT)


def _finish(cert: dict, verdict: str, text: str) -> dict:
    cert["conclusion"] = {"verdict": verdict, "text": text}
    return jsonable(cert)

