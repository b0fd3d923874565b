import hashlib
import json
from dataclasses import replace

import jsonschema
import pytest

from conftest import field
from qmcert import cli, quaternion, replay
from qmcert.certify import (
    FINITE,
    PARTIAL,
    TRIVIAL,
    CertifyOptions,
    certificate_schema,
    certify,
    certify_spec,
    dumps,
    find_minimal_q,
    jsonable,
    loads,
)
from qmcert.numfield.io import resolve_field_path
from qmcert.numfield.splitting import splits_completely
from qmcert.polyarith.arith import primes_up_to
from qmcert.quaternion import find_presentation, nonsplit_over_imag_quad

VALIDATOR = jsonschema.Draft202012Validator(certificate_schema())
FAST = CertifyOptions(enumerate_sets=False)


@pytest.fixture(scope="module")
def m5_cert():
    return certify(10, "Q(sqrt(-5))", CertifyOptions(gamma0=True))


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(certificate_schema())


# ---------------------------------------------------------------- JSON helpers
def test_jsonable_big_integers():
    assert jsonable({"a": 2**53, "b": 2**53 + 1, "c": -(2**60), "d": [True, None, 1.5]}) == \
        {"a": 2**53, "b": str(2**53 + 1), "c": str(-(2**60)), "d": [True, None, 1.5]}
    with pytest.raises(TypeError):
        jsonable({1, 2})


def test_round_trip(m5_cert):
    assert loads(dumps(m5_cert)) == m5_cert
    assert dumps(loads(dumps(m5_cert))) == dumps(m5_cert)


# ---------------------------------------------------------------- verdicts
def test_trivial_by_real_place():
    c = certify(6, "Q(sqrt(2))")
    assert c["conclusion"]["verdict"] == TRIVIAL
    assert c["trivial_emptiness"]["reasons"] == ["(i) K has a real place"]
    assert c["bound"] is None and c["exceptional_sets"] is None
    VALIDATOR.validate(c)


def test_trivial_by_matrix_algebra():
    c = certify(22, "Q(zeta_5)")
    assert c["conclusion"]["verdict"] == TRIVIAL
    assert any(r.startswith("(ii)") for r in c["trivial_emptiness"]["reasons"])
    assert c["moduli"]["points_representable_by_QM_surface"] is False
    VALIDATOR.validate(c)


def test_partial_when_hcf_fails():
    c = certify(6, "Q(sqrt(-1))")
    assert c["conclusion"]["verdict"] == PARTIAL
    assert c["hypotheses"]["hcf_check"]["verdict"] == "contains-hcf"
    assert c["bound"] is None
    VALIDATOR.validate(c)


def test_partial_when_field_fails():
    K = field("Q(sqrt(-5))")
    bad = replace(K, automorphisms=(K.automorphisms[0], K.automorphisms[0]))
    c = certify_spec(10, bad, FAST)
    assert c["conclusion"]["verdict"] == PARTIAL
    assert not c["field_verification"]["ok"] and c["hypotheses"]["galois"]["status"] == "failed"
    VALIDATOR.validate(c)


def test_partial_when_q_ceiling_too_low():
    c = certify(10, "Q(sqrt(-5))", CertifyOptions(enumerate_sets=False, q_ceiling=5))
    assert c["conclusion"]["verdict"] == PARTIAL
    assert c["hypotheses"]["auxiliary_prime"] == {"found": False, "ceiling": 5}
    VALIDATOR.validate(c)


def test_finite_with_bound(m5_cert):
    c = m5_cert
    VALIDATOR.validate(c)
    assert c["conclusion"]["verdict"] == FINITE
    assert c["hypotheses"]["hcf_check"]["verdict"] == "all-clear"
    aux = c["hypotheses"]["auxiliary_prime"]
    assert aux["found"] and aux["q"] == 7
    sets = c["exceptional_sets"]
    assert sets["primed"]["status"] == "computed" and sets["primed"]["complete"]
    assert sets["unprimed"]["status"] == "computed"
    assert c["bound"]["available"] and int(c["bound"]["C"]) > 4 * aux["q"]
    assert c["gamma0"]["available"]
    assert c["input"]["field_sha256"] == hashlib.sha256(resolve_field_path("Q(sqrt(-5))").read_bytes()).hexdigest()
    assert c["input"]["field_file"] == "q_sqrt_m5.json"
    assert list(c) == ["tool", "input", "quaternion_algebra", "assumptions", "field_verification", "hypotheses",
                       "trivial_emptiness", "moduli", "exceptional_sets", "bound", "gamma0", "conclusion"]


def test_minimal_q_is_least():
    K = field("Q(sqrt(-5))")
    B = find_presentation(10)
    aux = find_minimal_q(K, B)
    assert all(not (nonsplit_over_imag_quad(B, q) and splits_completely(K, q)) for q in primes_up_to(aux.q - 1))
    assert aux.split_prime in (2, 5)


@pytest.mark.parametrize("d", [6, 10, 14, 15, 21, 22])
@pytest.mark.parametrize("name", ["Q", "Q(sqrt(-1))", "Q(sqrt(2))", "Q(sqrt(-5))", "Q(sqrt(3),sqrt(-5))",
                                  "Q(zeta_5)", "Q(zeta_17)"])
def test_finite_only_when_every_hypothesis_holds(d, name):
    c = certify_spec(d, field(name), FAST, source=name)
    VALIDATOR.validate(c)
    verdict = c["conclusion"]["verdict"]
    hyp = c["hypotheses"]
    if verdict == FINITE:
        assert c["field_verification"]["ok"] and hyp["galois"]["status"] == "verified"
        assert not hyp["real_place"] and hyp["splits_over_K"]
        assert hyp["hcf_check"]["verdict"] == "all-clear" and hyp["auxiliary_prime"]["found"]
        assert c["trivial_emptiness"]["flag"] is False
    elif verdict == TRIVIAL:
        assert c["trivial_emptiness"]["flag"] and c["bound"] is None
    else:
        assert c["bound"] is None and c["exceptional_sets"] is None
    # sets not enumerated means no effective constant
    if c["bound"] is not None:
        assert c["bound"]["available"] is False and c["bound"]["C"] is None


def test_infeasible_sets_recorded():
    c = certify(6, "Q(zeta_17)")
    VALIDATOR.validate(c)
    s = c["exceptional_sets"]["primed"]
    assert s["status"] == "enumeration-infeasible" and s["count"] == 5**16
    assert c["bound"]["available"] is False


def test_restricted_support_has_no_constant():
    c = certify(10, "Q(sqrt(-5))", CertifyOptions(support=[0]))
    VALIDATOR.validate(c)
    assert "restricted_support_note" in c["exceptional_sets"]
    assert c["bound"]["C"] is None


def test_deterministic_across_runs_and_workers(m5_cert):
    again = certify(10, "Q(sqrt(-5))", CertifyOptions(gamma0=True, workers=2))
    assert dumps(again) == dumps(m5_cert)


def test_bad_discriminants():
    for d in (1, 4, 7, 30, -6):
        with pytest.raises(ValueError):
            certify(d, "Q(sqrt(-5))")


# ---------------------------------------------------------------- CLI
def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_certify(capsys, tmp_path):
    code, out, _ = run(capsys, "certify", "-d", "22", "-K", "Q(zeta_5)")
    assert code == 0 and json.loads(out)["conclusion"]["verdict"] == TRIVIAL
    path = tmp_path / "cert.json"
    code, out, _ = run(capsys, "certify", "-d", "10", "-K", "Q(sqrt(-5))", "--no-sets", "-o", str(path))
    assert code == 0 and out == ""
    c = json.loads(path.read_text())
    VALIDATOR.validate(c)
    assert c["conclusion"]["verdict"] == FINITE


def test_cli_certify_field_file(capsys, tmp_path):
    src = resolve_field_path("Q(sqrt(-5))")
    path = tmp_path / "k.json"
    path.write_bytes(src.read_bytes())
    code, out, _ = run(capsys, "certify", "-d", "10", "-K", str(path), "--no-sets")
    c = json.loads(out)
    assert code == 0 and c["input"]["field_file"] == "k.json"
    assert c["input"]["field_sha256"] == hashlib.sha256(src.read_bytes()).hexdigest()


def test_cli_small_commands(capsys):
    code, out, _ = run(capsys, "splitting", "-K", "Q(zeta_5)", "-p", "11")
    assert code == 0 and json.loads(out)["efg"] == [1, 1, 4]
    code, out, _ = run(capsys, "hilbert", "-a", "-1", "-b", "3", "-v", "3")
    assert code == 0 and json.loads(out)["symbol"] == -1
    code, out, _ = run(capsys, "hilbert", "-a", "-1", "-b", "3", "-v", "inf")
    assert code == 0 and json.loads(out)["symbol"] == 1
    code, out, _ = run(capsys, "shimura-local", "-d", "6", "-p", "3")
    assert code == 0 and json.loads(out)["local_points"] is False
    code, out, _ = run(capsys, "shimura-local", "-d", "35", "-p", "3")
    assert code == 0 and json.loads(out)["outcome"] == "unsupported-genus"
    code, out, _ = run(capsys, "classnum", "-D", "-20")
    assert code == 0 and json.loads(out)["class_number"] == 2
    code, out, _ = run(capsys, "congruences", "-d", "6")
    assert code == 0 and json.loads(out) == {"d": 6, "modulus": 24, "residues": [2, 5, 7, 11, 17, 23]}
    code, out, _ = run(capsys, "sets", "-K", "Q")
    s = json.loads(out)
    assert code == 0 and s["status"] == "computed" and s["T"] == [2, 3, 5]


def test_cli_replay(capsys):
    code, out, _ = run(capsys, "replay-paper")
    assert code == 0 and "FAIL" not in out


def test_cli_replay_failure_exit(capsys, monkeypatch):
    bad = [replay.ReplayCheck("x", "1", "2")]
    monkeypatch.setattr(cli, "replay_paper_examples", lambda: bad)
    code, out, _ = run(capsys, "replay-paper")
    assert code == 2 and "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["certify", "-d", "7", "-K", "Q(sqrt(-5))"],
    ["certify", "-d", "10", "-K", "no/such/field.json"],
    ["certify", "-d", "10", "-K", "Q(sqrt(-5))", "--support", "a,b"],
    ["classnum", "-D", "12"],
    ["hilbert", "-a", "x", "-b", "3", "-v", "3"],
    ["certify", "-d", "10"],
    ["nonsense"],
])
def test_cli_input_errors(capsys, argv):
    try:
        code = cli.main(argv)
    except SystemExit as exc:  # argparse usage errors
        code = exc.code
    assert code == 1
    assert capsys.readouterr().err


def test_cli_bad_field_file(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "certify", "-d", "10", "-K", str(path))
    assert code == 1 and "input error" in err
    path.write_text(json.dumps({"name": "x", "defining_poly": [1, 0, 1]}))
    code, _, err = run(capsys, "certify", "-d", "10", "-K", str(path))
    assert code == 1


def test_cli_invariant_violation(capsys, monkeypatch):
    real = quaternion.hilbert_symbol
    monkeypatch.setattr(quaternion, "hilbert_symbol", lambda a, b, v: -1 if v == 2 else real(a, b, v))
    code, _, err = run(capsys, "certify", "-d", "10", "-K", "Q(sqrt(-5))", "--no-sets")
    assert code == 2 and "invariant" in err
