import random
from fractions import Fraction

import pytest

from conftest import ALL_FIELDS, field
from qmcert.numfield.field import FieldSpecError, apply_automorphism, element_norm
from qmcert.numfield.ideals import (
    IdealError,
    ideal_from_generators,
    ideal_from_prime,
    ideal_multiply,
    ideal_power,
    unit_ideal,
    verify_principal_generator,
)
from qmcert.numfield.io import parse_field_text, spec_from_dict
from qmcert.numfield.splitting import (
    FactorizationClaimError,
    IndexDivisorError,
    ramified_primes,
    splits_completely,
    splitting_data,
    verify_prime_factorization,
)
from qmcert.numfield.verify import ASSUMED, FAIL, PASS, composition_table, verify_field_spec
from qmcert.polyarith.arith import primes_up_to
from qmcert.polyarith.finitefield import factor_mod_p


def _rand_element(K, rng, size=9):
    return K.element([rng.randint(-size, size) for _ in range(K.degree)])


def _status(report, name):
    return next(c.status for c in report.checks if c.name == name)


# ---------------------------------------------------------------- verification
@pytest.mark.parametrize("name", ALL_FIELDS)
def test_bundled_fields_verify(name):
    rep = verify_field_spec(field(name))
    assert rep.ok, rep.failed()
    assert _status(rep, "Galois count") == PASS
    assert _status(rep, "group closure") == PASS


def test_zeta5_all_checks_pass():
    rep = verify_field_spec(field("Q(zeta_5)"))
    assert all(c.status in (PASS, ASSUMED) for c in rep.checks)
    assert rep.assumptions == ["class number h_K = 1 is asserted, not computed"]


def test_power_basis_for_biquadratic_flags_two():
    K = spec_from_dict({"defining_poly": [64, 0, 4, 0, 1],
                        "automorphisms": [[0, 1], ["0", "-1/2", "0", "-1/8"], ["0", "1/2", "0", "1/8"], [0, -1]]})
    rep = verify_field_spec(K)
    assert not rep.ok
    bad = {c.name: c.detail for c in rep.failed()}
    assert "maximality" in bad and "2" in bad["maximality"]


def test_power_basis_with_maximality_assumed_is_an_upper_bound():
    K = spec_from_dict({"defining_poly": [64, 0, 4, 0, 1], "maximality_assumed": True,
                        "automorphisms": [[0, 1], ["0", "-1/2", "0", "-1/8"], ["0", "1/2", "0", "1/8"], [0, -1]]})
    rep = verify_field_spec(K)
    assert _status(rep, "maximality") == ASSUMED
    assert 2 in rep.unverified_maximality


def test_galois_count_failure():
    K = spec_from_dict({"defining_poly": [1, 1, 1, 1, 1], "automorphisms": [[0, 1], [0, 0, 1]]})
    rep = verify_field_spec(K)
    assert _status(rep, "Galois count") == FAIL


def test_reducible_polynomial_rejected():
    K = spec_from_dict({"defining_poly": [2, 0, 3, 0, 1], "automorphisms": [[0, 1]] * 4})
    assert _status(verify_field_spec(K), "irreducible") == FAIL


def test_bad_witness_rejected():
    K = spec_from_dict({"defining_poly": [5, 0, 1], "automorphisms": [[0, 1], [0, -1]],
                        "quadratic_subfields": [{"m": -3, "witness_coordinates": [0, 1]}]})
    assert not verify_field_spec(K).ok


def test_parse_errors_carry_context():
    with pytest.raises(FieldSpecError, match="line 1"):
        parse_field_text("{bad json")
    with pytest.raises(FieldSpecError, match="class_number"):
        spec_from_dict({"defining_poly": [1, 0, 1], "automorphisms": [[0, 1], [0, -1]], "class_number": "x"})
    with pytest.raises(FieldSpecError, match="defining_poly"):
        spec_from_dict({})


def test_toml_field_file():
    K = parse_field_text('defining_poly = [5, 0, 1]\nautomorphisms = [[0, 1], [0, -1]]\nclass_number = 2\n', "toml")
    assert K.degree == 2 and K.class_number == 2


# ---------------------------------------------------------------- norms and automorphisms
def test_norm_examples():
    K5 = field("Q(sqrt(-5))")
    assert element_norm(K5, K5.one()) == 1
    assert element_norm(K5, K5.element([2, 3])) == 49
    Kz = field("Q(zeta_5)")
    assert element_norm(Kz, Kz.one() - Kz.theta) == 5


def test_automorphism_examples():
    K = field("Q(zeta_5)")
    z = K.theta
    assert apply_automorphism(K, 0, z) == z
    assert apply_automorphism(K, 1, z) == z * z


@pytest.mark.parametrize("name", ALL_FIELDS)
def test_norm_multiplicative(name):
    K = field(name)
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(500):
        x, y = _rand_element(K, rng), _rand_element(K, rng)
        assert element_norm(K, x * y) == element_norm(K, x) * element_norm(K, y)


@pytest.mark.parametrize("name", ALL_FIELDS)
def test_norm_automorphism_invariant(name):
    K = field(name)
    rng = random.Random(7)
    for _ in range(30):
        x = _rand_element(K, rng)
        nx = element_norm(K, x)
        assert nx.denominator == 1
        for s in range(len(K.automorphisms)):
            assert element_norm(K, apply_automorphism(K, s, x)) == nx


@pytest.mark.parametrize("name", ALL_FIELDS)
def test_automorphisms_permute_roots_and_close(name):
    K = field(name)
    f = K.defining_poly.coeffs
    for s in range(len(K.automorphisms)):
        img = apply_automorphism(K, s, K.theta)
        acc = K.rational(0)
        for c in reversed(f):
            acc = acc * img + K.rational(c)
        assert acc.is_zero()
    table = composition_table(K)
    n = len(K.automorphisms)
    assert all(sorted(row) == list(range(n)) for row in table)


# ---------------------------------------------------------------- splitting
@pytest.mark.parametrize("name,p,efg", [
    ("Q(sqrt(3),sqrt(-5))", 3, (2, 1, 2)),
    ("Q(zeta_5)", 11, (1, 1, 4)),
    ("Q(zeta_17)", 2, (1, 8, 2)),
    ("Q(sqrt(-5))", 2, (2, 1, 1)),
    ("Q(sqrt(-5))", 7, (1, 1, 2)),
])
def test_splitting_examples(name, p, efg):
    assert splitting_data(field(name), p).efg() == efg


@pytest.mark.parametrize("name", ALL_FIELDS)
def test_sum_ef_equals_degree(name):
    K = field(name)
    for p in primes_up_to(100):
        sd = splitting_data(K, p)
        assert sum(e * f for e, f in sd.factors) == K.degree


def test_index_divisor_requires_factorization():
    K = spec_from_dict({"defining_poly": [64, 0, 4, 0, 1], "maximality_assumed": True,
                        "integral_basis": [["1", "0", "0", "0"], ["0", "1/4", "0", "-1/16"],
                                           ["1", "0", "1/4", "0"], ["0", "1/2", "0", "0"]],
                        "automorphisms": [[0, 1], ["0", "-1/2", "0", "-1/8"], ["0", "1/2", "0", "1/8"], [0, -1]]})
    with pytest.raises(IndexDivisorError, match="index divisor"):
        splitting_data(K, 2)


def test_splits_completely_examples():
    assert splits_completely(field("Q(sqrt(3),sqrt(-5))"), 23)
    assert splits_completely(field("Q(zeta_5)"), 11)
    assert not splits_completely(field("Q(zeta_5)"), 7)


@pytest.mark.parametrize("name", ALL_FIELDS)
def test_splits_completely_matches_linear_factorization(name):
    K = field(name)
    for q in primes_up_to(1500):
        if K.index % q == 0:
            continue
        fac = factor_mod_p(K.defining_poly, q)
        linear = len(fac) == K.degree and all(m == 1 and g.degree == 1 for g, m in fac)
        assert splits_completely(K, q) == linear, q


@pytest.mark.parametrize("name,ram", [
    ("Q(zeta_5)", [5]), ("Q(sqrt(3),sqrt(-5))", [2, 3, 5]), ("Q(sqrt(-5))", [2, 5]), ("Q", []),
    ("Q(zeta_17)", [17]),
])
def test_ramified_primes(name, ram):
    assert ramified_primes(field(name)) == ram


# ---------------------------------------------------------------- ideals
def test_ideal_from_prime_examples():
    K5 = field("Q(sqrt(-5))")
    assert ideal_from_prime(K5, 7, 3).norm == 7
    assert ideal_from_prime(field("Q(zeta_5)"), 11, 4).norm == 11
    with pytest.raises(IdealError):
        ideal_from_prime(K5, 7, 2)


def test_ideal_products():
    K = field("Q(sqrt(-5))")
    I = ideal_from_prime(K, 7, 3)
    assert ideal_multiply(I, unit_ideal(K)) == I
    P2 = ideal_from_generators(K, [K.rational(2), K.element([1, 1])])
    assert P2.norm == 2
    assert ideal_power(P2, 2) == ideal_from_generators(K, [K.rational(2)])


@pytest.mark.parametrize("name", ["Q(sqrt(-5))", "Q(sqrt(3),sqrt(-5))", "Q(zeta_5)"])
def test_ideal_norm_multiplicative(name):
    K = field(name)
    rng = random.Random(11)
    primes = [(q, r) for q in primes_up_to(400) if K.index % q and splits_completely(K, q)
              for r in [next(r for r in range(q) if sum(c * r**i for i, c in enumerate(K.defining_poly.coeffs)) % q == 0)]]
    for _ in range(100):
        (q1, r1), (q2, r2) = rng.choice(primes), rng.choice(primes)
        I, J = ideal_from_prime(K, q1, r1), ideal_from_prime(K, q2, r2)
        assert ideal_multiply(I, J).norm == I.norm * J.norm == q1 * q2


def test_principal_generator():
    K = field("Q(sqrt(-5))")
    alpha = K.element([2, 3])
    # 2 + 3 sqrt(-5) lies in (7, sqrt(-5) - 4); the conjugate prime (7, sqrt(-5) - 3) contains 2 - 3 sqrt(-5)
    q7 = ideal_from_prime(K, 7, 4)
    assert verify_principal_generator(K, ideal_power(q7, 2), alpha)
    assert not verify_principal_generator(K, ideal_power(ideal_from_prime(K, 7, 3), 2), alpha)
    assert verify_principal_generator(K, ideal_power(ideal_from_prime(K, 7, 3), 2), K.element([2, -3]))
    assert verify_principal_generator(K, unit_ideal(K), K.one())
    assert not verify_principal_generator(K, q7, alpha)


def test_verify_prime_factorization():
    K = field("Q(sqrt(-5))")
    P2 = ideal_from_generators(K, [K.rational(2), K.element([1, 1])])
    assert verify_prime_factorization(K, 2, [(P2, 2)]).factors == ((2, 1),)
    sd = verify_prime_factorization(K, 7, [(ideal_from_prime(K, 7, 3), 1), (ideal_from_prime(K, 7, 4), 1)])
    assert sd.factors == ((1, 1), (1, 1))
    with pytest.raises(FactorizationClaimError) as exc:
        verify_prime_factorization(K, 2, [(P2, 1), (P2, 1)])
    assert exc.value.check == "product mismatch"
    with pytest.raises(FactorizationClaimError):
        verify_prime_factorization(K, 2, [(P2, 3)])


def test_biquadratic_index_divisor_uses_verified_claim():
    K = field("Q(sqrt(3),sqrt(-5))")
    assert K.index % 2 == 0
    assert splitting_data(K, 2).efg() == (2, 1, 2)


def test_power_coordinates_roundtrip():
    K = field("Q(sqrt(3),sqrt(-5))")
    rng = random.Random(3)
    for _ in range(50):
        x = _rand_element(K, rng)
        assert K.from_power(x.power_coords()) == x
        assert all(isinstance(c, Fraction) for c in x.power_coords())
