import random

import pytest

from conftest import field
from oracles import brute_hilbert
from qmcert.polyarith.arith import next_prime, primes_up_to
from qmcert.quaternion import INF, find_presentation, hilbert_symbol
from qmcert.shimura import (
    ConicModel,
    Empty,
    NonEmptyInfinite,
    UnsupportedGenus,
    bad_places,
    conic_model,
    global_points,
    local_points_Kv,
    local_points_Qp,
    moduli_flags,
    real_points,
)


def test_conic_models():
    assert conic_model(6).m == 3 and conic_model(10).m == 2 and conic_model(22).m == 11
    u = conic_model(15)
    assert isinstance(u, UnsupportedGenus) and "genus > 0" in u.reason
    with pytest.raises(ValueError):
        ConicModel(6, 2)


def test_local_points_examples():
    assert not local_points_Qp(conic_model(6), 3)
    assert local_points_Qp(conic_model(22), 2)
    assert local_points_Qp(conic_model(10), 7)


@pytest.mark.parametrize("d,bad", [(6, 3), (10, 2), (22, 11)])
def test_local_points_table(d, bad):
    model = conic_model(d)
    assert [p for p in primes_up_to(1000) if not local_points_Qp(model, p)] == [bad]


@pytest.mark.parametrize("d", [6, 10, 22])
def test_local_points_vs_brute_force(d):
    model = conic_model(d)
    # x^2 + y^2 = -m z^2 has a point iff -m (x^2 + y^2) is a nonzero square for some (x, y)
    for p in primes_up_to(50):
        assert local_points_Qp(model, p) == (brute_hilbert(-model.m, -model.m, p) == 1), p


def test_sum_of_two_squares_criterion():
    # x^2 + y^2 + p = 0 over Q_p iff p = 1 mod 4
    for p in primes_up_to(500)[1:]:
        assert (hilbert_symbol(-1, -p, p) == 1) == (p % 4 == 1)


def test_good_reduction_spot_check():
    rng = random.Random(3)
    primes = sorted({next_prime(rng.randint(50, 400)) for _ in range(40)})[:20]
    assert len(primes) == 20
    for d in (6, 10, 22):
        model = conic_model(d)
        for p in primes:
            if p not in bad_places(model, field("Q(zeta_5)")):
                # a smooth conic over F_p has p + 1 points; lift one by Hensel
                pts = [(x, y) for x in range(p) for y in range(p) if (x * x + y * y + model.m) % p == 0]
                assert pts and local_points_Qp(model, p)


@pytest.mark.parametrize("d", [6, 10, 22])
def test_no_real_points(d):
    assert real_points(conic_model(d)) is False


def test_local_points_Kv_examples():
    assert local_points_Kv(conic_model(6), field("Q(sqrt(3),sqrt(-5))"), 3) == [True, True]
    assert local_points_Kv(conic_model(22), field("Q(zeta_5)"), 11) == [False] * 4
    assert local_points_Kv(conic_model(10), field("Q(zeta_5)"), 7) == [True]


PAIRS = [(d, k) for d in (6, 10, 22) for k in ("Q(sqrt(3),sqrt(-5))", "Q(zeta_5)", "Q(zeta_17)")]


@pytest.mark.parametrize("d,name", PAIRS)
def test_global_points_paper_pairs(d, name):
    gp = global_points(conic_model(d), field(name))
    if (d, name) == (22, "Q(zeta_5)"):
        assert gp == Empty("11")
        assert gp.describe() == "empty at a place above 11"
    else:
        assert isinstance(gp, NonEmptyInfinite)


def test_global_points_over_Q_is_empty_at_infinity():
    gp = global_points(conic_model(6), field("Q"))
    assert gp == Empty(INF) and gp.describe() == "empty at a real place"


def test_global_points_unsupported():
    assert isinstance(global_points(conic_model(15), field("Q(zeta_5)")), UnsupportedGenus)


def test_moduli_flags():
    f = moduli_flags(conic_model(6), field("Q(sqrt(3),sqrt(-5))"), find_presentation(6))
    assert f.infinitely_many_QM_surfaces and not f.trivial_emptiness
    f = moduli_flags(conic_model(22), field("Q(zeta_5)"), find_presentation(22))
    assert f.trivial_emptiness and f.trivial_emptiness_reasons == ("(ii) B tensor K is not a matrix algebra",)
    for d in (6, 10, 22):
        f = moduli_flags(conic_model(d), field("Q(sqrt(2))"), find_presentation(d))
        assert f.trivial_emptiness and f.trivial_emptiness_reasons[0] == "(i) K has a real place"
    f = moduli_flags(conic_model(15), field("Q(zeta_5)"), find_presentation(15))
    assert f.infinitely_many_QM_surfaces is None and f.global_points == "unsupported-genus"
