import math

import pytest
from hypothesis import given, settings, strategies as st

from eqmorse.character import FLOAT, Character, TPoly, WindowError
from eqmorse.geometry import (
    CohomologyData,
    FixedPoint,
    ManifoldModel,
    ModelError,
    atiyah_bott_series,
    cp1_lift_weight,
    cp1_model,
    cp1_sections,
    distance_to_limit,
    finite_T_prefactor,
    finite_T_series,
    orientation_index,
    point_model,
    product_cohomology,
    product_model,
    reverse_action,
    strong_series,
    surviving_set,
    verify_finite_T,
    verify_strong,
    verify_weak,
    weak_bound,
)

from oracles import brute_minus, brute_plus, finite_T_oracle, monomial_sections, random_models

ORDER = 24


def as_dict(c):
    return dict(c.terms())


def trivial_cp1():
    return cp1_model(0)[0]


# -- basic types -----------------------------------------------------------

@pytest.mark.parametrize("weights, expected", [((2, -3, 1), 1), ((-1, -2), 2), ((5,), 0)])
def test_orientation_index(weights, expected):
    assert orientation_index(weights) == expected


def test_zero_weight_rejected():
    with pytest.raises(ModelError):
        FixedPoint("p", (0,), Character.one())


def test_weight_count_checked():
    with pytest.raises(ModelError):
        ManifoldModel(2, (FixedPoint("p", (1,), Character.one()),))


def test_fiber_rank_must_agree():
    with pytest.raises(ModelError):
        ManifoldModel(1, (FixedPoint("a", (1,), Character.one()),
                          FixedPoint("b", (-1,), Character.from_terms({0: 2}))))


# -- strong series ---------------------------------------------------------

def test_point_model_series_is_one():
    P = strong_series(point_model(), "minus", ORDER)
    assert P.n == 0 and as_dict(P[0]) == {0: 1}


def test_trivial_cp1_hand_expansion():
    P = strong_series(trivial_cp1(), "minus", 5)
    assert as_dict(P[0]) == {m: 1 for m in range(6)}
    assert as_dict(P[1]) == {m: 1 for m in range(1, 6)}
    assert P[0].valid_hi == 5 and P[1].valid_hi == 5


def test_cp1_k2_degree0():
    P = strong_series(cp1_model(2)[0], "minus", ORDER)
    assert as_dict(P[0]) == {m: 1 for m in range(-2, ORDER + 1)}


@pytest.mark.parametrize("side", ["minus", "plus"])
def test_strong_series_matches_monomial_count(side):
    brute = brute_minus if side == "minus" else brute_plus
    for model in random_models(15, seed=3):
        order = 12
        P = strong_series(model, side, order)
        ref = brute(model, order)
        for k in range(model.n + 1):
            assert as_dict(P[k]) == ref[k]


def test_weak_bound_examples():
    m0 = trivial_cp1()
    assert as_dict(weak_bound(m0, 0, "minus", 8)) == {m: 1 for m in range(9)}
    assert as_dict(weak_bound(m0, 1, "minus", 8)) == {m: 1 for m in range(1, 9)}
    pm = point_model(Character.from_terms({2: 1, -1: 3}))
    assert weak_bound(pm, 0) == Character.from_terms({2: 1, -1: 3}).truncate(64)


def test_weak_bound_is_strong_coefficient():
    for model in random_models(8, seed=5):
        for side in ("minus", "plus"):
            P = strong_series(model, side, 10)
            for k in range(model.n + 1):
                assert weak_bound(model, k, side, 10) == P[k]


# -- Atiyah-Bott -----------------------------------------------------------

def test_ab_trivial_bundle_is_one():
    ab = atiyah_bott_series(trivial_cp1(), 64)
    assert as_dict(ab) == {0: 1}


def test_ab_point_model_is_fiber():
    fiber = Character.from_terms({-2: 1, 3: 2})
    assert as_dict(atiyah_bott_series(point_model(fiber))) == as_dict(fiber)


def test_ab_cp1_k3():
    assert as_dict(atiyah_bott_series(cp1_model(3)[0])) == {0: 1, -1: 1, -2: 1, -3: 1}


@pytest.mark.parametrize("k", range(-3, 11))
@pytest.mark.parametrize("lam0", [1, 2])
def test_lift_weight_found_by_search(k, lam0):
    """The only fiber weight at the second point making AB match the sections."""
    h0, h1 = monomial_sections(k, lam0)
    target = Character.from_terms(h0) - Character.from_terms(h1)
    hits = []
    for w in range(-40, 41):
        model = ManifoldModel(1, (FixedPoint("p0", (lam0,), Character.one()),
                                  FixedPoint("p1", (-lam0,), Character.monomial(w))))
        if (atiyah_bott_series(model, 64) - target).is_zero:
            hits.append(w)
    assert hits == [cp1_lift_weight(k, lam0)]


# -- sections oracle -------------------------------------------------------

def test_sections_examples():
    h = cp1_sections(0)
    assert as_dict(h.by_degree[0]) == {0: 1} and h.by_degree[1].is_zero
    assert as_dict(cp1_sections(3).by_degree[0]) == {0: 1, -1: 1, -2: 1, -3: 1}
    h = cp1_sections(-1)
    assert h.by_degree[0].is_zero and h.by_degree[1].is_zero
    assert atiyah_bott_series(cp1_model(-1)[0]).is_zero


@pytest.mark.parametrize("k", range(-3, 11))
def test_sections_match_monomials(k):
    for lam0 in (1, 2, 3):
        h0, h1 = monomial_sections(k, lam0)
        h = cp1_sections(k, lam0)
        assert as_dict(h.by_degree[0]) == h0 and as_dict(h.by_degree[1]) == h1


def test_sections_dimensions_follow_riemann_roch():
    for k in range(-5, 8):
        h = cp1_sections(k)
        assert h.by_degree[0].dimension() - h.by_degree[1].dimension() == k + 1


# -- verification ----------------------------------------------------------

def test_point_model_verdict():
    fiber = Character.from_terms({1: 2})
    v = verify_strong(point_model(fiber), CohomologyData((fiber,)))
    assert v.passed and v.remainder.is_zero and all(q.is_zero for q in v.Q.coeffs)


@pytest.mark.parametrize("k", [0, 1, 3, 7])
def test_cp1_strong_minus_q0(k):
    model, coh = cp1_model(k)
    v = verify_strong(model, coh, "minus", 20)
    assert v.passed and v.remainder.is_zero
    assert as_dict(v.Q[0]) == {m: 1 for m in range(1, 21)}


def test_corrupted_h0_fails_divisibility():
    model, _ = cp1_model(0)
    bad = CohomologyData((Character.from_terms({0: 1, 1: 1}), Character.zero()))
    v = verify_strong(model, bad)
    assert not v.divisible and not v.passed
    assert not v.remainder.is_zero


def test_weak_cp1_k3():
    model, coh = cp1_model(3)
    assert verify_weak(model, coh, 0).passed
    assert verify_weak(model, coh, 1).passed


def test_weak_corrupted_witness():
    model, coh = cp1_model(3)
    bad = CohomologyData((coh.by_degree[0] + Character.one(), coh.by_degree[1]))
    v = verify_weak(model, bad, 0)
    assert not v.passed and v.witness == (0, 2, 1)


def test_cohomology_outside_window_is_an_error():
    model, coh = cp1_model(3, 2)
    with pytest.raises(WindowError):
        verify_strong(model, coh, "plus", 4)


def test_cohomology_degree_mismatch():
    with pytest.raises(ModelError):
        verify_strong(trivial_cp1(), CohomologyData((Character.one(),)))


# -- reversal and products -------------------------------------------------

def test_reverse_examples():
    m = ManifoldModel(2, (FixedPoint("p", (2, -3), Character.monomial(2)),))
    r = reverse_action(m)
    assert r.fixed_points[0].weights == (-2, 3)
    assert as_dict(r.fixed_points[0].fiber) == {-2: 1}
    assert reverse_action(r) == m


def test_product_with_point_is_identity():
    m = cp1_model(2)[0]
    prod = product_model(point_model(), m)
    assert [p.weights for p in prod.fixed_points] == [p.weights for p in m.fixed_points]
    assert [p.fiber for p in prod.fixed_points] == [p.fiber for p in m.fixed_points]


def test_cp1_squared_fixed_points():
    m = product_model(trivial_cp1(), trivial_cp1())
    assert sorted(p.weights for p in m.fixed_points) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]


@pytest.mark.parametrize("ka, kb", [(0, 0), (2, 1), (3, -2), (-1, 4)])
def test_product_series_is_product(ka, kb):
    a, b = cp1_model(ka)[0], cp1_model(kb, 2)[0]
    for side in ("minus", "plus"):
        lhs = strong_series(product_model(a, b), side, ORDER)
        rhs = (strong_series(a, side, ORDER + 20) * strong_series(b, side, ORDER + 20)).truncate(ORDER)
        assert lhs == rhs


# -- finite T --------------------------------------------------------------

def test_prefactor_ln10():
    assert finite_T_prefactor((1,), frozenset(), math.log(10)) == pytest.approx(0.01, rel=1e-14)
    assert finite_T_prefactor((1,), surviving_set((1,)), 3.0) == 1.0


def test_surviving_set_is_positive_weights():
    assert surviving_set((2, -3, 1)) == frozenset({0, 2})
    assert surviving_set((-1, -2)) == frozenset()


def test_finite_T_point_model_is_fiber():
    fiber = Character.from_terms({0: 1, 2: 3})
    P = finite_T_series(point_model(fiber), 0.3)
    assert P.mode == FLOAT and as_dict(P[0]) == {0: 1.0, 2: 3.0}


def test_finite_T_large_T_is_strong():
    for model in [cp1_model(2)[0], product_model(trivial_cp1(), cp1_model(1, 2)[0])]:
        P = finite_T_series(model, 20.0, ORDER)
        S = strong_series(model, "minus", ORDER).to_float()
        assert (P - S).max_abs() < 1e-9


@pytest.mark.parametrize("k", [0, 2, -2])
@pytest.mark.parametrize("T", [0.5, 1.0])
def test_finite_T_matches_term_by_term_sum(k, T):
    model = cp1_model(k)[0]
    order = 10
    P = finite_T_series(model, T, order, tail_eps=1e-16)
    ref = finite_T_oracle(model, T, order)
    for deg in range(model.n + 1):
        got = as_dict(P[deg])
        for m in set(got) | set(ref[deg]):
            assert got.get(m, 0.0) == pytest.approx(ref[deg].get(m, 0.0), abs=1e-13, rel=1e-12)


def test_finite_T_product_matches_term_by_term_sum():
    model = product_model(trivial_cp1(), cp1_model(1)[0])
    P = finite_T_series(model, 1.5, 6, tail_eps=1e-16)
    ref = finite_T_oracle(model, 1.5, 6)
    for deg in range(model.n + 1):
        got = as_dict(P[deg])
        for m in set(got) | set(ref[deg]):
            assert got.get(m, 0.0) == pytest.approx(ref[deg].get(m, 0.0), abs=1e-13, rel=1e-12)


@pytest.mark.parametrize("k", [-3, 0, 4])
def test_finite_T_positive_and_divisible(k):
    model, coh = cp1_model(k)
    for T in (0.5, 2.0, 6.0):
        v = verify_finite_T(model, coh, T, 32)
        assert v.passed


def test_finite_T_distance_decreases():
    model = trivial_cp1()
    d = [distance_to_limit(model, T, 32) for T in (1.0, 2.0, 4.0, 8.0)]
    assert all(x > y for x, y in zip(d, d[1:]))


def test_finite_T_rejects_bad_T():
    with pytest.raises(ValueError):
        finite_T_series(trivial_cp1(), 0.0)


# -- properties ------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_duality_random(seed):
    model = random_models(1, seed=seed)[0]
    plus = strong_series(model, "plus", 12)
    minus_rev = strong_series(reverse_action(model), "minus", 12)
    assert plus == minus_rev.mirror()


@settings(max_examples=25, deadline=None)
@given(st.integers(-3, 8), st.integers(-3, 8), st.sampled_from([1, 2]))
def test_kunneth_verification(ka, kb, lam0):
    a, ca = cp1_model(ka, lam0)
    b, cb = cp1_model(kb)
    m, c = product_model(a, b), product_cohomology(ca, cb)
    assert (atiyah_bott_series(m, 40) - c.euler_character()).is_zero
    for side in ("minus", "plus"):
        assert verify_strong(m, c, side, 40).passed
        for k in range(3):
            assert verify_weak(m, c, k, side, 40).passed
