import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bielliptic.theta import (
    CHARACTERISTICS,
    CharacteristicTableError,
    NotPositiveDefinite,
    numeric_pipeline,
    period_matrix,
    random_tau,
    rational_snapshot,
    rosenhain_from_tau,
    theta_constant,
    theta_constants,
    validate_characteristics,
)

TAU = np.array([[1.2j, 0.3 + 0.1j], [0.3 + 0.1j, 1.5j]])


def test_diagonal_tau_leading_term():
    th = theta_constants(np.diag([10j, 10j]))
    assert abs(th[1] - 1) < 1e-10


def test_rejects_non_positive_imaginary_part():
    with pytest.raises(NotPositiveDefinite):
        theta_constants(np.array([[1j, 0], [0, -1j]]))
    with pytest.raises(NotPositiveDefinite):
        period_matrix(np.array([[1j, 0.1], [0.2, 1j]]))


@given(st.integers(0, 10_000))
@settings(max_examples=10)
def test_tail_bound_is_honest(seed):
    tau = period_matrix(random_tau(np.random.default_rng(seed)))
    th = theta_constants(tau)
    assert th.tail_bound < 1e-14
    for k, (a, b) in CHARACTERISTICS.items():
        assert abs(theta_constant(a, b, tau, th.radius + 2) - th[k]) <= max(th.tail_bound, 1e-15) * 10


def test_off_diagonal_sign_symmetry():
    flipped = TAU.copy()
    flipped[0, 1] = flipped[1, 0] = -TAU[0, 1]
    assert abs(abs(theta_constants(TAU)[1]) - abs(theta_constants(flipped)[1])) < 1e-12


def test_pinned_tau_identities():
    out = rosenhain_from_tau(TAU)
    assert out["residuals"]["l^2"] < 1e-10
    assert out["m_variant_matches"] == {"123": ["first"], "213": ["first"], "312": ["first"]}
    lam = out["lambda"]
    assert out["min_lambda_gap"] > 1e-6
    assert all(abs(x - 1) > 1e-6 for x in lam[1:])


def test_characteristic_table_validated():
    worst = validate_characteristics(20)
    assert worst["l^2"] < 1e-8


def test_wrong_characteristic_table_rejected():
    swapped = dict(CHARACTERISTICS)
    swapped[1], swapped[2] = CHARACTERISTICS[2], CHARACTERISTICS[1]
    with pytest.raises(CharacteristicTableError):
        validate_characteristics(5, table=swapped)


def test_m213_needs_factor_i():
    out = rosenhain_from_tau(TAU)
    lam = out["lambda"]
    first = (lam[2] - lam[1]) * (lam[2] - lam[3]) / ((lam[0] - lam[1]) * (lam[0] - lam[3]))
    m = out["m"][(2, 1, 3)]
    assert abs((m / 1j) ** 2 - first) > 1e-3


@pytest.mark.parametrize("seed", range(5))
def test_pipeline_generic(seed):
    out = numeric_pipeline(random_tau(np.random.default_rng(seed)))
    assert out["passed"]
    assert len(out["special_fibers"]) == 6
    assert not out["central_degenerate"]


def test_product_locus_detected():
    # lambda0 lambda1 = lambda2 lambda3 holds on tau12 = 1/2
    tau = TAU.copy()
    tau[0, 1] = tau[1, 0] = 0.5
    out = numeric_pipeline(tau)
    lam = out["lambda"]
    assert abs(lam[0] * lam[1] - lam[2] * lam[3]) < 1e-10
    assert out["central_degenerate"]
    plus = out["central_degeneracy"]["-l"]  # theta gives l = -lambda0 lambda1 here
    assert min(plus.values()) < 1e-10


def test_rational_snapshot_matches_floats():
    out = numeric_pipeline(TAU)
    snap = rational_snapshot(out["lambda"], out["l"])
    assert snap["max_relative_discrepancy"] < 1e-6
