"""Tests for the threshold solvers.

Deterministic solvers are pinned against their expected values; the
Monte Carlo machinery is exercised at small populations where a verdict
takes a fraction of a second.
"""

import numpy as np
import pytest

from psthresh.codes import crash_poly_2317, crash_poly_713
from psthresh.noise import Depolarizing, Forward, model_family
from psthresh.postselect import model_teleport_output
from psthresh.threshold import (
    ALPHA_CONVERGENCE,
    BracketError,
    McConfig,
    capacity_one_type,
    capacity_three_type,
    concat_threshold_mc,
    convergence_delta,
    crash_difference_threshold,
    entropy_match_threshold,
    fixed_fidelity_point,
    forward_combined_diagonal,
    golay_pair_entropy,
    hashing_threshold,
    mc_threshold_error_bar,
    mc_verdict,
    model_level0,
    model_pair_entropy,
    one_type_dist,
    overhead_exponent,
    overhead_success,
    shannon_entropy,
    sweep_r,
    teleport_entropy,
)


def test_shannon_entropy():
    assert shannon_entropy([1.0, 0.0]) == 0.0
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert shannon_entropy([0.25] * 4) == pytest.approx(2.0)


# ---------------------------------------------------------------------------
# hashing thresholds


def test_hashing_threshold_values():
    assert hashing_threshold("depolarizing", tol=1e-8) == pytest.approx(
        0.0827515, abs=2e-6
    )
    assert hashing_threshold("knill", tol=1e-8) == pytest.approx(0.0690240, abs=2e-6)
    assert hashing_threshold("forward", tol=1e-8) == pytest.approx(
        0.0481816, abs=2e-6
    )


def test_entropy_is_one_at_threshold():
    p = hashing_threshold("depolarizing", tol=1e-9)
    assert teleport_entropy(Depolarizing(p)) == pytest.approx(1.0, abs=1e-6)


def test_teleported_components_at_threshold():
    p = hashing_threshold("depolarizing", tol=1e-9)
    out = model_teleport_output(Depolarizing(p))
    assert out[1] == pytest.approx(out[3], abs=1e-12)
    assert out[1] == pytest.approx(0.0713361, abs=1e-5)
    assert out[2] == pytest.approx(0.0478136, abs=1e-5)


def test_hashing_threshold_accepts_callable():
    fam = model_family("depolarizing", r=1.0)
    assert hashing_threshold(fam, tol=1e-7) == pytest.approx(
        hashing_threshold("knill", tol=1e-7), abs=1e-6
    )


def test_hashing_threshold_bracket_errors():
    with pytest.raises(BracketError):
        hashing_threshold("depolarizing", lo=0.2, extend=False)
    with pytest.raises(BracketError):
        hashing_threshold("depolarizing", hi=0.01, extend=False)


def test_sweep_r_decreases():
    rows = sweep_r(points=3, tol=1e-7)
    assert [r for r, _ in rows] == [0.0, 0.5, 1.0]
    thr = [t for _, t in rows]
    assert thr[0] == pytest.approx(0.0827515, abs=1e-5)
    assert thr[2] == pytest.approx(0.0690240, abs=1e-5)
    assert thr[0] > thr[1] > thr[2]


def test_capacities():
    assert capacity_one_type() == pytest.approx(0.1100279, abs=1e-6)
    assert capacity_three_type() == pytest.approx(0.0630965, abs=1e-6)


# ---------------------------------------------------------------------------
# Monte Carlo population dynamics


QUICK = McConfig(population=400, levels=8, seed=5, chunk=256)


def test_mc_verdict_deterministic():
    dist = one_type_dist(0.10)
    assert mc_verdict(dist, QUICK) == mc_verdict(dist, QUICK)


def test_mc_verdict_below_and_above():
    verdict, level = mc_verdict(one_type_dist(0.05), QUICK)
    assert verdict == "below"
    assert level <= 4
    verdict, _ = mc_verdict(one_type_dist(0.22), QUICK)
    assert verdict == "above"


def test_mc_threshold_small_population():
    thr = concat_threshold_mc(one_type_dist, 0.05, 0.18, QUICK, tol=5e-3)
    assert 0.08 < thr < 0.14


def test_mc_bracket_check():
    with pytest.raises(BracketError):
        concat_threshold_mc(one_type_dist, 0.22, 0.3, QUICK, tol=5e-3)
    with pytest.raises(BracketError):
        concat_threshold_mc(one_type_dist, 0.01, 0.05, QUICK, tol=5e-3)


def test_mc_error_bar():
    mean, err, ests = mc_threshold_error_bar(
        one_type_dist, 0.05, 0.18, QUICK, n_seeds=3, tol=5e-3
    )
    assert len(ests) == 3
    assert mean == pytest.approx(np.mean(ests))
    assert err == pytest.approx(np.std(ests, ddof=1))
    with pytest.raises(ValueError):
        mc_threshold_error_bar(one_type_dist, 0.05, 0.18, QUICK, n_seeds=1)


def test_model_level0():
    np.testing.assert_allclose(
        model_level0("forward")(0.03), model_teleport_output(Forward(0.03))
    )


# ---------------------------------------------------------------------------
# [[23,1,7]] entropy matching and crash probabilities


def test_golay_pair_entropy_symmetric_in_sectors():
    assert golay_pair_entropy([0.7, 0.2, 0.0, 0.1]) == pytest.approx(
        golay_pair_entropy([0.7, 0.1, 0.0, 0.2]), abs=1e-12
    )


def test_entropy_match_self_consistent():
    target = 1.00162555
    pf = entropy_match_threshold("forward", target, 0.045, 0.05, tol=1e-9)
    assert model_pair_entropy(Forward(pf)) == pytest.approx(target, abs=1e-7)
    with pytest.raises(BracketError):
        entropy_match_threshold("forward", target, 0.001, 0.002)


def test_forward_combined_diagonal_near_breakdown():
    assert forward_combined_diagonal(0.0481816) == pytest.approx(0.779944, abs=1e-5)


def test_crash_difference_threshold():
    p_r = crash_difference_threshold(crash_poly_2317(), 0.00035, 0.04805)
    assert p_r == pytest.approx(0.0480107, abs=2e-6)
    # zero margin returns the baseline itself
    assert crash_difference_threshold(
        crash_poly_2317(), 0.0, 0.04805
    ) == pytest.approx(0.04805, abs=1e-8)
    with pytest.raises(BracketError):
        crash_difference_threshold(crash_poly_2317(), 0.5, 0.04805)


# ---------------------------------------------------------------------------
# fixed-fidelity points (regression pins for the computed values)


def test_fixed_fidelity_713_knill():
    p, fid = fixed_fidelity_point("713", "knill")
    assert p == pytest.approx(0.0348541, abs=1e-5)
    assert fid == pytest.approx(0.905647, abs=1e-4)


def test_fixed_fidelity_713_depolarizing():
    p, fid = fixed_fidelity_point("713", "depolarizing")
    assert p == pytest.approx(0.0405568, abs=1e-5)
    assert fid == pytest.approx(0.910837, abs=1e-4)


def test_fixed_fidelity_713_forward():
    pf, fid = fixed_fidelity_point("713", "forward")
    assert pf == pytest.approx(0.0295961, abs=1e-5)
    assert fid == pytest.approx(0.877025, abs=1e-4)


def test_fixed_fidelity_2317_forward():
    pf, fid = fixed_fidelity_point("2317", "forward")
    assert pf == pytest.approx(0.0354781, abs=1e-5)
    assert fid == pytest.approx(0.851051, abs=1e-4)
    # the crossing diagonal is the nontrivial fixed point of f23
    poly = crash_poly_2317()
    c = forward_combined_diagonal(pf)
    assert float(poly(c)) == pytest.approx(c, abs=1e-6)


def test_fixed_fidelity_rejects_unknown():
    with pytest.raises(ValueError):
        fixed_fidelity_point("2317", "knill")


# ---------------------------------------------------------------------------
# convergence and overhead


def test_alpha_convergence():
    assert ALPHA_CONVERGENCE == pytest.approx(0.5288, abs=1e-4)


def test_convergence_delta():
    assert convergence_delta(0.05, 0.05, 3, 4) == 0.0
    got = convergence_delta(0.05, 0.04, 3, 2)
    assert got == pytest.approx((0.01 / 0.05) * 3 ** (2 * ALPHA_CONVERGENCE))


def test_overhead():
    assert overhead_success(0.153, 14) == pytest.approx(0.0978065, abs=1e-6)
    p, base = 0.153, 7.0
    n = overhead_exponent(p, base)
    assert base**-n == pytest.approx(1 - p, abs=1e-12)
