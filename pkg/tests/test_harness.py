"""Harness experiments: Lambda sums, equidistribution, type sums, plans."""

import math
from fractions import Fraction

import numpy as np
import pytest

from sqdigits import harness
from sqdigits.errors import CapacityError, PreconditionError
from sqdigits.qmult import evaluate, make_constant_one, make_digit_exponential, thue_morse
from sqdigits.sieve import chebyshev_psi, mangoldt

TM = thue_morse()
ONE = make_constant_one(2)


def test_digit_sums_array_matches_scalar():
    from sqdigits.digits import digit_sum

    rng = np.random.default_rng(2)
    v = rng.integers(0, 2**60, size=2000).astype(np.uint64)
    for q in (2, 3, 10):
        bulk = harness.digit_sums_array(v, q)
        for x, s in zip(v[:100], bulk[:100]):
            assert int(s) == digit_sum(int(x), q)


def test_phase_array_matches_evaluate():
    f = make_digit_exponential(3, Fraction(1, 3))
    rng = np.random.default_rng(8)
    v = rng.integers(0, 2**50, size=500).astype(np.uint64)
    vals = harness.values_array(f, v)
    for x, z in zip(v[:100], vals[:100]):
        assert abs(z - evaluate(f, int(x))) < 1e-9


def test_equidist_hand_case():
    rep = harness.equidist_counts(10, 2, 2)
    # p = 2,3,5,7; s_2(p^2) = 1,2,3,3 -> one even, three odd
    assert rep.counts == (1, 3)
    assert rep.pi_x == 4
    assert rep.coprime_to_q_minus_1


def test_equidist_partition_and_flags():
    rep = harness.equidist_counts(10**5, 3, 5)
    assert sum(rep.counts) == rep.pi_x == 9592
    assert rep.coprime_to_q_minus_1  # gcd(5, 2) = 1
    rep = harness.equidist_counts(1000, 3, 2)
    assert not rep.coprime_to_q_minus_1  # gcd(2, 2) = 2
    with pytest.raises(ValueError):
        harness.equidist_counts(100, 1, 2)


def test_equidist_reproducible():
    a = harness.equidist_counts(10**5, 2, 3)
    b = harness.equidist_counts(10**5, 2, 3)
    assert a == b


def test_lambda_sum_is_psi_for_constant_f():
    s = harness.lambda_weighted_sum(10**4, ONE, 0.0)
    assert abs(s.real - chebyshev_psi(10**4)) < 1e-6
    assert abs(s.imag) < 1e-9


def test_lambda_sum_brute_force_x100():
    brute = sum(mangoldt(n) * evaluate(TM, n * n) for n in range(1, 101))
    fast = harness.lambda_weighted_sum(100, TM, 0.0)
    assert abs(brute - fast) < 1e-9
    theta = 0.37
    brute = sum(
        mangoldt(n) * evaluate(TM, n * n) * np.exp(2j * np.pi * theta * n)
        for n in range(1, 101)
    )
    fast = harness.lambda_weighted_sum(100, TM, theta)
    assert abs(brute - fast) < 1e-9


def test_lambda_sum_cap():
    with pytest.raises(CapacityError):
        harness.lambda_weighted_sum(10**9, TM, 0.0)


def test_decay_trend_small():
    v4 = abs(harness.lambda_weighted_sum(10**4, TM, 0.0)) / 10**4
    v6 = abs(harness.lambda_weighted_sum(10**6, TM, 0.0)) / 10**6
    assert v6 < v4


def test_decay_fit():
    fit = harness.decay_fit([10**3, 10**4, 10**5], TM, 0.0)
    assert fit.fitted_exponent < 0
    fit_const = harness.decay_fit([10**3, 10**4, 10**5], ONE, 0.0)
    assert abs(fit_const.fitted_exponent) < 0.05  # psi(x)/x -> 1, no saving
    with pytest.raises(PreconditionError):
        harness.decay_fit([10**3, 10**4], TM, 0.0)
    with pytest.raises(PreconditionError):
        harness.decay_fit([10**4, 10**3, 10**5], TM, 0.0)


def test_type2_S20_rectangle_count():
    a = np.ones(4, dtype=complex)
    b = np.ones(2**9, dtype=complex)
    s = harness.type2_S20(3, 10, 2, ONE, 0.0, a, b)
    assert abs(s - 4 * 2**9) < 1e-9


def test_type2_S20_validation():
    a = np.ones(4, dtype=complex)
    b = np.ones(2**9, dtype=complex)
    with pytest.raises(ValueError):
        harness.type2_S20(3, 10, 2, ONE, 0.0, 2 * a, b)
    with pytest.raises(ValueError):
        harness.type2_S20(3, 10, 2, ONE, 0.0, a[:-1], b)
    with pytest.raises(CapacityError):
        harness.type2_S20(14, 14, 2, ONE, 0.0, a, b)


def test_type2_S20_matches_direct_loop():
    rng = np.random.default_rng(21)
    a = np.exp(2j * np.pi * rng.random(2))
    b = np.exp(2j * np.pi * rng.random(4))
    theta = 0.21
    s = harness.type2_S20(2, 3, 2, TM, theta, a, b)
    direct = 0.0 + 0.0j
    for i, m in enumerate(range(2, 4)):
        for j, n in enumerate(range(4, 8)):
            direct += (
                a[i]
                * b[j]
                * evaluate(TM, (m * n) ** 2)
                * np.exp(2j * np.pi * theta * m * n)
            )
    assert abs(s - direct) < 1e-9


def test_type1_SI():
    si = harness.type1_SI(3, 6, 2, ONE, 0.0)
    assert abs(si - 4 * 32) < 1e-9
    # per-m sub-intervals
    si = harness.type1_SI(3, 6, 2, ONE, 0.0, intervals={4: (40, 50), 5: (32, 32)})
    assert abs(si - (10 + 0 + 32 + 32)) < 1e-9
    with pytest.raises(PreconditionError):
        harness.type1_SI(3, 6, 2, ONE, 0.0, intervals={4: (10, 20)})
    # maximize over suffix intervals dominates the full-interval value per m
    plain = harness.type1_SI(3, 8, 2, TM, 0.3)
    maxed = harness.type1_SI(3, 8, 2, TM, 0.3, maximize=True)
    assert maxed >= plain - 1e-12


def test_type1_SI_maximize_brute_force():
    # exact scan over suffix intervals equals a brute-force maximum
    q, mu, nu, theta = 2, 2, 4, 0.17
    total = 0.0
    for m in range(2, 4):
        best = 0.0
        for t in range(8, 17):
            s = sum(
                evaluate(TM, (m * n) ** 2) * np.exp(2j * np.pi * theta * m * n)
                for n in range(t, 16)
            )
            best = max(best, abs(s))
        total += best
    assert abs(harness.type1_SI(mu, nu, q, TM, theta, maximize=True) - total) < 1e-9


def test_type2_plan_synthetic():
    plan = harness.type2_plan(10**5, 4 * 10**5, c=1 / 2000, eta=1 / 2000)
    assert plan.rho3 == 6400
    assert plan.rho == 3200
    assert plan.rho1 == plan.rho2 == 12800
    assert plan.rho5 == 64000
    assert plan.rho_tilde == 50
    assert not plan.rejected and plan.violation is None
    assert not plan.out_of_regime
    assert plan.lam == 10**5 + 4 * 10**5 + 2 * 3200 + 50
    assert plan.kappa1 == 10**5 - 3200
    assert plan.kappa2 == 2 * 10**5 + 4 * 10**5 + 3200 + 50
    assert plan.rho4 == min((6400 - 50) / 4, (10**5 - 3200 - 50 - 12800) / 6, 10**5 / 4)


def test_type2_plan_rejections():
    plan = harness.type2_plan(100, 400, c=1e-6, eta=1e-6)
    assert plan.rejected and plan.violation == "rho must be positive"  # rho3 = 0
    tm_plan = harness.type2_plan(8, 14, c=0.1887, eta=0.5)
    assert tm_plan.out_of_regime
    assert tm_plan.rejected  # rho = 32*... far beyond mu/8


def test_type1_rho():
    assert harness.type1_rho(10**5, c=1 / 2000, eta=1 / 2000) == 40
    assert harness.type1_rho(10**4, c=0.0, eta=1 / 2000) == 0
    # out-of-regime eta skips the nu/20 assertion
    assert harness.type1_rho(100, c=0.4, eta=0.5) == math.floor(80 / 1.5)


def test_vaughan_probe_constant_sanity():
    x = 10**4
    vp = harness.vaughan_probe(x, 2, ONE, 0.0)
    expected = chebyshev_psi(x) - chebyshev_psi(x // 2)
    assert abs(vp.lambda_sum - expected) < 1e-6


def test_vaughan_probe_structure():
    vp = harness.vaughan_probe(10**4, 2, TM, 0.0)
    # alignment history is monotone non-decreasing
    hist = vp.type2_alignment_history
    assert all(b >= a - 1e-9 for a, b in zip(hist, hist[1:]))
    # the aligned value never exceeds the trivial pair-count bound
    assert vp.type2_max <= vp.type2_pair_count + 1e-9
    assert vp.type1_max > 0
    # independent Lambda-sum cross-check
    brute = sum(
        mangoldt(n) * evaluate(TM, n * n) for n in range(10**4 // 2 + 1, 10**4 + 1)
    )
    assert abs(vp.lambda_sum - brute) < 1e-8


def test_vaughan_probe_type1_brute_force():
    # M = q: recompute the type I term for every t cut point directly
    x, q = 400, 2
    g = lambda n: evaluate(TM, n * n)
    total = 0.0
    for m in range(2, 3):
        n_lo, n_hi = x // (q * m), x // m
        best = 0.0
        for t in range(n_lo, n_hi + 1):
            s = sum(g(m * n) for n in range(t + 1, n_hi + 1))
            best = max(best, abs(s))
        total += best
    vp = harness.vaughan_probe(x, q, TM, 0.0)
    assert vp.type1_argmax_M >= q
    probe_at_q = 0.0
    for start, row in harness._vaughan_rows(x, q, q, TM, 0.0):
        probe_at_q += float(np.max(np.abs(np.cumsum(row[::-1]))))
    assert abs(probe_at_q - total) < 1e-9


def test_vaughan_probe_validation():
    with pytest.raises(PreconditionError):
        harness.vaughan_probe(3, 2, TM, 0.0)
    with pytest.raises(PreconditionError):
        harness.vaughan_probe(10**4, 2, TM, 0.0, beta1=0.5)


def test_type_sum_reproducibility():
    rng1 = np.random.default_rng(5)
    rng2 = np.random.default_rng(5)
    a1 = np.exp(2j * np.pi * rng1.random(4))
    b1 = np.exp(2j * np.pi * rng1.random(8))
    a2 = np.exp(2j * np.pi * rng2.random(4))
    b2 = np.exp(2j * np.pi * rng2.random(8))
    s1 = harness.type2_S20(3, 4, 2, TM, 0.3, a1, b1)
    s2 = harness.type2_S20(3, 4, 2, TM, 0.3, a2, b2)
    assert s1 == s2
