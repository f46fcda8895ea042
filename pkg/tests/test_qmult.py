"""Strongly q-multiplicative functions: construction, properness, evaluation."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqdigits.qmult import (
    StronglyQMultiplicative,
    eval_truncated,
    evaluate,
    is_proper,
    make_constant_one,
    make_digit_exponential,
    phase_of,
    thue_morse,
)


def test_digit_exponential_phases():
    assert make_digit_exponential(2, Fraction(1, 2)).phases == (Fraction(0), Fraction(1, 2))
    assert make_digit_exponential(3, Fraction(1, 3)).phases == (
        Fraction(0),
        Fraction(1, 3),
        Fraction(2, 3),
    )
    f = make_digit_exponential(5, Fraction(0))
    assert all(p == 0 for p in f.phases)
    assert all(evaluate(f, n) == 1 for n in range(50))


def test_phase_validation():
    with pytest.raises(ValueError):
        StronglyQMultiplicative(2, (Fraction(1, 2), Fraction(0)))  # phases[0] != 0
    with pytest.raises(ValueError):
        StronglyQMultiplicative(2, (Fraction(0),))  # wrong length
    with pytest.raises(ValueError):
        StronglyQMultiplicative(2, (Fraction(0), Fraction(3, 2)))  # outside [0,1)


def test_is_proper():
    assert is_proper(thue_morse())  # (q-1)*gamma = 1/2 not integral
    assert not is_proper(make_digit_exponential(3, Fraction(1, 2)))  # (q-1)*gamma = 1
    assert is_proper(StronglyQMultiplicative(2, (Fraction(0), Fraction(1, 3))))
    assert not is_proper(make_constant_one(4))  # gamma = 0 case
    # floating phases within tolerance of an improper candidate
    eps = 1e-12
    f = StronglyQMultiplicative(3, (0.0, (0.5 + eps) % 1.0, eps))
    assert not is_proper(f)


def test_evaluate_examples():
    tm = thue_morse()
    assert evaluate(tm, 3) == 1  # s_2(3) = 2
    assert abs(evaluate(tm, 7) - (-1)) < 1e-15  # s_2(7) = 3, e(3/2) = -1
    assert evaluate(tm, 0) == 1
    f = StronglyQMultiplicative(3, (Fraction(0), Fraction(1, 7), Fraction(2, 5)))
    assert evaluate(f, 0) == 1


def test_eval_truncated_examples():
    tm = thue_morse()
    assert abs(eval_truncated(tm, 13, 1, 3) - (-1)) < 1e-15  # window digits 0,1 -> u=2
    assert eval_truncated(tm, 999, 4, 4) == 1  # empty window
    assert abs(eval_truncated(tm, 5, 0, 3) - 1) < 1e-15  # s_2(5) = 2


def test_eval_truncated_negative_argument():
    # rep acts on residue classes, so negative a is legitimate
    tm = thue_morse()
    for a in (-1, -5, -64):
        assert eval_truncated(tm, a, 1, 4) == eval_truncated(tm, a + 2**4, 1, 4)


def test_multiplicativity_bulk():
    # eval(f, a*q + b) = eval(f, a) * eval(f, b) on 10**5 random a per base,
    # checked on exact integer phase numerators (the arithmetic evaluate uses)
    rng = np.random.default_rng(3)
    for q, gamma in ((2, Fraction(1, 2)), (3, Fraction(1, 3)), (5, Fraction(2, 5))):
        f = make_digit_exponential(q, gamma)
        denom = math.lcm(*(p.denominator for p in f.phases))
        nums = np.array([int(p * denom) for p in f.phases], dtype=np.int64)

        def phase_num(v, q=q, nums=nums, denom=denom):
            v = v.copy()
            out = np.zeros_like(v)
            qq = np.uint64(q)
            while v.max() > 0:
                out += nums[(v % qq).astype(np.int64)].astype(np.uint64)
                v //= qq
            return out % np.uint64(denom)

        a = rng.integers(0, 2**55, size=10**5).astype(np.uint64)
        for b in range(q):
            lhs = phase_num(a * np.uint64(q) + np.uint64(b))
            rhs = (phase_num(a) + int(f.phases[b] * denom)) % denom
            assert np.array_equal(lhs, rhs)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**48), st.integers(min_value=0, max_value=4))
def test_multiplicativity_property(a, b):
    f = make_digit_exponential(5, Fraction(2, 5))
    b = b % f.q
    lhs = evaluate(f, a * f.q + b)
    rhs = evaluate(f, a) * evaluate(f, b)
    assert abs(lhs - rhs) < 1e-12


def test_truncation_periodicity_exhaustive():
    tm = thue_morse()
    for kappa2 in range(1, 9):
        for kappa1 in range(kappa2 + 1):
            for a in range(2**kappa2):
                assert eval_truncated(tm, a, kappa1, kappa2) == eval_truncated(
                    tm, a + 2**kappa2, kappa1, kappa2
                )


def test_rational_phases_give_roots_of_unity():
    # for gamma = u/v every value is a v*(q-1)-th root of unity
    for q, gamma in ((2, Fraction(1, 2)), (3, Fraction(2, 7)), (5, Fraction(3, 4))):
        f = make_digit_exponential(q, gamma)
        order = gamma.denominator * (q - 1)
        for n in range(0, 2000, 37):
            phase = phase_of(f, n)
            assert (phase * order).denominator == 1


def test_unit_modulus_after_long_chains():
    f = StronglyQMultiplicative(3, (0.0, 0.237194, 0.914233))
    value = evaluate(f, 3**40 - 1)
    assert abs(abs(value) - 1.0) <= 1e-12
