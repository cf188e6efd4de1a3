import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from admissible.series import (
    TruncatedSeries,
    first_mismatch,
    monomial,
    pochhammer,
    pochhammer_inverse,
)


def S(coeffs, q=6, z=6):
    return TruncatedSeries(coeffs, q, z)


class TestAdd:
    def test_plain_sum(self):
        a = S({(0, 0): 1, (1, 0): 1})
        b = S({(1, 0): 1})
        assert (a + b) == S({(0, 0): 1, (1, 0): 2})

    def test_additive_identity(self):
        s = S({(2, 1): 5, (0, 3): -2})
        assert (s + TruncatedSeries.zero(6, 6)) == s

    def test_cancellation_is_canonical(self):
        a = S({(3, 1): 1})
        b = S({(3, 1): -1})
        total = a + b
        assert (3, 1) not in total.coeffs
        assert total.is_zero()

    def test_window_is_componentwise_min(self):
        a = TruncatedSeries({(0, 0): 1}, 5, 9)
        b = TruncatedSeries({(0, 0): 1}, 7, 3)
        c = a + b
        assert (c.q_order, c.z_order) == (5, 3)


class TestMul:
    def test_telescoping(self):
        a = TruncatedSeries({(0, 0): 1, (1, 0): -1}, 3, 0)
        b = TruncatedSeries({(d, 0): 1 for d in range(4)}, 3, 0)
        assert (a * b) == TruncatedSeries.one(3, 0)

    def test_multiplicative_identity(self):
        s = S({(2, 2): 7, (5, 0): -1, (0, 4): 3})
        assert (s * TruncatedSeries.one(6, 6)) == s

    def test_binomial_square(self):
        s = TruncatedSeries({(0, 0): 1, (1, 1): 1}, 2, 2)
        sq = s * s
        assert sq == TruncatedSeries({(0, 0): 1, (1, 1): 2, (2, 2): 1}, 2, 2)

    def test_no_coefficient_escapes_window(self):
        a = TruncatedSeries({(3, 0): 1, (0, 2): 1}, 4, 3)
        b = TruncatedSeries({(2, 0): 1, (0, 2): 1}, 4, 3)
        prod = a * b
        assert all(dq <= 4 and dz <= 3 for dq, dz in prod.coeffs)
        assert (prod.q_order, prod.z_order) == (4, 3)


class TestEquality:
    def test_truncation_aware(self):
        # differ only beyond the common window
        a = TruncatedSeries({(0, 0): 1, (5, 0): 9}, 5, 0)
        b = TruncatedSeries({(0, 0): 1}, 3, 0)
        assert a == b
        assert b == a  # symmetric

    def test_disagreement_inside_window(self):
        a = TruncatedSeries({(2, 0): 1}, 5, 0)
        b = TruncatedSeries({(2, 0): 2}, 3, 0)
        assert a != b

    def test_first_mismatch_ordering(self):
        a = S({(1, 0): 1, (0, 2): 4})
        b = S({(1, 0): 2, (0, 2): 5})
        # (dz, dq) order puts (1, 0) before (0, 2)
        assert first_mismatch(a, b) == (1, 0, 1, 2)
        assert first_mismatch(a, a) is None


class TestMonomial:
    def test_constant(self):
        assert monomial(0, 0, 1) == TruncatedSeries.one(0, 0)

    def test_q4z2(self):
        m = monomial(4, 2, 1)
        assert m.coeffs == {(4, 2): 1}

    def test_negative_coefficient(self):
        m = monomial(1, 0, -3)
        assert m.coefficient(1, 0) == -3

    def test_exponent_beyond_declared_window(self):
        with pytest.raises(ValueError):
            monomial(3, 0, 1, q_order=2)


def brute_force_step_counts(m, step, q_order):
    """Count solutions of sum_j (step*j)*t_j = d with j = 1..m, t_j >= 0."""
    counts = [0] * (q_order + 1)

    def rec(j, total):
        if j > m:
            counts[total] += 1
            return
        t = 0
        while total + step * j * t <= q_order:
            rec(j + 1, total + step * j * t)
            t += 1

    rec(1, 0)
    return counts


class TestPochhammerInverse:
    def test_empty_product(self):
        for step in (1, 2, 3):
            assert pochhammer_inverse(0, step, 5) == TruncatedSeries.one(5, 0)

    def test_m2_step1_against_counting_oracle(self):
        oracle = brute_force_step_counts(2, 1, 4)
        assert oracle == [1, 1, 2, 2, 3]
        got = pochhammer_inverse(2, 1, 4)
        assert [got.coefficient(d) for d in range(5)] == oracle

    def test_m1_step2_geometric(self):
        got = pochhammer_inverse(1, 2, 4)
        assert [got.coefficient(d) for d in range(5)] == [1, 0, 1, 0, 1]
        # term-by-term check against the defining factor
        factor = TruncatedSeries({(0, 0): 1, (2, 0): -1}, 4, 0)
        assert got * factor == TruncatedSeries.one(4, 0)

    @pytest.mark.parametrize("step", [1, 2])
    @pytest.mark.parametrize("m", range(9))
    def test_inverse_identity(self, m, step):
        q_order = 40
        inv = pochhammer_inverse(m, step, q_order)
        assert inv * pochhammer(m, step, q_order) == TruncatedSeries.one(q_order, 0)


class TestJson:
    def test_canonical_term_order(self):
        s = S({(2, 1): 3, (0, 1): 1, (5, 0): -2})
        obj = s.to_json_obj()
        assert obj["terms"] == [[5, 0, "-2"], [0, 1, "1"], [2, 1, "3"]]

    def test_coefficients_are_decimal_strings(self):
        big = 10**40 + 7
        s = S({(1, 1): big})
        obj = s.to_json_obj()
        assert obj["terms"] == [[1, 1, str(big)]]
        assert json.loads(s.to_json())["q_order"] == 6

    def test_round_trip(self):
        s = S({(2, 1): 3, (0, 1): 1, (5, 0): -(10**30)})
        assert TruncatedSeries.from_json(s.to_json()) == s


class TestWindowAccess:
    def test_coefficient_beyond_window_raises(self):
        s = TruncatedSeries({(1, 0): 1}, 3, 2)
        with pytest.raises(ValueError):
            s.coefficient(4, 0)
        with pytest.raises(ValueError):
            s.coefficient(0, 3)

    def test_z_block_beyond_window_raises(self):
        s = TruncatedSeries({(1, 1): 1}, 3, 2)
        with pytest.raises(ValueError):
            s.z_block(3)

    def test_restrict_shrinks_only(self):
        s = TruncatedSeries({(1, 0): 1, (3, 2): 4}, 3, 2)
        r = s.restrict(2, 9)
        assert (r.q_order, r.z_order) == (2, 2)
        assert (3, 2) not in r.coeffs

    def test_shift_drops_overflow(self):
        s = TruncatedSeries({(2, 0): 1, (0, 1): 1}, 3, 2)
        shifted = s.shift(2, 1)
        assert shifted.coeffs == {(2, 2): 1}


class TestBigCoefficients:
    def test_exact_huge_products(self):
        a = TruncatedSeries({(0, 0): 10**30, (1, 0): 1}, 2, 0)
        b = TruncatedSeries({(0, 0): 10**30, (1, 0): -1}, 2, 0)
        prod = a * b
        assert prod.coefficient(0) == 10**60
        assert prod.coefficient(2) == -1


coeff_st = st.integers(min_value=-9, max_value=9)
key_st = st.tuples(st.integers(0, 5), st.integers(0, 5))
series_st = st.builds(
    TruncatedSeries,
    st.dictionaries(key_st, coeff_st, max_size=6),
    q_order=st.integers(0, 7),
    z_order=st.integers(0, 7),
)


@settings(max_examples=200)
@given(series_st, series_st, series_st)
def test_ring_axioms(a, b, c):
    assert (a + b) == (b + a)
    assert (a * b) == (b * a)
    assert ((a + b) + c) == (a + (b + c))
    assert ((a * b) * c) == (a * (b * c))
    assert (a * (b + c)) == (a * b + a * c)


@settings(max_examples=200)
@given(series_st, series_st)
def test_equality_symmetric(a, b):
    assert (a == b) == (b == a)
