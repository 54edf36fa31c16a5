"""
Tests for Dedekind-type DC sums
"""

from fractions import Fraction
from math import gcd

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from src.q_dedekind.dedekind_sums import (
    DCParams,
    dc_sum_classical,
    dc_sum_fractional,
    dc_sum_q,
    higher_order_dc,
)
from src.q_dedekind.exact_arith import vp
from src.q_dedekind.exceptions import PreconditionError


class TestClassicalSums:
    """Test S_m(h, k)"""

    def test_empty_sum(self):
        """Test that k = 1 gives 0"""
        for m in range(4):
            assert dc_sum_classical(m, 1, 1) == 0
            assert higher_order_dc(m, 1, 1) == 0

    def test_known_values(self):
        """Test S_1(1, 2) = 0 and S_1(1, 3) = -1/6"""
        assert dc_sum_classical(1, 1, 2) == 0
        assert dc_sum_classical(1, 1, 3) == Fraction(-1, 6)

    def test_higher_order(self):
        """Test k^m S_{m+1}(h, k)"""
        assert dc_sum_classical(2, 1, 3) == Fraction(2, 27)
        assert higher_order_dc(1, 1, 3) == Fraction(2, 9)
        assert higher_order_dc(0, 2, 5) == dc_sum_classical(1, 2, 5)

    def test_requires_coprime(self):
        """Test that gcd(h, k) must be 1"""
        with pytest.raises(PreconditionError):
            dc_sum_classical(1, 2, 4)

    @given(st.integers(min_value=0, max_value=5), st.integers(min_value=1, max_value=12),
           st.integers(min_value=1, max_value=9))
    def test_period_two_k_in_h(self, m, h, k):
        """Test S_m(h + 2k, k) = S_m(h, k)"""
        assume(gcd(h, k) == 1)
        assert dc_sum_classical(m, h + 2 * k, k) == dc_sum_classical(m, h, k)


class TestQSums:
    """Test the q-analogue S_{m,q}(h, k : q^l)"""

    def test_empty_sum(self):
        """Test that k = 1 gives 0"""
        assert dc_sum_q(2, 1, 1, 3, Fraction(5, 2)) == 0

    def test_single_term(self):
        """Test S_{1,q}(1, 2 : q^2) = (1-q)/(2(1+q)^2)"""
        assert dc_sum_q(1, 1, 2, 2, 2) == Fraction(-1, 18)
        for q in (Fraction(3), Fraction(1, 3), Fraction(-5, 2)):
            assert dc_sum_q(1, 1, 2, 2, q) == (1 - q) / (2 * (1 + q) ** 2)

    def test_base_must_be_multiple_of_k(self):
        """Test that k | l is enforced"""
        with pytest.raises(PreconditionError):
            dc_sum_q(1, 1, 3, 4, 2)

    def test_params_validation(self):
        """Test DCParams invariants"""
        DCParams(1, 2, 5, 10)
        with pytest.raises(PreconditionError):
            DCParams(-1, 1, 3)
        with pytest.raises(PreconditionError):
            DCParams(1, 3, 6)

    @pytest.mark.parametrize("m,h,k", [(1, 1, 3), (2, 2, 5), (3, 1, 4), (2, 3, 7)])
    def test_classical_limit(self, m, h, k):
        """Test S_{m,q}(h, k : q^k) near q = 1 against the fractional-part sum"""
        q = 1 + Fraction(1, 10**6)

        assert abs(float(dc_sum_q(m, h, k, k, q)) - float(dc_sum_fractional(m, h, k))) <= 1e-4

    @pytest.mark.parametrize("k", [2, 4, 5, 7])
    def test_p_integral_for_q_near_one(self, k):
        """Test v_3(S_{m,q}(h, k : q^k)) >= 0 at q = 4"""
        for m in range(4):
            for h in range(1, k):
                if gcd(h, k) == 1:
                    assert vp(dc_sum_q(m, h, k, k, 4), 3) >= 0
