"""
Tests for the interpolation readings and p-adic DC sums
"""

from fractions import Fraction

import pytest

from src.q_dedekind.exact_arith import PAdicContext, PAdicInt, teichmuller, to_padic
from src.q_dedekind.exceptions import PreconditionError
from src.q_dedekind.interpolation import (
    DedekindValue,
    distribution_sum,
    euler_factor_correction,
    inverse_residue,
    one_unit_part,
    removed_indices,
    s_pq,
    t_extended,
    t_int_a,
    t_int_b,
    t_series,
)
from src.q_dedekind.q_numbers import QBracketArg, QParam, q_euler_poly


def padic_q(q: int = 4, p: int = 3, K: int = 6) -> QParam:
    return QParam.padic(q, PAdicContext(p, K))


class TestReadings:
    """Test readings A and B at integer arguments"""

    def test_reading_a_value(self):
        """Test [3]_4 E_{1,4^3}(1/3) = -19/2"""
        assert t_int_a(1, 1, 3, 4, 3) == Fraction(-19, 2)

    @pytest.mark.parametrize("q", [Fraction(2), Fraction(4), Fraction(1, 3), Fraction(-5, 2)])
    def test_reading_a_paths_agree(self, q):
        """Test that the finite sum matches the bracket times the polynomial"""
        for m in (1, 3, 5):
            for a in (1, 2, 4, 5):
                expected = ((1 - q**7) / (1 - q)) ** m * q_euler_poly(m, QBracketArg(a, 7), q)
                assert t_int_a(m, a, 7, q, 3) == expected

    def test_reading_a_takes_prime_from_q(self):
        """Test that a p-adic q supplies the prime"""
        assert t_int_a(1, 1, 3, padic_q()) == Fraction(-19, 2)

    def test_interpolation_index(self):
        """Test that m + 1 must be divisible by p - 1"""
        with pytest.raises(PreconditionError):
            t_int_a(2, 1, 3, 4, 3)
        with pytest.raises(PreconditionError):
            t_int_a(1, 1, 3, 6, 5)

    def test_unit_requirement(self):
        """Test that a divisible by p needs require_unit=False"""
        with pytest.raises(PreconditionError):
            t_int_a(1, 3, 4, 4, 3)
        assert t_int_a(1, 3, 4, 4, 3, require_unit=False) == (
            Fraction(1 - 4**4, 1 - 4) * q_euler_poly(1, QBracketArg(3, 4), 4)
        )

    @pytest.mark.parametrize("q", [Fraction(2), Fraction(4), Fraction(2, 5)])
    def test_reading_b_closed_form(self, q):
        """Test reading B at m = 1, a = 1, N = 2, p = 3"""
        expected = (1 - q) / 2 - (1 - q**3) ** 2 / (2 * (1 - q))

        assert t_int_b(1, 1, 2, 3, q) == expected

    def test_reading_b_subtracts_correction(self):
        """Test B = A - correction"""
        for a in (1, 2, 4, 5):
            assert t_int_b(1, a, 7, 3, 4) == t_int_a(1, a, 7, 4, 3) - euler_factor_correction(
                1, a, 7, 3, 4
            )

    def test_inverse_residue(self):
        """Test (p^{-1} a)_N"""
        assert inverse_residue(3, 1, 2) == 1
        assert inverse_residue(3, 2, 5) == 4
        with pytest.raises(PreconditionError):
            inverse_residue(3, 1, 6)

    def test_removed_indices(self):
        """Test that exactly one index is removed when p does not divide N"""
        assert removed_indices(1, 2, 3) == [1]
        assert removed_indices(2, 5, 5) == []
        for a in range(1, 7):
            if a % 5:
                assert len(removed_indices(a, 3, 5)) == 1


class TestSeries:
    """Test the p-adic series in s"""

    def test_one_unit_part(self):
        """Test that <a>_q is congruent to 1 mod p"""
        q = padic_q()
        for a in (1, 2, 4, 5):
            assert one_unit_part(a, q).residue(1) == 1

    @pytest.mark.parametrize("a", [1, 2])
    def test_value_at_zero(self, a):
        """Test T_q(0, a, N) = ω^{-1}(a) (1 + q^N)/2"""
        q = padic_q()
        ctx = q.ctx
        expected = teichmuller(a, ctx).inverse() * to_padic(Fraction(1 + 4**3, 2), ctx)

        assert t_series(0, a, 3, q).agrees_with(expected)

    @pytest.mark.parametrize("K", [4, 6, 8])
    def test_specializes_to_reading_a(self, K):
        """Test T_q(m, a, N) = reading A at interpolation indices"""
        ctx = PAdicContext(3, K)
        q = QParam.padic(4, ctx)
        for m in (1, 3):
            for a in (1, 2):
                for N in (3, 6):
                    expected = to_padic(t_int_a(m, a, N, 4, 3), ctx)
                    assert t_series(m, a, N, q).agrees_with(expected)

    def test_higher_precision_truncates(self):
        """Test that a run at K' > K truncated to K equals the run at K"""
        q = padic_q(K=4)
        s = PAdicInt(10, PAdicContext(3, 8))
        fine = t_series(s, 2, 3, q, PAdicContext(3, 8))
        coarse = t_series(10, 2, 3, q, PAdicContext(3, 4))

        assert fine.with_precision(4).agrees_with(coarse)

    def test_coarse_argument_caps_precision(self):
        """Test that s known to 2 digits gives at most 2 digits of T_q(s)"""
        ctx = PAdicContext(3, 8)
        q = QParam.padic(4, ctx)
        coarse = t_series(PAdicInt(10, PAdicContext(3, 2)), 1, 3, q, ctx)
        exact = t_series(10, 1, 3, q, ctx)

        assert coarse.absolute_precision <= 2
        assert coarse.agrees_with(exact)
        assert exact.absolute_precision > 2

    def test_requires_p_dividing_n(self):
        """Test that the series needs p | N"""
        with pytest.raises(PreconditionError):
            t_series(1, 1, 2, padic_q())

    def test_requires_unit_a(self):
        """Test that the series needs p not dividing a"""
        with pytest.raises(PreconditionError):
            t_series(1, 3, 3, padic_q())

    def test_requires_padic_q(self):
        """Test that the series refuses an algebraic q"""
        with pytest.raises(PreconditionError):
            t_series(1, 1, 3, QParam.algebraic(4))


class TestExtension:
    """Test the extension to p not dividing N"""

    @pytest.mark.parametrize("a,N", [(1, 2), (2, 2), (1, 4), (2, 5)])
    def test_matches_restricted_sum(self, a, N):
        """Test t_extended at s = 1 against the restricted distribution sum"""
        q = padic_q()
        expected = to_padic(distribution_sum(1, a, N, 3, 4, restricted=True), q.ctx)

        assert t_extended(1, a, N, q).agrees_with(expected)

    def test_full_sum_has_extra_term(self):
        """Test that the unrestricted sum includes the index where p | a + iN"""
        full = distribution_sum(1, 1, 2, 3, 4, restricted=False)
        restricted = distribution_sum(1, 1, 2, 3, 4, restricted=True)
        bracket = Fraction(1 - 4**6, 1 - 4)
        dropped = bracket * q_euler_poly(1, QBracketArg(3, 6), 4)

        assert full - restricted == Fraction(1 + 4**2, 1 + 4**6) * -dropped

    def test_rejects_p_dividing_n(self):
        """Test that p | N is sent to the series"""
        with pytest.raises(PreconditionError):
            t_extended(1, 1, 3, padic_q())


class TestDCSums:
    """Test S_{p,q}(s : h, k : q^k)"""

    def test_empty_sum(self):
        """Test that k = 1 gives 0"""
        assert s_pq(1, 1, 1, 3, 4) == DedekindValue(Fraction(0), ())

    def test_variant_a_value(self):
        """Test S_{3,4}(1 : 1, 2) = -3/2"""
        result = s_pq(1, 1, 2, 3, 4, "A")

        assert result.value == Fraction(-3, 2)
        assert result.skipped == ()

    def test_variant_b_value(self):
        """Test the Euler-factor-removed reading"""
        result = s_pq(1, 1, 2, 3, 4, "B")

        assert result.value == t_int_b(1, 1, 2, 3, 4)
        assert result.value == 660

    def test_exclude_policy_reports_skips(self):
        """Test that indices with p | hM are skipped and reported"""
        excluded = s_pq(1, 1, 4, 3, 4)
        included = s_pq(1, 1, 4, 3, 4, skip_policy="include")

        assert excluded.skipped == (3,)
        assert included.skipped == ()
        expected_gap = Fraction(1 - 4**3, 1 - 4) * t_int_a(1, 3, 4, 4, 3, require_unit=False)
        assert included.value - excluded.value == expected_gap

    def test_preconditions(self):
        """Test the coprimality and p not dividing k requirements"""
        with pytest.raises(PreconditionError):
            s_pq(1, 2, 4, 3, 4)
        with pytest.raises(PreconditionError):
            s_pq(1, 1, 3, 3, 4)
        with pytest.raises(ValueError):
            s_pq(1, 1, 2, 3, 4, skip_policy="sometimes")

    def test_series_variant_needs_padic_q(self):
        """Test that the series variant refuses a bare rational q"""
        with pytest.raises(PreconditionError):
            s_pq(1, 1, 2, 3, 4, "series")

    def test_series_variant_matches_restricted_sums(self):
        """Test the series variant at s = 1 against its rational counterpart"""
        q = padic_q()
        result = s_pq(1, 1, 2, 3, q, "series")
        expected = to_padic(distribution_sum(1, 1, 2, 3, 4, restricted=True), q.ctx)

        assert result.value.agrees_with(expected)
