from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr

from zhalf import mpreal as mp
from zhalf.mpreal import (
    BoundedReal,
    DomainError,
    PrecisionContext,
    PrecisionExhausted,
    as_bounded,
)

from oracles import at_bernoulli, euler_gamma_oracle


@pytest.fixture(scope="module")
def ctx():
    return PrecisionContext(50)


@pytest.fixture(scope="module")
def ctx30():
    return PrecisionContext(30)


def _within(x: BoundedReal, ref: mpfr, slack: float) -> bool:
    c = gmpy2.context(precision=300)
    return abs(float(c.sub(x.value, ref))) <= float(x.err) + slack


class TestContext:
    def test_digit_floor(self):
        with pytest.raises(DomainError):
            PrecisionContext(14)
        PrecisionContext(15)

    def test_guard_floor(self):
        with pytest.raises(DomainError):
            PrecisionContext(50, guard=5)


class TestConstants:
    def test_gamma_against_independent_oracle(self, ctx):
        ref = euler_gamma_oracle(60)
        g = mp.constant_gamma(ctx)
        assert _within(g, ref, 1e-58)

    def test_gamma_leading_digits(self, ctx):
        assert mp.render(mp.constant_gamma(ctx)).startswith("0.577")

    def test_gamma_err_bound(self, ctx):
        assert float(mp.constant_gamma(ctx).err) <= 1e-45

    def test_exp_zero_exact(self, ctx):
        e = mp.exp(0, ctx)
        assert e.value == 1 and e.err == 0

    def test_log_one_exact(self, ctx):
        l = mp.constant_log(1, ctx)
        assert l.value == 0 and l.err == 0

    def test_log_rejects_nonpositive(self, ctx):
        with pytest.raises(DomainError):
            mp.constant_log(0, ctx)
        with pytest.raises(DomainError):
            mp.constant_log(-3, ctx)


class TestDigammaHalf:
    def test_value_against_constants(self, ctx):
        d = mp.digamma_half(ctx)
        ref = -(mp.constant_gamma(ctx) + 2 * mp.constant_log(2, ctx))
        gap = d - ref
        assert abs(gap.value) <= gap.err
        assert mp.render(d, 20).startswith("-1.963510026021423479")

    def test_defining_identity(self, ctx):
        resid = mp.digamma_half(ctx) + mp.constant_gamma(ctx) + 2 * mp.constant_log(2, ctx)
        assert abs(resid.value) <= resid.err

    def test_err_monotone_in_digits(self):
        e30 = mp.digamma_half(PrecisionContext(30)).err
        e60 = mp.digamma_half(PrecisionContext(60)).err
        assert e60 < e30


class TestGamma:
    def test_gamma_one(self, ctx):
        g = mp.gamma(1, ctx)
        assert abs(g.value - 1) <= g.err

    def test_gamma_half_squared_is_pi(self, ctx):
        g = mp.gamma(Fraction(1, 2), ctx)
        gap = g * g - mp.constant_pi(ctx)
        assert abs(gap.value) <= gap.err

    def test_gamma_five_halves(self, ctx):
        g = mp.gamma(Fraction(5, 2), ctx)
        ref = mp.sqrt(mp.constant_pi(ctx), ctx) * Fraction(3, 4)
        gap = g - ref
        assert abs(gap.value) <= gap.err

    def test_recurrence_random(self, ctx30):
        import random

        rng = random.Random(4)
        for _ in range(100):
            s = Fraction(rng.randint(100, 20000), 1000)
            lhs = mp.gamma(s + 1, ctx30)
            rhs = as_bounded(s, ctx30) * mp.gamma(s, ctx30)
            gap = lhs - rhs
            assert abs(gap.value) <= gap.err, s

    def test_domain(self, ctx):
        with pytest.raises(DomainError):
            mp.gamma(0, ctx)
        with pytest.raises(DomainError):
            mp.gamma(-2, ctx)
        with pytest.raises(DomainError):
            mp.gamma(41, ctx)


class TestBernoulli:
    def test_small_values(self):
        assert mp.bernoulli(2) == Fraction(1, 6)
        assert mp.bernoulli(4) == Fraction(-1, 30)
        assert mp.bernoulli(12) == Fraction(-691, 2730)

    def test_against_akiyama_tanigawa(self):
        ref = at_bernoulli(60)
        for k in range(2, 61, 2):
            assert mp.bernoulli(k) == ref[k], k

    def test_rejections(self):
        for bad in (3, 0, -2, 402):
            with pytest.raises(DomainError):
                mp.bernoulli(bad)


class TestErrSemantics:
    def test_err_is_true_bound(self, ctx30):
        """Recomputing at digits+20 lands within the radius reported at 30."""
        probes = [
            lambda c: mp.constant_pi(c),
            lambda c: mp.constant_gamma(c),
            lambda c: mp.constant_log(3, c),
            lambda c: mp.exp(as_bounded(Fraction(13, 10), c), c),
            lambda c: mp.sin(as_bounded(Fraction(7, 10), c), c),
            lambda c: mp.tan(as_bounded(Fraction(2, 5), c), c),
            lambda c: mp.gamma(Fraction(5, 2), c),
            lambda c: mp.digamma_half(c),
            lambda c: mp.power(as_bounded(7, c), as_bounded(Fraction(-1, 3), c), c),
        ]
        hi = PrecisionContext(50)
        wide = gmpy2.context(precision=400)
        for probe in probes:
            lo_val = probe(ctx30)
            hi_val = probe(hi)
            gap = abs(float(wide.sub(lo_val.value, hi_val.value)))
            assert gap <= float(lo_val.err), probe

    def test_interval_consistency(self):
        a = mp.constant_log(7, PrecisionContext(25))
        b = mp.constant_log(7, PrecisionContext(55))
        assert a.overlaps(b) and b.overlaps(a)

    def test_contract_violation_raises(self, ctx):
        with pytest.raises(PrecisionExhausted):
            BoundedReal(mpfr(1), mpfr("1e-20"), ctx).check_contract()

    def test_division_by_uncertified_raises(self, ctx):
        tiny = BoundedReal(mpfr("1e-50"), mpfr("1e-49"), ctx)
        with pytest.raises(PrecisionExhausted):
            as_bounded(1, ctx) / tiny

    def test_tan_pole_rejected(self, ctx):
        half_pi = mp.constant_pi(ctx) / 2
        wobbly = BoundedReal(half_pi.value, mpfr("1e-46"), ctx)
        with pytest.raises(DomainError):
            mp.tan(wobbly, ctx)


class TestArithmeticOps:
    def test_integer_pow(self, ctx):
        x = as_bounded(Fraction(3, 2), ctx)
        gap = x**5 - Fraction(243, 32)
        assert abs(gap.value) <= gap.err
        neg = x**-2 - Fraction(4, 9)
        assert abs(neg.value) <= neg.err

    def test_power_half_is_sqrt(self, ctx):
        a = as_bounded(7, ctx)
        gap = mp.power(a, Fraction(1, 2), ctx) - mp.sqrt(a, ctx)
        assert abs(gap.value) <= gap.err

    def test_sign_and_nonzero(self, ctx):
        x = as_bounded(3, ctx) - 2
        assert x.is_nonzero() and x.sign() == 1
        y = x - 1
        assert not y.is_nonzero() and y.sign() == 0

    def test_mixing_contexts_rejected(self, ctx, ctx30):
        with pytest.raises(DomainError):
            as_bounded(1, ctx) + as_bounded(1, ctx30)


class TestRender:
    def test_fixed_notation(self, ctx):
        assert mp.render(as_bounded(Fraction(1, 8), ctx)) == "0.125"
        assert mp.render(as_bounded(12345, ctx)) == "12345"
        assert mp.render(as_bounded(Fraction(-3, 2), ctx)) == "-1.5"

    def test_scientific_thresholds(self, ctx):
        assert mp.render(as_bounded(10**9, ctx)) == "1000000000"
        assert mp.render(as_bounded(10**10, ctx)) == "1e+10"
        assert mp.render(as_bounded(Fraction(1, 10**6), ctx)) == "0.000001"
        assert "e-" in mp.render(as_bounded(Fraction(1, 10**7), ctx), 5)

    def test_round_half_even(self, ctx):
        assert mp.render(as_bounded(Fraction(1, 8), ctx), 2) == "0.12"
        assert mp.render(as_bounded(Fraction(3, 8), ctx), 2) == "0.38"

    def test_zero(self, ctx):
        assert mp.render(as_bounded(0, ctx)) == "0"

    def test_requested_digits(self, ctx):
        pi15 = mp.render(mp.constant_pi(ctx), 15)
        pi50 = mp.render(mp.constant_pi(ctx), 50)
        assert pi50.startswith(pi15[:-1])
