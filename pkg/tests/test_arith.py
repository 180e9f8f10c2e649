import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zhalf import arith
from zhalf.mpreal import DomainError

from oracles import kronecker_ref
from properties import (
    check_kronecker_multiplicativity,
    check_kronecker_periodicity,
    check_multiplicative_independence_bruteforce,
)


class TestFactorize:
    def test_hand_factorizations(self):
        assert arith.factorize(12) == arith.FactoredInteger(1, ((2, 2), (3, 1)))
        assert arith.factorize(1) == arith.FactoredInteger(1, ())
        assert arith.factorize(-20) == arith.FactoredInteger(-1, ((2, 2), (5, 1)))

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            arith.factorize(0)

    def test_size_cap(self):
        with pytest.raises(DomainError):
            arith.factorize(2**63 + 1)
        arith.factorize(2**63)  # boundary accepted

    @given(st.integers(min_value=-(2**63), max_value=2**63).filter(lambda n: n != 0))
    @settings(max_examples=150, deadline=None)
    def test_reconstruction(self, n):
        f = arith.factorize(n)
        assert f.reconstruct() == n
        assert all(arith.is_prime(p) for p, _ in f.factors)
        primes = [p for p, _ in f.factors]
        assert primes == sorted(set(primes))

    def test_semiprime_with_large_factors(self):
        p, q = 1000003, 998244353
        f = arith.factorize(p * q)
        assert f.factors == ((p, 1), (q, 1))

    def test_deterministic(self):
        n = 614889782588491410  # primorial-ish, many factors
        assert arith.factorize(n) == arith.factorize(n)


class TestSquarefree:
    def test_examples(self):
        assert arith.is_squarefree(10)
        assert not arith.is_squarefree(12)
        assert arith.is_squarefree(1)
        assert arith.is_squarefree(-1)

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            arith.is_squarefree(0)


class TestKronecker:
    def test_examples(self):
        assert arith.kronecker(1, 7) == 1
        assert arith.kronecker(8, 3) == -1
        assert arith.kronecker(5, 5) == 0

    def test_zero_zero_rejected(self):
        with pytest.raises(DomainError):
            arith.kronecker(0, 0)

    def test_conventions(self):
        assert arith.kronecker(0, 1) == 1
        assert arith.kronecker(0, -1) == 1
        assert arith.kronecker(3, 0) == 0
        assert arith.kronecker(-1, 0) == 1
        assert arith.kronecker(-7, -1) == -1
        assert arith.kronecker(7, -1) == 1
        # (a|2): 0 for even, +1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8)
        assert [arith.kronecker(a, 2) for a in (1, 3, 5, 7, 8)] == [1, -1, -1, 1, 0]

    def test_against_prime_definition(self):
        rng = random.Random(77)
        for _ in range(400):
            a = rng.randint(-300, 300)
            n = rng.randint(-300, 300)
            if a == 0 and n == 0:
                continue
            assert arith.kronecker(a, n) == kronecker_ref(a, n), (a, n)

    def test_chi_minus4_pattern(self):
        want = {1: 1, 3: -1, 0: 0, 2: 0}
        for n in range(1, 30):
            assert arith.kronecker(-4, n) == want[n % 4]

    def test_multiplicativity(self):
        check_kronecker_multiplicativity()

    def test_periodicity(self):
        check_kronecker_periodicity()


class TestFundamentalDiscriminant:
    def test_examples(self):
        assert arith.fundamental_discriminant(5) == 5
        assert arith.fundamental_discriminant(6) == 24
        assert arith.fundamental_discriminant(-1) == -4

    def test_output_residue(self):
        for d in range(-60, 60):
            if d in (0, 1):
                continue
            if not arith.is_squarefree(d):
                continue
            D = arith.fundamental_discriminant(d)
            assert D % 4 in (0, 1), (d, D)
            assert arith.is_fundamental_discriminant(D)

    def test_rejections(self):
        for bad in (0, 1, 12, 50):
            with pytest.raises(DomainError):
                arith.fundamental_discriminant(bad)

    def test_is_fundamental(self):
        assert arith.is_fundamental_discriminant(-4)
        assert arith.is_fundamental_discriminant(12)
        assert arith.is_fundamental_discriminant(8)
        assert not arith.is_fundamental_discriminant(10)
        assert not arith.is_fundamental_discriminant(9)
        assert not arith.is_fundamental_discriminant(1)


class TestMultiplicativeIndependence:
    def test_examples(self):
        assert arith.multiplicatively_independent(2, 4) is False
        assert arith.multiplicatively_independent(8, 12) is True
        assert arith.multiplicatively_independent(-4, 2) is False

    def test_unit_conventions(self):
        # 1^n = v^0 with n != 0 already violates the definition
        assert arith.multiplicatively_independent(1, 7) is False
        assert arith.multiplicatively_independent(-1, 7) is False
        assert arith.multiplicatively_independent(7, 1) is False

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            arith.multiplicatively_independent(0, 3)
        with pytest.raises(DomainError):
            arith.multiplicatively_independent(3, 0)

    def test_bruteforce_small(self):
        check_multiplicative_independence_bruteforce(max_abs=30)
