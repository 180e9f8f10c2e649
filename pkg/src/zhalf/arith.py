"""Exact integer number theory: factorization, squarefree tests, Kronecker
symbols, fundamental discriminants, multiplicative independence."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .mpreal import DomainError

__all__ = [
    "FactoredInteger",
    "factorize",
    "is_prime",
    "is_squarefree",
    "kronecker",
    "is_fundamental_discriminant",
    "fundamental_discriminant",
    "multiplicatively_independent",
]

FACTOR_LIMIT = 2**63
_TRIAL_BOUND = 10**6

# deterministic Miller-Rabin witnesses, valid for all n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class FactoredInteger:
    """sign * prod(p**e), primes strictly increasing."""

    sign: int
    factors: Tuple[Tuple[int, int], ...]

    def reconstruct(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n

    def exponent_vector(self) -> dict:
        return {p: e for p, e in self.factors}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Deterministic Brent cycle-finding; n must be odd composite, no small
    factors.  Parameters are cycled deterministically so results are stable."""
    if n % 2 == 0:
        return 2
    for c in range(1, 64):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                k += m
                g = math.gcd(q, n)
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


def factorize(n: int) -> FactoredInteger:
    """Factor a nonzero integer with |n| <= 2**63."""
    if n == 0:
        raise DomainError("factorize requires a nonzero integer")
    if abs(n) > FACTOR_LIMIT:
        raise DomainError(f"factorize restricted to |n| <= 2**63, got {n}")
    sign = 1 if n > 0 else -1
    m = abs(n)
    counts: dict = {}
    for p in (2, 3, 5):
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
    # wheel over 6k+-1 up to the trial bound
    p = 7
    step = 4
    while p <= _TRIAL_BOUND and p * p <= m:
        while m % p == 0:
            counts[p] = counts.get(p, 0) + 1
            m //= p
        p += step
        step = 6 - step
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack.extend((root, root))
            continue
        d = _brent_rho(m)
        stack.extend((d, m // d))
    return FactoredInteger(sign, tuple(sorted(counts.items())))


def is_squarefree(n: int) -> bool:
    if n == 0:
        raise DomainError("is_squarefree requires a nonzero integer")
    return all(e == 1 for _, e in factorize(n).factors)


def _jacobi(a: int, m: int) -> int:
    """Jacobi symbol for odd m >= 1."""
    a %= m
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                result = -result
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            result = -result
        a %= m
    return result if m == 1 else 0


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), extended to all integer pairs except (0, 0)."""
    if a == 0 and n == 0:
        raise DomainError("kronecker symbol (0|0) is undefined")
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    if e:
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5) and e % 2 == 1:
            result = -result
    return result * _jacobi(a, n)


def is_fundamental_discriminant(D: int) -> bool:
    """True for discriminants of quadratic fields (D = 1 excluded)."""
    if D == 1 or D == 0:
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for squarefree d not in {0, 1}."""
    if d in (0, 1):
        raise DomainError(f"no quadratic field for d = {d}")
    if not is_squarefree(d):
        raise DomainError(f"d must be squarefree, got {d}")
    return d if d % 4 == 1 else 4 * d


def multiplicatively_independent(u: int, v: int) -> bool:
    """True iff u**n = v**m forces n = m = 0.

    Decided exactly: dependence of |u|, |v| means proportional exponent
    vectors, and any such relation lifts to signed u, v through an even
    multiple, so signs never rescue independence.
    """
    if u == 0 or v == 0:
        raise DomainError("multiplicative independence requires nonzero integers")
    if abs(u) == 1 or abs(v) == 1:
        return False
    eu = factorize(u).exponent_vector()
    ev = factorize(v).exponent_vector()
    if set(eu) != set(ev):
        return True
    primes = sorted(eu)
    # proportionality: e_p * m == f_p * n for a single ratio n/m
    p0 = primes[0]
    n0, m0 = ev[p0], eu[p0]
    return any(eu[p] * n0 != ev[p] * m0 for p in primes[1:])
