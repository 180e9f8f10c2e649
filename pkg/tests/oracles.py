"""Independent reference computations for the tests.

Everything here is deliberately built on raw gmpy2/MPFR plus exact
rationals, through formulas different from the engine under test: an
Akiyama-Tanigawa Bernoulli triangle, an Euler-Maclaurin harmonic sum for
Euler's constant, Cohen-Rodriguez-Villegas-Zagier acceleration for
alternating Dirichlet series, and incomplete-gamma smoothed character sums
for central L-values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, List

import gmpy2
from gmpy2 import mpfr


def _ctx(prec_bits: int):
    return gmpy2.context(precision=prec_bits, round=gmpy2.RoundToNearest)


def bits_for(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + 24


def at_bernoulli(n: int) -> List[Fraction]:
    """B_0..B_n via the Akiyama-Tanigawa triangle (B_1 = +1/2 convention;
    even indices agree with every convention)."""
    row = [Fraction(0)] * (n + 1)
    out: List[Fraction] = []
    for m in range(n + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        out.append(row[0])
    return out


def euler_gamma_oracle(digits: int) -> mpfr:
    """Euler's constant from H_N - log N - 1/(2N) + sum B_2j/(2j N^2j),
    with H_N exact; good far beyond the requested digits for N = 60."""
    c = _ctx(bits_for(digits + 10))
    N = 60
    J = 45
    bern = at_bernoulli(2 * J + 2)
    h = sum(Fraction(1, k) for k in range(1, N + 1))
    acc = Fraction(0)
    for j in range(1, J + 1):
        acc += bern[2 * j] / (2 * j * Fraction(N) ** (2 * j))
    exact = h - Fraction(1, 2 * N) + acc
    num = mpfr(exact.numerator, max(c.precision, exact.numerator.bit_length() + 2))
    den = mpfr(exact.denominator, max(c.precision, exact.denominator.bit_length() + 2))
    return c.sub(c.div(num, den), c.log(N))


def cvz_alternating(term: Callable[[int], mpfr], digits: int) -> mpfr:
    """sum_{k>=0} (-1)^k a_k for totally monotone a_k, accelerated; the
    number of terms is sized so the scheme's (3+sqrt 8)^-n factor clears the
    requested digits."""
    c = _ctx(bits_for(digits + 15))
    n = int(digits * math.log(10) / math.log(3 + math.sqrt(8))) + 12
    d = c.pow(c.add(mpfr(3), c.sqrt(mpfr(8))), n)
    d = c.div(c.add(d, c.div(mpfr(1), d)), mpfr(2))
    b = mpfr(-1)
    cc = c.minus(d)
    s = mpfr(0)
    for k in range(n):
        cc = c.sub(b, cc)
        s = c.add(s, c.mul(cc, term(k)))
        b = c.div(
            c.mul(c.mul(mpfr(k + n), mpfr(k - n)), b),
            c.mul(c.add(mpfr(k), mpfr("0.5")), mpfr(k + 1)),
        )
    return c.div(s, d)


def zeta_oracle(s: Fraction, digits: int) -> mpfr:
    """zeta(s) = (sum (-1)^k (k+1)^-s) / (1 - 2^(1-s)) via acceleration."""
    c = _ctx(bits_for(digits + 15))
    sv = c.div(mpfr(s.numerator, c.precision), mpfr(s.denominator, c.precision))
    neg_s = c.minus(sv)
    eta = cvz_alternating(lambda k: c.pow(mpfr(k + 1), neg_s), digits + 5)
    denom = c.sub(mpfr(1), c.exp(c.mul(c.sub(mpfr(1), sv), c.log(mpfr(2)))))
    return c.div(mpfr(eta, c.precision), denom)


def beta_half_oracle(digits: int) -> mpfr:
    """L(1/2, chi_-4) = sum (-1)^k / sqrt(2k+1), accelerated."""
    c = _ctx(bits_for(digits + 15))
    return cvz_alternating(lambda k: c.rec_sqrt(mpfr(2 * k + 1)), digits)


def kronecker_ref(a: int, n: int) -> int:
    """Slow-but-sure Kronecker symbol built from the prime definition."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    out = 1
    if n < 0:
        n = -n
        if a < 0:
            out = -out
    for p, e in _trial_factor(n):
        if p == 2:
            if a % 2 == 0:
                comp = 0
            else:
                comp = 1 if a % 8 in (1, 7) else -1
        else:
            r = pow(a % p, (p - 1) // 2, p)
            comp = 1 if r == 1 else (0 if r == 0 else -1)
        if comp == 0:
            return 0
        if e % 2 == 1:
            out *= comp
    return out


def _trial_factor(m: int):
    out = []
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def smoothed_l_half(D: int, digits: int) -> mpfr:
    """Central value of L(s, chi_D) from the incomplete-gamma smoothed sum

        L(1/2) = (2/Gamma(c)) sum_n chi(n) n^-1/2 Gamma(c, pi n^2/|D|)

    with c = 1/4 for D > 0 and c = 3/4 for D < 0 (the functional-equation
    root number is +1 for fundamental discriminants in both parities)."""
    c = _ctx(bits_for(digits + 12))
    q = abs(D)
    expo = mpfr("0.25") if D > 0 else mpfr("0.75")
    pi = c.const_pi()
    cutoff = int(math.ceil(math.sqrt(q * ((digits + 14) * math.log(10)) / math.pi))) + 2
    total = mpfr(0)
    for n in range(1, cutoff + 1):
        chi = kronecker_ref(D, n)
        if not chi:
            continue
        x = c.div(c.mul(pi, mpfr(n * n)), mpfr(q))
        term = c.mul(c.rec_sqrt(mpfr(n)), c.gamma_inc(expo, x))
        total = c.add(total, term) if chi > 0 else c.sub(total, term)
    return c.div(c.mul(mpfr(2), total), c.gamma(expo))


def l_ds_ratio_reflection(D: int, digits: int) -> mpfr:
    """L'(1/2)/L(1/2) for the character of fundamental discriminant D,
    from term-differentiating the symmetric smoothed representation: the
    differentiated theta sums cancel at the central point, leaving only the
    conductor/gamma prefactor,

        -(1/2) log(|D|/pi) - (1/2) psi(c),  c = 1/4 (D>0) or 3/4 (D<0)

    with psi(1/4) = -euler - pi/2 - 3 log 2 and psi(3/4) its reflection."""
    c = _ctx(bits_for(digits + 12))
    q = abs(D)
    pi = c.const_pi()
    gam = c.const_euler()
    log2 = c.log(mpfr(2))
    psi = c.minus(c.add(gam, c.mul(mpfr(3), log2)))
    if D > 0:
        psi = c.sub(psi, c.div(pi, mpfr(2)))
    else:
        psi = c.add(psi, c.div(pi, mpfr(2)))
    return c.minus(
        c.mul(mpfr("0.5"), c.add(c.log(c.div(mpfr(q), pi)), psi))
    )


def central_difference(f, x: Fraction, h: Fraction):
    """(f(x+h) - f(x-h)) / 2h on exact rational abscissae."""
    return (f(x + h) - f(x - h)) / (2 * h)
