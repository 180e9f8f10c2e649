"""The functional-equation factor of a Dedekind zeta function, its
closed-form derivative at the central point, and the certification and gap
quantities built from it.

Everything here reduces to the constant block log(8 pi) + gamma, pi/2, and
exact integer discriminant data, so certificates carry genuine error
radii rather than heuristic tolerances.  Certification thresholds use the
exact exponentials, never their decimal truncations: the truncated constants
would mis-certify discriminants in the sliver between truncated and exact
values, and the verify suite separately confirms the truncations bracket
the exact thresholds.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Tuple

import gmpy2

from . import arith
from .mpreal import (
    BoundedReal,
    DomainError,
    PrecisionContext,
    PrecisionExhausted,
    Scalar,
    as_bounded,
    constant_gamma,
    constant_log,
    constant_pi,
    cos,
    exp,
    gamma,
    power,
    sin,
)

__all__ = [
    "FieldSignature",
    "Certificate",
    "ABELIAN_DEGREE_BOUND",
    "log8pi_gamma",
    "threshold_constants",
    "a_factor",
    "a_prime_half",
    "exceptional_interval",
    "certify",
    "certify_abelian",
    "abelian_lower_bound_check",
    "theorem1_gap",
    "theorem6_gap",
    "theorem6_condition1",
    "corollary7_constant",
    "remark_degree",
]

# abelian fields of at least this degree always get a positive derivative
# of the functional-equation factor at the central point
ABELIAN_DEGREE_BOUND = 46369

Rule = Literal["degree_le_3", "threshold_thm4", "direct_evaluation", "abelian_bound"]


@dataclass(frozen=True)
class FieldSignature:
    """(degree, real embeddings, complex pairs, discriminant)."""

    n: int
    r1: int
    r2: int
    d: int

    def __post_init__(self):
        if self.n < 1 or self.r1 < 0 or self.r2 < 0:
            raise DomainError("invalid signature counts")
        if self.n != self.r1 + 2 * self.r2:
            raise DomainError(f"degree {self.n} != r1 + 2 r2 = {self.r1 + 2 * self.r2}")
        if self.d == 0:
            raise DomainError("discriminant must be nonzero")
        if self.n > 1 and abs(self.d) == 1:
            raise DomainError("|d| > 1 required for degree > 1")

    def check_strict(self) -> None:
        """Stickelberger congruence and the sign rule, for real field data."""
        if self.d % 4 not in (0, 1):
            raise DomainError(f"discriminant {self.d} fails d = 0, 1 (mod 4)")
        if (self.d > 0) != (self.r2 % 2 == 0):
            raise DomainError(f"sign of {self.d} inconsistent with r2 = {self.r2}")

    @classmethod
    def quadratic(cls, d: int) -> "FieldSignature":
        D = arith.fundamental_discriminant(d)
        if d > 0:
            return cls(n=2, r1=2, r2=0, d=D)
        return cls(n=2, r1=0, r2=1, d=D)

    @classmethod
    def rationals(cls) -> "FieldSignature":
        return cls(n=1, r1=1, r2=0, d=1)


@dataclass(frozen=True)
class Certificate:
    """Outcome of a non-vanishing-equivalence check at the central point."""

    status: Literal["certified_nonzero", "undetermined"]
    sign: Optional[int]
    margin: BoundedReal
    rule: Optional[Rule]

    def __post_init__(self):
        if self.status == "certified_nonzero":
            if self.sign not in (-1, 1):
                raise DomainError("certified certificate requires a sign")
            if not self.margin.is_nonzero():
                raise DomainError("certified certificate requires margin > err")


_const_lock = threading.Lock()
_const_cache: dict = {}


def log8pi_gamma(ctx: PrecisionContext) -> BoundedReal:
    """log(8 pi) + gamma, the per-degree constant of the derivative."""
    key = ("log8pi_gamma", ctx.digits, ctx.guard)
    with _const_lock:
        hit = _const_cache.get(key)
    if hit is not None:
        return hit
    val = constant_log(8 * constant_pi(ctx), ctx) + constant_gamma(ctx)
    with _const_lock:
        _const_cache[key] = val
    return val


def threshold_constants(ctx: PrecisionContext) -> Tuple[BoundedReal, BoundedReal]:
    """exp(log 8pi + gamma) and exp(pi/2 + log 8pi + gamma): the exact
    degree-1 certification thresholds."""
    base = log8pi_gamma(ctx)
    return exp(base, ctx), exp(constant_pi(ctx) / 2 + base, ctx)


def a_factor(sig: FieldSignature, s: Scalar, ctx: PrecisionContext) -> BoundedReal:
    """|d|^(s-1/2) cos(pi s/2)^(r1+r2) sin(pi s/2)^r2 (2 (2pi)^-s Gamma(s))^n."""
    sb = as_bounded(s, ctx)
    if not (sb.value > 0):
        raise DomainError("the Gamma evaluation path requires s > 0")
    if sb.value > 4:
        raise DomainError("s restricted to the Hurwitz window (0, 4]")
    if abs(float(sb.value) - 1.0) < 1e-3:
        raise DomainError("s too close to the pole at 1")
    pi = constant_pi(ctx)
    half_pi_s = pi * sb / 2
    out = power(as_bounded(abs(sig.d), ctx), sb - Fraction(1, 2), ctx)
    out = out * cos(half_pi_s, ctx) ** (sig.r1 + sig.r2)
    if sig.r2:
        out = out * sin(half_pi_s, ctx) ** sig.r2
    gam = 2 * power(2 * pi, -sb, ctx) * gamma(sb, ctx)
    return out * gam**sig.n


def a_prime_half(sig: FieldSignature, ctx: PrecisionContext) -> BoundedReal:
    """log|d| - r1 pi/2 - n (log 8pi + gamma)."""
    out = constant_log(abs(sig.d), ctx)
    if sig.r1:
        out = out - sig.r1 * constant_pi(ctx) / 2
    return out - sig.n * log8pi_gamma(ctx)


def _exceptional_point(n: int, r1: int, ctx: PrecisionContext) -> BoundedReal:
    return exp(r1 * constant_pi(ctx) / 2 + n * log8pi_gamma(ctx), ctx)


def exceptional_interval(
    n: int, r1: int, ctx: PrecisionContext
) -> Tuple[int, int, bool]:
    """Consecutive integers m < exp(r1 pi/2 + n(log 8pi + gamma)) < m + 1.

    Retries internally with more digits if the radius straddles an integer;
    certification is always strict in the returned tuple.
    """
    if not (1 <= n and 0 <= r1 <= n):
        raise DomainError(f"invalid (n, r1) = ({n}, {r1})")
    if (n - r1) % 2 != 0:
        raise DomainError(f"r1 = {r1} not admissible for degree {n}: r2 not integral")
    work = ctx
    for _ in range(4):
        x = _exceptional_point(n, r1, work)
        m = int(gmpy2.floor(x.value))
        if x.lower() > m and x.upper() < m + 1:
            return m, m + 1, True
        work = work.spawn(40)
    raise PrecisionExhausted(
        f"exp point for (n, r1) = ({n}, {r1}) straddles an integer; raise digits"
    )


def certify(sig: FieldSignature, ctx: PrecisionContext) -> Certificate:
    """Certified sign of the factor derivative at the central point, or
    undetermined; never claims an exact zero."""
    ap = a_prime_half(sig, ctx)
    margin = abs(ap)
    ad = abs(sig.d)

    if sig.n <= 3:
        m, m1, _ = exceptional_interval(sig.n, sig.r1, ctx)
        sign = 1 if ad >= m1 else -1
        if margin.is_nonzero() and sign == (1 if ap.value > 0 else -1):
            return Certificate("certified_nonzero", sign, margin, "degree_le_3")
        return Certificate("undetermined", None, margin, None)

    base = log8pi_gamma(ctx)
    t_lo = sig.n * base
    t_hi = sig.n * (constant_pi(ctx) / 2 + base)
    logd = constant_log(ad, ctx)
    if logd.upper() < t_lo.lower() or logd.lower() > t_hi.upper():
        sign = -1 if logd.value < t_lo.value else 1
        if margin.is_nonzero():
            return Certificate("certified_nonzero", sign, margin, "threshold_thm4")
        return Certificate("undetermined", None, margin, None)

    if margin.is_nonzero():
        sign = 1 if ap.value > 0 else -1
        return Certificate("certified_nonzero", sign, margin, "direct_evaluation")
    return Certificate("undetermined", None, margin, None)


def abelian_lower_bound_check(n: int, ctx: PrecisionContext) -> BoundedReal:
    """n (log(n)/2 - pi/2 - log 8pi - gamma): positive once the discriminant
    growth of abelian fields outruns the constant block."""
    if n < 1:
        raise DomainError("degree must be positive")
    val = constant_log(n, ctx) / 2 - constant_pi(ctx) / 2 - log8pi_gamma(ctx)
    return n * val


def certify_abelian(n: int, ctx: PrecisionContext) -> Certificate:
    """Degree-only certificate for abelian fields; positive for every
    degree at or beyond the bound, undetermined below it."""
    bound = abelian_lower_bound_check(n, ctx)
    if bound.sign() > 0:
        return Certificate("certified_nonzero", 1, bound, "abelian_bound")
    return Certificate("undetermined", None, abs(bound), None)


def theorem1_gap(d1: int, d2: int, ctx: PrecisionContext) -> BoundedReal:
    """log(|d_K|/|d_L|) + pi/2 (r1_L - r1_K) for distinct quadratic fields;
    equals -2 (zeta_K'/zeta_K - zeta_L'/zeta_L) at the central point."""
    if d1 == d2:
        raise DomainError("fields must be distinct")
    s1 = FieldSignature.quadratic(d1)
    s2 = FieldSignature.quadratic(d2)
    gap = constant_log(abs(s1.d), ctx) - constant_log(abs(s2.d), ctx)
    if s2.r1 != s1.r1:
        gap = gap + (s2.r1 - s1.r1) * constant_pi(ctx) / 2
    return gap


def theorem6_gap(
    sig1: FieldSignature, sig2: FieldSignature, ctx: PrecisionContext
) -> BoundedReal:
    """m log|d_K| - n log|d_L| + pi/2 (n r1_L - m r1_K), with n = deg K,
    m = deg L."""
    n, m = sig1.n, sig2.n
    gap = m * constant_log(abs(sig1.d), ctx) - n * constant_log(abs(sig2.d), ctx)
    swing = n * sig2.r1 - m * sig1.r1
    if swing:
        gap = gap + swing * constant_pi(ctx) / 2
    return gap


def theorem6_condition1(sig1: FieldSignature, sig2: FieldSignature) -> bool:
    """Exact integer test |d_K|^m != |d_L|^n."""
    return abs(sig1.d) ** sig2.n != abs(sig2.d) ** sig1.n


def corollary7_constant(sig: FieldSignature, ctx: PrecisionContext) -> BoundedReal:
    """r1 pi/4 - (1/2) log|d_K|."""
    out = -constant_log(abs(sig.d), ctx) / 2
    if sig.r1:
        out = out + sig.r1 * constant_pi(ctx) / 4
    return out


def remark_degree(
    disc_abs: int, totally_real: bool, ctx: PrecisionContext
) -> BoundedReal:
    """The degree a Galois field must have for the factor derivative to
    vanish at the given discriminant."""
    if disc_abs <= 1:
        raise DomainError("|d| > 1 required")
    denom = log8pi_gamma(ctx)
    if totally_real:
        denom = denom + constant_pi(ctx) / 2
    return constant_log(disc_abs, ctx) / denom
