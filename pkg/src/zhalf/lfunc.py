"""Riemann zeta and quadratic Dirichlet L-values at real points, plus
quadratic-field central values through the factorization into zeta times L.

L(s, chi_D) is evaluated by the conductor decomposition

    L(s, chi_D) = |D|^-s * sum_{a=1}^{|D|} chi_D(a) zeta(s, a/|D|)

so a single rigorously bounded Hurwitz engine backs every value.  The
derivative route for the central point is the product rule; the closed-form
route through the functional-equation factor is recomputed independently
and the two must agree within their combined radii or the evaluation aborts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from . import arith
from .dedekind import FieldSignature, a_prime_half
from .hurwitz import hurwitz_zeta, hurwitz_zeta_ds, periodic_weighted_sum
from .mpreal import (
    BoundedReal,
    DomainError,
    PrecisionContext,
    Scalar,
    as_bounded,
    constant_log,
    power,
)

__all__ = [
    "QuadraticCharacter",
    "CentralValues",
    "RouteDisagreement",
    "MAX_CONDUCTOR",
    "riemann_zeta",
    "riemann_zeta_ds",
    "l_value",
    "l_value_ds",
    "quad_central",
]

MAX_CONDUCTOR = 10**6


class RouteDisagreement(ArithmeticError):
    """The product-rule and functional-equation routes separated by more
    than their combined radii: an engine bug, never a rounding artifact."""


@lru_cache(maxsize=256)
def _char_table(D: int) -> Tuple[int, ...]:
    return tuple(arith.kronecker(D, r) for r in range(abs(D)))


@dataclass(frozen=True)
class QuadraticCharacter:
    """Kronecker character attached to a fundamental discriminant (or D=1,
    the trivial character)."""

    D: int

    def __post_init__(self):
        if self.D != 1 and not arith.is_fundamental_discriminant(self.D):
            raise DomainError(f"{self.D} is not a fundamental discriminant")
        if abs(self.D) > MAX_CONDUCTOR:
            raise DomainError(f"conductor limited to {MAX_CONDUCTOR}")

    @property
    def modulus(self) -> int:
        return abs(self.D)

    def value(self, n: int) -> int:
        if self.D == 1:
            return 1
        return _char_table(self.D)[n % self.modulus]

    def table(self) -> Tuple[int, ...]:
        if self.D == 1:
            return (1,)
        return _char_table(self.D)


def riemann_zeta(s: Scalar, ctx: PrecisionContext) -> BoundedReal:
    return hurwitz_zeta(s, 1, ctx)


def riemann_zeta_ds(s: Scalar, ctx: PrecisionContext) -> BoundedReal:
    return hurwitz_zeta_ds(s, 1, ctx)


def l_value(D: int, s: Scalar, ctx: PrecisionContext) -> BoundedReal:
    chi = QuadraticCharacter(D)
    if D == 1:
        return riemann_zeta(s, ctx)
    q = chi.modulus
    w = periodic_weighted_sum(s, q, chi.table(), ctx)
    return (power(as_bounded(q, ctx), -as_bounded(s, ctx), ctx) * w).check_contract()


def l_value_ds(D: int, s: Scalar, ctx: PrecisionContext) -> BoundedReal:
    chi = QuadraticCharacter(D)
    if D == 1:
        return riemann_zeta_ds(s, ctx)
    q = chi.modulus
    sb = as_bounded(s, ctx)
    wd = periodic_weighted_sum(s, q, chi.table(), ctx, deriv=True)
    out = -constant_log(q, ctx) * l_value(D, s, ctx) + power(
        as_bounded(q, ctx), -sb, ctx
    ) * wd
    return out.check_contract()


@dataclass(frozen=True)
class CentralValues:
    """Central-point data for a quadratic field, cross-checked two ways."""

    d: int
    discriminant: int
    zeta_k: BoundedReal
    zeta_k_prime: BoundedReal
    a_prime: BoundedReal
    log_ratio: Optional[BoundedReal]


def quad_central(d: int, ctx: PrecisionContext) -> CentralValues:
    """zeta_K(1/2), zeta_K'(1/2) for K = Q(sqrt(d)), d squarefree.

    The stored derivative comes from the product rule; the closed-form
    route is evaluated as well and a disagreement beyond combined radii
    raises ``RouteDisagreement``.
    """
    if d in (0, 1):
        raise DomainError(f"no quadratic field for d = {d}")
    if not arith.is_squarefree(d):
        raise DomainError(f"d must be squarefree, got {d}")
    D = arith.fundamental_discriminant(d)
    sig = FieldSignature.quadratic(d)
    half = Fraction(1, 2)

    z = riemann_zeta(half, ctx)
    zd = riemann_zeta_ds(half, ctx)
    L = l_value(D, half, ctx)
    Ld = l_value_ds(D, half, ctx)

    zeta_k = z * L
    prod_rule = zd * L + z * Ld
    ap = a_prime_half(sig, ctx)
    eq2 = -half * ap * zeta_k

    gap = abs(prod_rule - eq2)
    ec = ctx._err
    allowance = ec.add(gap.err, ec.add(prod_rule.err, eq2.err))
    if not (gap.value <= allowance):
        raise RouteDisagreement(
            f"zeta_K'(1/2) routes disagree for d={d}: "
            f"product rule {prod_rule.value} vs factor route {eq2.value}"
        )

    log_ratio = prod_rule / zeta_k if zeta_k.is_nonzero() else None
    return CentralValues(
        d=d,
        discriminant=D,
        zeta_k=zeta_k,
        zeta_k_prime=prod_rule,
        a_prime=ap,
        log_ratio=log_ratio,
    )
