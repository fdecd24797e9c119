"""Formal products of elliptic curves: heights, FV-isogeny plans, the Kani
square, and the modular-height non-isomorphism criterion.

Products carry no surface geometry; only additivity of the differential
height over factors is used, which is exactly what the product-level example
families need.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import EllipticCurve, h_diff, h_mod, is_semistable
from .errors import (
    IsotrivialInput,
    IsotrivialSource,
    SemistabilityRequired,
    WrongOrder,
)
from .isogenies import (
    CurvePoint,
    IsogenyChain,
    IsogenyStep,
    VELU,
    VeluIsogeny,
    chain_bookkeeping,
    frobenius_step,
    inverse_frobenius_step,
    point_order,
    velu_quotient,
)


@dataclass(frozen=True)
class ProductAV:
    """A formal product of elliptic curves standing in for an abelian variety."""

    factors: tuple[EllipticCurve, ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a product needs at least one factor")
        if len({E.p for E in self.factors}) != 1:
            raise ValueError("factors must share the same prime field")

    @property
    def dim(self) -> int:
        return len(self.factors)

    @property
    def p(self) -> int:
        return self.factors[0].p


def product_height(A: ProductAV) -> Fraction:
    """Differential height of the product: the sum over factors."""
    return sum((h_diff(E) for E in A.factors), Fraction(0))


# -- FV-isogeny plans --------------------------------------------------------


IDENTITY = "identity"
FROBENIUS_ACTION = "frobenius"
INVERSE_FROBENIUS_ACTION = "inverse_frobenius"
VELU_ACTION = "velu"


@dataclass(frozen=True)
class FactorAction:
    """One per-factor action: identity, Frobenius^k, InverseFrobenius^k, or a
    Velu quotient by the cyclic group of a kernel point."""

    kind: str
    exponent: int = 1
    kernel: CurvePoint | None = None

    def __post_init__(self):
        if self.kind not in (IDENTITY, FROBENIUS_ACTION, INVERSE_FROBENIUS_ACTION,
                             VELU_ACTION):
            raise ValueError(f"unknown action kind {self.kind!r}")
        if self.exponent < 1 and self.kind != IDENTITY:
            raise ValueError("exponent must be >= 1")
        if (self.kind == VELU_ACTION) != (self.kernel is not None):
            raise ValueError("velu actions carry a kernel point; others do not")

    def describe(self) -> str | dict:
        if self.kind == VELU_ACTION:
            return {"velu": str(self.kernel)}
        if self.kind == IDENTITY or self.exponent == 1:
            return self.kind
        return f"{self.kind}^{self.exponent}"


FVPlan = tuple[FactorAction, ...]


@dataclass(frozen=True)
class FVPlanResult:
    source: ProductAV
    target: ProductAV
    degree: int
    uniform: bool
    e: int | None
    f: int | None
    delta_p: int
    delta_p_dual: int
    chains: tuple[IsogenyChain, ...]


def _action_steps(E: EllipticCurve, action: FactorAction) -> list[IsogenyStep]:
    steps: list[IsogenyStep] = []
    cursor = E
    if action.kind == FROBENIUS_ACTION:
        for _ in range(action.exponent):
            step = frobenius_step(cursor)
            steps.append(step)
            cursor = step.target
    elif action.kind == INVERSE_FROBENIUS_ACTION:
        for _ in range(action.exponent):
            step = inverse_frobenius_step(cursor)
            steps.append(step)
            cursor = step.target
    elif action.kind == VELU_ACTION:
        iso = VeluIsogeny(E, action.kernel)
        steps.append(IsogenyStep(VELU, E, iso.codomain, iso.degree,
                                 kernel_point=action.kernel))
    return steps


def _is_uniform(plan: FVPlan, chains: tuple[IsogenyChain, ...],
                p: int) -> tuple[bool, int | None, int | None]:
    kinds = {a.kind for a in plan}
    if kinds == {IDENTITY}:
        return True, 0, 0
    if kinds == {FROBENIUS_ACTION} and len({a.exponent for a in plan}) == 1:
        return True, plan[0].exponent, 0
    if kinds == {INVERSE_FROBENIUS_ACTION} and len({a.exponent for a in plan}) == 1:
        return True, 0, plan[0].exponent
    if kinds == {VELU_ACTION} and all(c.degree % p for c in chains):
        # a product of biseparable isogenies is biseparable: type (0, 0)
        return True, 0, 0
    return False, None, None


def apply_fv_plan(A: ProductAV, plan: FVPlan) -> FVPlanResult:
    """Run a per-factor plan; report type (e, f) when it is a uniform FV-plan.

    Factors receiving Frobenius or inverse-Frobenius actions must be
    semi-stable and non-isotrivial, since only then does the p^(e-f) height
    law apply; this is enforced, not silently assumed.
    """
    if len(plan) != A.dim:
        raise ValueError(f"plan has {len(plan)} actions for {A.dim} factors")
    chains = []
    for E, action in zip(A.factors, plan):
        if action.kind in (FROBENIUS_ACTION, INVERSE_FROBENIUS_ACTION):
            if E.is_isotrivial():
                raise IsotrivialSource(
                    "Frobenius-type actions need non-isotrivial factors"
                )
            if not is_semistable(E):
                raise SemistabilityRequired(
                    "Frobenius-type actions need semi-stable factors"
                )
        chains.append(chain_bookkeeping(_action_steps(E, action), source=E))
    chains = tuple(chains)
    uniform, e, f = _is_uniform(plan, chains, A.p)
    degree = 1
    for chain in chains:
        degree *= chain.degree
    return FVPlanResult(
        source=A,
        target=ProductAV(tuple(chain.target for chain in chains)),
        degree=degree,
        uniform=uniform,
        e=e,
        f=f,
        delta_p=max(chain.delta_p for chain in chains),
        delta_p_dual=max(chain.delta_p_dual for chain in chains),
        chains=chains,
    )


def phi_ij_plan(E: EllipticCurve, g: int, i: int, j: int) -> tuple[ProductAV, FVPlan]:
    """The product E^g with Frobenius on i factors, Verschiebung on j, identity
    on the rest; the height ratio interpolates between additive and
    multiplicative behavior and is a p-power only in the three FV cases."""
    if i < 0 or j < 0 or i + j > g:
        raise ValueError("need i, j >= 0 and i + j <= g")
    A = ProductAV((E,) * g)
    plan = tuple(
        [FactorAction(FROBENIUS_ACTION)] * i
        + [FactorAction(INVERSE_FROBENIUS_ACTION)] * j
        + [FactorAction(IDENTITY)] * (g - i - j)
    )
    return A, plan


def phi_ij_expected_ratio(p: int, g: int, i: int, j: int) -> Fraction:
    return 1 + Fraction(i, g) * (p - 1) + Fraction(j, g) * (Fraction(1, p) - 1)


# -- the Kani square ---------------------------------------------------------


@dataclass(frozen=True)
class KaniReport:
    p: int
    m: int
    deg_pi: int
    deg_pi1: int
    deg_pi2: int
    order_h1: int
    order_h2: int
    degree_identity_holds: bool     # (|H1| + |H2|)^2 == p^2
    h_mod_values: tuple[int, int, int, int]   # E, E/H, E/H1, E/H2
    heights_all_equal: bool
    j_values: tuple[str, str, str, str]
    minimality_checked: bool = False  # relies on End(E) = Z, which we do not verify

    def to_json_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "deg_pi": self.deg_pi,
            "deg_pi1": self.deg_pi1,
            "deg_pi2": self.deg_pi2,
            "order_h1": self.order_h1,
            "order_h2": self.order_h2,
            "degree_identity_holds": self.degree_identity_holds,
            "h_mod": list(self.h_mod_values),
            "heights_all_equal": self.heights_all_equal,
            "j": list(self.j_values),
            "minimality_checked": self.minimality_checked,
        }


def kani_configuration(E: EllipticCurve, P: CurvePoint) -> KaniReport:
    """The degree-p^2 isogeny square built from P of exact order (p^2 - 1)/4.

    P1 = [(p+1)/2] P and P2 = [(p-1)/2] P generate subgroups H1, H2 with
    trivial intersection; the four quotient curves all share the same modular
    height since every quotient degree is coprime to p.
    """
    p = E.p
    m = (p * p - 1) // 4
    order = point_order(P)
    if order != m:
        raise WrongOrder(f"P has order {order}, need (p^2-1)/4 = {m}")
    half_up = (p + 1) // 2
    half_down = (p - 1) // 2
    P1 = half_up * P
    P2 = half_down * P
    order_h1 = point_order(P1)
    order_h2 = point_order(P2)
    quotients = [velu_quotient(E, Q) for Q in (P, P1, P2)]
    (EH, deg_pi), (E1, deg_pi1), (E2, deg_pi2) = quotients
    heights = (h_mod(E), h_mod(EH), h_mod(E1), h_mod(E2))
    return KaniReport(
        p=p,
        m=m,
        deg_pi=deg_pi,
        deg_pi1=deg_pi1,
        deg_pi2=deg_pi2,
        order_h1=order_h1,
        order_h2=order_h2,
        degree_identity_holds=(order_h1 + order_h2) ** 2 == p * p,
        h_mod_values=heights,
        heights_all_equal=len(set(heights)) == 1,
        j_values=tuple(str(C.j) for C in (E, EH, E1, E2)),
    )


# -- Picard-rank style non-isomorphism criterion ------------------------------


def is_power_of_p(ratio: Fraction, p: int) -> bool:
    """True when ratio = p^k for some integer k (k may be negative)."""
    num, den = ratio.numerator, ratio.denominator
    if num <= 0:
        return False

    def pure_p_power(n: int) -> bool:
        while n % p == 0:
            n //= p
        return n == 1

    return (den == 1 and pure_p_power(num)) or (num == 1 and pure_p_power(den))


def shioda_nonisomorphism_check(E: EllipticCurve, E1: EllipticCurve,
                                E2: EllipticCurve) -> bool:
    """True when h_mod(E1)/h_mod(E2) is not a power of p, certifying that E1
    and E2 are non-isogenous and hence E x E1 and E x E2 are not isomorphic
    (for E with no extra endomorphisms)."""
    if E1.is_isotrivial() or E2.is_isotrivial():
        raise IsotrivialInput("the criterion needs non-isotrivial curves")
    ratio = Fraction(h_mod(E1), h_mod(E2))
    return not is_power_of_p(ratio, E.p)
