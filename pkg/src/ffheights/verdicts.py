"""Executable verifiers for the height-variation laws.

Each verifier computes both sides of its statement independently (heights via
the Tate/Weil machinery, predicted ratios via chain bookkeeping) and returns a
structured Verdict with the exact quantities.  A failed verdict is a
bug-or-counterexample report, never a silent pass.  No floating point appears
anywhere: all values are integers or Fractions.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .curves import EllipticCurve, h_diff, h_mod, is_semistable
from .errors import (
    CurveMismatch,
    IsotrivialInput,
    NotUniformPlan,
    SemistabilityRequired,
)
from .funcfield import fraction_str
from .isogenies import IsogenyChain, SubgroupSpec, quotient_by_subgroup, subgroup_order
from .products import FVPlan, ProductAV, apply_fv_plan, product_height


def _render(value):
    if isinstance(value, tuple):
        return [fraction_str(v) for v in value]
    return fraction_str(value)


@dataclass(frozen=True)
class Verdict:
    statement: str
    lhs: object
    rhs: object
    holds: bool
    is_equality: bool
    context: dict

    def to_json_dict(self) -> dict:
        return {
            "statement": self.statement,
            "lhs": _render(self.lhs),
            "rhs": _render(self.rhs),
            "holds": self.holds,
            "is_equality": self.is_equality,
            "context": self.context,
        }


def context_hash(context: dict) -> str:
    blob = json.dumps(context, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def _curve_context(E: EllipticCurve) -> dict:
    return {"p": E.p, "a": [str(a) for a in E.a_invariants]}


def _chain_context(chain: IsogenyChain) -> dict:
    return {
        "steps": chain.describe(),
        "degree": chain.degree,
        "deg_ins": chain.deg_ins,
        "deg_ins_dual": chain.deg_ins_dual,
    }


def verify_Hd(E: EllipticCurve, chain: IsogenyChain) -> Verdict:
    """h_diff(target) = (deg_ins / deg_ins_dual) * h_diff(E), for semi-stable E."""
    if chain.source != E:
        raise CurveMismatch("chain does not start at the given curve")
    if E.is_isotrivial():
        raise IsotrivialInput("differential-height law needs non-isotrivial input")
    if not is_semistable(E):
        raise SemistabilityRequired("differential-height law needs semi-stable input")
    assert is_semistable(chain.target), "semi-stability must persist through isogenies"
    lhs = h_diff(chain.target)
    rhs = chain.inseparability_ratio * h_diff(E)
    return Verdict(
        statement="Hd",
        lhs=lhs,
        rhs=rhs,
        holds=lhs == rhs,
        is_equality=True,
        context={"curve": _curve_context(E), "chain": _chain_context(chain)},
    )


def verify_Hm(E: EllipticCurve, chain: IsogenyChain) -> Verdict:
    """h(j(target)) = (deg_ins / deg_ins_dual) * h(j(E)); no semi-stability needed."""
    if chain.source != E:
        raise CurveMismatch("chain does not start at the given curve")
    if E.is_isotrivial():
        raise IsotrivialInput("modular-height law needs non-isotrivial input")
    lhs = Fraction(h_mod(chain.target))
    rhs = chain.inseparability_ratio * h_mod(E)
    return Verdict(
        statement="Hm",
        lhs=lhs,
        rhs=rhs,
        holds=lhs == rhs,
        is_equality=True,
        context={"curve": _curve_context(E), "chain": _chain_context(chain)},
    )


def verify_verfrob(A: ProductAV, plan: FVPlan) -> Verdict:
    """h_diff(B) = p^(e-f) * h_diff(A) for a uniform type-(e, f) plan."""
    result = apply_fv_plan(A, plan)
    if not result.uniform:
        raise NotUniformPlan("plan does not apply one common action to every factor")
    p = A.p
    scale = Fraction(p) ** (result.e - result.f)
    lhs = product_height(result.target)
    rhs = scale * product_height(A)
    return Verdict(
        statement="verfrob",
        lhs=lhs,
        rhs=rhs,
        holds=lhs == rhs,
        is_equality=True,
        context={
            "factors": [_curve_context(E) for E in A.factors],
            "plan": [a.describe() for a in plan],
            "e": result.e,
            "f": result.f,
        },
    )


def verify_main_bounds(A: ProductAV, chains) -> Verdict:
    """p^(-max delta_p_dual) * h_diff(A) <= h_diff(B) <= p^(max delta_p) * h_diff(A).

    Chains act factorwise; the aggregate Frobenius height of the product
    isogeny is the max over factors (the kernel of the purely inseparable part
    is the product of the per-factor kernels).
    """
    chains = tuple(chains)
    if len(chains) != A.dim:
        raise ValueError(f"{len(chains)} chains for {A.dim} factors")
    for E, chain in zip(A.factors, chains):
        if chain.source != E:
            raise CurveMismatch("chain does not start at its factor")
        if E.is_isotrivial():
            raise IsotrivialInput("bounds need ordinary (non-isotrivial) factors")
        if not is_semistable(E):
            raise SemistabilityRequired("bounds need semi-stable factors")
    p = A.p
    delta = max(chain.delta_p for chain in chains)
    delta_dual = max(chain.delta_p_dual for chain in chains)
    h_a = product_height(A)
    h_b = sum((h_diff(chain.target) for chain in chains), Fraction(0))
    low = Fraction(p) ** (-delta_dual) * h_a
    high = Fraction(p) ** delta * h_a
    return Verdict(
        statement="main_bounds",
        lhs=(low, high),
        rhs=h_b,
        holds=low <= h_b <= high,
        is_equality=low == h_b == high,
        context={
            "factors": [_curve_context(E) for E in A.factors],
            "chains": [_chain_context(c) for c in chains],
            "delta_p": delta,
            "delta_p_dual": delta_dual,
        },
    )


def verify_parallelogram(E: EllipticCurve, G: SubgroupSpec, H: SubgroupSpec,
                         torsion_bound: int | None = None) -> Verdict:
    """h(j(E/(G+H))) + h(j(E/(G cap H))) <= h(j(E/G)) + h(j(E/H)),
    with equality whenever order(G) or order(H) is coprime to p."""
    from .isogenies import subgroup_intersection, subgroup_sum

    if G.curve != E or H.curve != E:
        raise CurveMismatch("subgroups must live on the given curve")
    p = E.p
    g_plus_h = subgroup_sum(G, H)
    g_cap_h = subgroup_intersection(G, H)
    quotients = {}
    for name, spec in (("G+H", g_plus_h), ("GcapH", g_cap_h), ("G", G), ("H", H)):
        codomain, _ = quotient_by_subgroup(E, spec, torsion_bound)
        quotients[name] = h_mod(codomain)
    lhs = Fraction(quotients["G+H"] + quotients["GcapH"])
    rhs = Fraction(quotients["G"] + quotients["H"])
    coprime_case = subgroup_order(G) % p != 0 or subgroup_order(H) % p != 0
    holds = lhs <= rhs and (not coprime_case or lhs == rhs)
    return Verdict(
        statement="parallelogram",
        lhs=lhs,
        rhs=rhs,
        holds=holds,
        is_equality=lhs == rhs,
        context={
            "curve": _curve_context(E),
            "G": G.describe(),
            "H": H.describe(),
            "orders": {
                "G": subgroup_order(G),
                "H": subgroup_order(H),
                "G+H": subgroup_order(g_plus_h),
                "GcapH": subgroup_order(g_cap_h),
            },
            "equality_required": coprime_case,
            "h_mod": quotients,
        },
    )


def verify_subvariety(A: ProductAV, indices) -> Verdict:
    """h_diff(B) + h_diff(A/B) <= h_diff(A) for a split sub-product B;
    additivity makes this an exact equality."""
    indices = sorted(set(indices))
    if any(i < 0 or i >= A.dim for i in indices):
        raise ValueError("factor index out of range")
    chosen = [A.factors[i] for i in indices]
    complement = [E for i, E in enumerate(A.factors) if i not in indices]
    h_b = sum((h_diff(E) for E in chosen), Fraction(0))
    h_quot = sum((h_diff(E) for E in complement), Fraction(0))
    lhs = h_b + h_quot
    rhs = product_height(A)
    return Verdict(
        statement="subvariety",
        lhs=lhs,
        rhs=rhs,
        holds=lhs <= rhs,
        is_equality=lhs == rhs,
        context={
            "factors": [_curve_context(E) for E in A.factors],
            "sub_indices": indices,
        },
    )
