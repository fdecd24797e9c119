"""Seeded random instances: torsion families and semi-stable curve search.

Curves with a rational ell-torsion point come from the classical genus-zero
parametrizations (Legendre-style for ell = 2, the Tate normal forms for
ell in {3, 4, 5, 6, 7}) with a random rational-function parameter.
Semi-stability is not guaranteed by the families, so it is established by
running the reduction machinery and rejecting, which keeps the generator
honest about what it returns.
"""

from __future__ import annotations

import random

from .curves import EllipticCurve, curve_from_a_invariants, is_semistable
from .errors import HeightsError, SingularModel
from .funcfield import Poly, RatFunc
from .isogenies import CurvePoint, point_order

TORSION_FAMILIES = (2, 3, 4, 5, 6, 7)


def random_poly(rng: random.Random, p: int, degree: int) -> Poly:
    """A uniformly random polynomial of exact degree `degree`."""
    coeffs = [rng.randrange(p) for _ in range(degree)]
    coeffs.append(rng.randrange(1, p))
    return Poly(p, coeffs)


def random_parameter(rng: random.Random, p: int, max_degree: int = 3) -> RatFunc:
    """A nonconstant rational function of small height.

    Mixes polynomial parameters with ratios whose numerator and denominator
    degrees agree or differ by one, so the family's fiber at infinity ranges
    over every reduction behavior and rejection sampling has heads to find.
    """
    degree = rng.randrange(1, max_degree + 1)
    num = random_poly(rng, p, degree)
    shape = rng.random()
    if shape < 0.45:
        f = RatFunc(num)
    elif shape < 0.75:
        f = RatFunc(num, random_poly(rng, p, degree))
    else:
        f = RatFunc(num, random_poly(rng, p, max(1, degree - 1)))
    return f if not f.is_constant() else RatFunc(num)


def torsion_family_curve(p: int, ell: int, parameter: RatFunc
                         ) -> tuple[EllipticCurve, CurvePoint]:
    """A curve over F_p(t) with the point (0, 0) of exact order ell.

    SingularModel propagates for parameter values that degenerate the family.
    """
    z = RatFunc.zero(p)
    one = RatFunc.one(p)
    lam = parameter
    if ell == 2:
        # y^2 = x (x - 1) (x - lam)
        E = curve_from_a_invariants(p, z, -(one + lam), z, lam, z)
    elif ell == 3:
        # y^2 + xy + lam y = x^3
        E = curve_from_a_invariants(p, one, z, lam, z, z)
    elif ell == 4:
        b = lam
        E = curve_from_a_invariants(p, one, -b, -b, z, z)
    elif ell == 5:
        b = lam
        E = curve_from_a_invariants(p, one - lam, -b, -b, z, z)
    elif ell == 6:
        b = lam + lam * lam
        E = curve_from_a_invariants(p, one - lam, -b, -b, z, z)
    elif ell == 7:
        c = lam * lam - lam
        b = c * lam
        E = curve_from_a_invariants(p, one - c, -b, -b, z, z)
    else:
        raise ValueError(f"no torsion family for ell = {ell}")
    P = CurvePoint(E, z, z)
    return E, P


def sample_torsion_curve(rng: random.Random, p: int, ell: int,
                         require_semistable: bool = False,
                         require_nonisotrivial: bool = True,
                         max_tries: int = 400) -> tuple[EllipticCurve, CurvePoint]:
    """A seeded curve with a rational ell-torsion point, rejection-sampled."""
    for _ in range(max_tries):
        try:
            E, P = torsion_family_curve(p, ell, random_parameter(rng, p))
        except SingularModel:
            continue
        if point_order(P) != ell:
            continue
        if require_nonisotrivial and E.is_isotrivial():
            continue
        if require_semistable and not is_semistable(E):
            continue
        return E, P
    raise HeightsError(
        f"no suitable ell={ell} curve over F_{p}(t) found in {max_tries} tries"
    )


def sample_semistable_curve(rng: random.Random, p: int,
                            max_tries: int = 400) -> EllipticCurve:
    """A seeded semi-stable non-isotrivial curve (taken from the 2/3-torsion
    families, whose members are frequently semi-stable)."""
    ell = rng.choice((2, 3))
    E, _ = sample_torsion_curve(rng, p, ell, require_semistable=True,
                                max_tries=max_tries)
    return E
