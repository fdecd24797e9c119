"""Points, division polynomials, Velu quotients, Frobenius twists, and
isogeny chains with exact (in)separability-degree bookkeeping.

Kernels are specified by K-rational generator points, so every Velu kernel is
etale; the only purely inseparable steps are Frobenius twists.  Chain degrees,
inseparability degrees of the chain and of its dual, and the corresponding
Frobenius heights are tracked exactly as integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curves import EllipticCurve, transform
from .errors import (
    BadOrder,
    CurveMismatch,
    IncomposableSteps,
    IsotrivialSource,
    NotAPthPower,
    NotFinitePoint,
    NotTorsionWithinBound,
)
from .funcfield import RatFunc


def default_torsion_bound(p: int) -> int:
    """Order-search cutoff; covers every rational torsion order at desk scale."""
    return 2 * p * p + 20


# -- points and the group law ------------------------------------------------


class CurvePoint:
    """A K-rational point of an elliptic curve (affine pair or infinity)."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve: EllipticCurve, x: RatFunc | None = None,
                 y: RatFunc | None = None):
        self.curve = curve
        self.x = x
        self.y = y
        if (x is None) != (y is None):
            raise ValueError("affine points need both coordinates")
        if x is not None:
            a1, a2, a3, a4, a6 = curve.a_invariants
            lhs = y * y + a1 * x * y + a3 * y
            rhs = x ** 3 + a2 * x * x + a4 * x + a6
            if lhs != rhs:
                raise ValueError(f"({x}, {y}) does not lie on {curve}")

    @staticmethod
    def infinity(curve: EllipticCurve) -> "CurvePoint":
        return CurvePoint(curve)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __eq__(self, other):
        return (
            isinstance(other, CurvePoint)
            and self.curve == other.curve
            and self.x == other.x
            and self.y == other.y
        )

    def __hash__(self):
        return hash((self.x, self.y))

    def __neg__(self):
        if self.is_infinity:
            return self
        a1, _, a3, _, _ = self.curve.a_invariants
        return CurvePoint(self.curve, self.x, -self.y - a1 * self.x - a3)

    def __add__(self, other: "CurvePoint") -> "CurvePoint":
        if self.curve != other.curve:
            raise CurveMismatch("points on different curves")
        if self.is_infinity:
            return other
        if other.is_infinity:
            return self
        a1, a2, a3, a4, a6 = self.curve.a_invariants
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2 and y2 == -y1 - a1 * x1 - a3:
            return CurvePoint.infinity(self.curve)
        if x1 == x2:
            num = 3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1
            den = 2 * y1 + a1 * x1 + a3
            lam = num / den
            nu = (-(x1 ** 3) + a4 * x1 + 2 * a6 - a3 * y1) / den
        else:
            lam = (y2 - y1) / (x2 - x1)
            nu = (y1 * x2 - y2 * x1) / (x2 - x1)
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return CurvePoint(self.curve, x3, y3)

    def __sub__(self, other: "CurvePoint") -> "CurvePoint":
        return self + (-other)

    def __mul__(self, n: int) -> "CurvePoint":
        if n < 0:
            return (-self) * (-n)
        acc = CurvePoint.infinity(self.curve)
        base = self
        while n:
            if n & 1:
                acc = acc + base
            base = base + base
            n >>= 1
        return acc

    __rmul__ = __mul__

    def __str__(self):
        return "O" if self.is_infinity else f"({self.x}, {self.y})"

    def __repr__(self):
        return f"CurvePoint({self})"


def point_order(P: CurvePoint, bound: int | None = None) -> int:
    """Exact order of P, by repeated addition; NotTorsionWithinBound past the bound."""
    if bound is None:
        bound = default_torsion_bound(P.curve.p)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if P.is_infinity:
        return 1
    acc = P
    order = 1
    while not acc.is_infinity:
        acc = acc + P
        order += 1
        if order > bound:
            raise NotTorsionWithinBound(f"order of {P} exceeds bound {bound}")
    return order


# -- division polynomials ----------------------------------------------------


class KPoly:
    """A dense polynomial in x with coefficients in K = F_p(t)."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(p: int) -> "KPoly":
        return KPoly(p, ())

    @staticmethod
    def const(value: RatFunc) -> "KPoly":
        return KPoly(value.p, (value,))

    @staticmethod
    def x(p: int) -> "KPoly":
        return KPoly(p, (RatFunc.zero(p), RatFunc.one(p)))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, KPoly) and self.p == other.p and self.coeffs == other.coeffs

    def _coerce(self, other):
        if isinstance(other, KPoly):
            return other
        if isinstance(other, RatFunc):
            return KPoly.const(other)
        if isinstance(other, int):
            return KPoly.const(RatFunc.const(self.p, other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return KPoly(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        return KPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return KPoly.zero(self.p)
        zero = RatFunc.zero(self.p)
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if not ai.is_zero():
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return KPoly(self.p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = KPoly.const(RatFunc.one(self.p))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, value: RatFunc) -> RatFunc:
        acc = RatFunc.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            monomial = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if i == 0:
                parts.append(f"{c}")
            elif c == RatFunc.one(self.p):
                parts.append(monomial)
            else:
                parts.append(f"({c})*{monomial}")
        return " + ".join(parts)


def division_polynomial(E: EllipticCurve, n: int) -> KPoly:
    """The univariate polynomial whose roots are x-coordinates of nonzero n-torsion.

    For odd n this is psi_n; for even n it is psi_n * psi_2, both polynomials
    in x alone (psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6 absorbs the y's).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    p = E.p
    one = RatFunc.one(p)
    zero = RatFunc.zero(p)
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    F = KPoly(p, (b6, 2 * b4, b2, RatFunc.const(p, 4)))  # psi_2^2
    # P[k] is psi_k for odd k, psi_k / psi_2 for even k; all in K[x]
    P: list[KPoly] = [
        KPoly.zero(p),
        KPoly.const(one),
        KPoly.const(one),
        KPoly(p, (b8, 3 * b6, 3 * b4, b2, RatFunc.const(p, 3))),
        KPoly(p, (
            b4 * b8 - b6 * b6,
            b2 * b8 - b4 * b6,
            10 * b8,
            10 * b6,
            5 * b4,
            b2,
            RatFunc.const(p, 2),
        )),
    ]
    F2 = F * F
    for k in range(5, n + 1):
        if k % 2:
            m = (k - 1) // 2
            if m % 2 == 0:
                P.append(F2 * P[m + 2] * P[m] ** 3 - P[m - 1] * P[m + 1] ** 3)
            else:
                P.append(P[m + 2] * P[m] ** 3 - F2 * P[m - 1] * P[m + 1] ** 3)
        else:
            m = k // 2
            P.append(P[m] * (P[m + 2] * P[m - 1] ** 2 - P[m - 2] * P[m + 1] ** 2))
    return P[n] if n % 2 else F * P[n]


# -- Velu quotients ----------------------------------------------------------


class VeluIsogeny:
    """The separable isogeny E -> E/<P> given by Velu's closed formulas."""

    def __init__(self, E: EllipticCurve, P: CurvePoint,
                 torsion_bound: int | None = None):
        if P.curve != E:
            raise CurveMismatch("kernel generator lies on a different curve")
        try:
            m = point_order(P, torsion_bound)
        except NotTorsionWithinBound as exc:
            raise NotFinitePoint(str(exc)) from exc
        if m % E.p == 0 and m != E.p:
            raise BadOrder(
                f"kernel order {m} divisible by p={E.p} is only allowed for m = p"
            )
        self.domain = E
        self.kernel_generator = P
        self.degree = m
        a1, a2, a3, a4, a6 = E.a_invariants
        kernel_xs = set()
        summands = []  # (xQ, yQ, gxQ, gyQ, vQ, uQ) over half the kernel
        Q = P
        for k in range(1, m):
            kernel_xs.add(Q.x)
            if 2 * k <= m:
                gx = 3 * Q.x * Q.x + 2 * a2 * Q.x + a4 - a1 * Q.y
                gy = -2 * Q.y - a1 * Q.x - a3
                u = gy * gy
                v = gx if 2 * k == m else 2 * gx - a1 * gy
                summands.append((Q.x, Q.y, gx, gy, v, u))
            Q = Q + P
        self._kernel_xs = kernel_xs
        self._summands = summands
        zero = RatFunc.zero(E.p)
        v_sum = sum((s[4] for s in summands), zero)
        w_sum = sum((s[5] + s[0] * s[4] for s in summands), zero)
        self.codomain = EllipticCurve(
            E.p, a1, a2, a3, a4 - 5 * v_sum, a6 - E.b2 * v_sum - 7 * w_sum
        )

    def __call__(self, point: CurvePoint) -> CurvePoint:
        if point.curve != self.domain:
            raise CurveMismatch("point lies on a different curve")
        if point.is_infinity or point.x in self._kernel_xs:
            return CurvePoint.infinity(self.codomain)
        a1, _, a3, _, _ = self.domain.a_invariants
        x, y = point.x, point.y
        X, Y = x, y
        for xQ, yQ, gx, gy, v, u in self._summands:
            d = x - xQ
            inv = d.inverse()
            inv2 = inv * inv
            X = X + v * inv + u * inv2
            Y = Y - (
                u * (2 * y + a1 * x + a3) * inv2 * inv
                + (v * (a1 * d + y - yQ) + a1 * u - gx * gy) * inv2
            )
        return CurvePoint(self.codomain, X, Y)


def velu_quotient(E: EllipticCurve, P: CurvePoint,
                  torsion_bound: int | None = None) -> tuple[EllipticCurve, int]:
    """Quotient curve E/<P> and the degree of the quotient isogeny."""
    iso = VeluIsogeny(E, P, torsion_bound)
    return iso.codomain, iso.degree


# -- Frobenius twists --------------------------------------------------------


def frobenius_twist(E: EllipticCurve) -> EllipticCurve:
    """E^(p): every a-invariant raised to the p-th power."""
    return EllipticCurve._map_coefficients(E, lambda a: a.frobenius())


def inverse_frobenius_twist(E: EllipticCurve) -> EllipticCurve:
    """E^(1/p), defined when every a-invariant is a p-th power in F_p(t)."""
    try:
        return EllipticCurve._map_coefficients(E, lambda a: a.pth_root())
    except NotAPthPower as exc:
        raise NotAPthPower(f"curve is not defined over K^p: {exc}") from exc


def frobenius_twist_point(P: CurvePoint) -> CurvePoint:
    """Image of P under the relative Frobenius E -> E^(p)."""
    target = frobenius_twist(P.curve)
    if P.is_infinity:
        return CurvePoint.infinity(target)
    return CurvePoint(target, P.x.frobenius(), P.y.frobenius())


# -- isogeny steps and chains ------------------------------------------------


VELU = "velu"
FROBENIUS = "frobenius"
INVERSE_FROBENIUS = "inverse_frobenius"
ISOMORPHISM = "isomorphism"


@dataclass(frozen=True)
class IsogenyStep:
    kind: str
    source: EllipticCurve
    target: EllipticCurve
    degree: int
    kernel_point: CurvePoint | None = None
    iso_data: tuple[RatFunc, RatFunc, RatFunc, RatFunc] | None = None

    def describe(self) -> dict:
        out = {"kind": self.kind, "degree": self.degree}
        if self.kernel_point is not None:
            out["kernel"] = str(self.kernel_point)
        if self.iso_data is not None:
            out["ursw"] = [str(v) for v in self.iso_data]
        return out


def velu_step(E: EllipticCurve, P: CurvePoint,
              torsion_bound: int | None = None) -> IsogenyStep:
    codomain, degree = velu_quotient(E, P, torsion_bound)
    return IsogenyStep(VELU, E, codomain, degree, kernel_point=P)


def frobenius_step(E: EllipticCurve) -> IsogenyStep:
    return IsogenyStep(FROBENIUS, E, frobenius_twist(E), E.p)


def inverse_frobenius_step(E: EllipticCurve) -> IsogenyStep:
    return IsogenyStep(INVERSE_FROBENIUS, E, inverse_frobenius_twist(E), E.p)


def isomorphism_step(E: EllipticCurve, u: RatFunc, r: RatFunc, s: RatFunc,
                     w: RatFunc) -> IsogenyStep:
    return IsogenyStep(ISOMORPHISM, E, transform(E, u, r, s, w), 1,
                       iso_data=(u, r, s, w))


def push_point(step: IsogenyStep, P: CurvePoint) -> CurvePoint:
    """Image of P under the isogeny of a single step (not defined for Verschiebung)."""
    if P.curve != step.source:
        raise CurveMismatch("point not on the step's source curve")
    if step.kind == FROBENIUS:
        return frobenius_twist_point(P)
    if step.kind == VELU:
        return VeluIsogeny(step.source, step.kernel_point)(P)
    if step.kind == ISOMORPHISM:
        if P.is_infinity:
            return CurvePoint.infinity(step.target)
        u, r, s, w = step.iso_data
        x = (P.x - r) / (u * u)
        y = (P.y - s * (P.x - r) - w) / (u ** 3)
        return CurvePoint(step.target, x, y)
    raise NotImplementedError(
        "rational maps of the Verschiebung are out of scope; "
        "only its degree bookkeeping is tracked"
    )


def _is_p_step(step: IsogenyStep, p: int) -> bool:
    return step.kind in (FROBENIUS, INVERSE_FROBENIUS) or (
        step.kind == VELU and step.degree == p
    )


def _log_p(value: int, p: int) -> int:
    e = 0
    while value % p == 0:
        value //= p
        e += 1
    assert value == 1
    return e


@dataclass(frozen=True)
class IsogenyChain:
    """A composition of elementary steps with exact degree bookkeeping.

    Invariants (non-isotrivial, hence ordinary, source): deg_ins = p^delta_p
    and deg_ins_dual = p^delta_p_dual; deg_ins tracks Frobenius steps, while
    deg_ins_dual tracks Verschiebung-type steps (inverse-Frobenius twists and
    etale p-quotients, whose duals are purely inseparable).
    """

    source: EllipticCurve
    target: EllipticCurve
    steps: tuple[IsogenyStep, ...]
    degree: int
    deg_ins: int
    deg_ins_dual: int
    delta_p: int
    delta_p_dual: int

    @property
    def inseparability_ratio(self) -> Fraction:
        return Fraction(self.deg_ins, self.deg_ins_dual)

    def describe(self) -> list[dict]:
        return [step.describe() for step in self.steps]


def chain_bookkeeping(steps, source: EllipticCurve | None = None) -> IsogenyChain:
    """Assemble composable steps into a chain with full degree bookkeeping."""
    steps = tuple(steps)
    if not steps and source is None:
        raise ValueError("an empty chain needs an explicit source curve")
    if steps:
        if source is None:
            source = steps[0].source
        elif steps[0].source != source:
            raise IncomposableSteps("first step does not start at the given source")
    p = source.p
    has_p_step = any(_is_p_step(step, p) for step in steps)
    if has_p_step and source.is_isotrivial():
        raise IsotrivialSource(
            "p-power bookkeeping needs an ordinary source; isotrivial curves "
            "are not certified ordinary"
        )
    degree = 1
    deg_ins = 1
    deg_ins_dual = 1
    cursor = source
    for i, step in enumerate(steps):
        if step.source != cursor:
            raise IncomposableSteps(f"step {i} does not start at the previous target")
        degree *= step.degree
        if step.kind == FROBENIUS:
            deg_ins *= p
        if step.kind == INVERSE_FROBENIUS or (step.kind == VELU and step.degree == p):
            deg_ins_dual *= p
        cursor = step.target
    chain = IsogenyChain(
        source=source,
        target=cursor,
        steps=steps,
        degree=degree,
        deg_ins=deg_ins,
        deg_ins_dual=deg_ins_dual,
        delta_p=_log_p(deg_ins, p),
        delta_p_dual=_log_p(deg_ins_dual, p),
    )
    assert p ** chain.delta_p == chain.deg_ins
    assert p ** chain.delta_p_dual == chain.deg_ins_dual
    return chain


def identity_chain(E: EllipticCurve) -> IsogenyChain:
    return chain_bookkeeping((), source=E)


# -- subgroup schemes --------------------------------------------------------


@dataclass(frozen=True)
class SubgroupSpec:
    """ker(Fr^e) + the etale group generated by K-rational points.

    Etale generators have order coprime to p, or exactly p (the etale p-part
    of an ordinary curve has corank 1, so a single order-p generator suffices).
    """

    curve: EllipticCurve
    frobenius_exponent: int
    generators: tuple[CurvePoint, ...] = ()
    torsion_bound: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.frobenius_exponent < 0:
            raise ValueError("frobenius_exponent must be >= 0")
        for P in self.generators:
            if P.curve != self.curve:
                raise CurveMismatch("generator lies on a different curve")
            order = point_order(P, self.torsion_bound)
            if order % self.curve.p == 0 and order != self.curve.p:
                raise BadOrder(
                    f"generator order {order} must be coprime to p or equal to p"
                )

    def etale_points(self) -> frozenset:
        """All points of the generated etale group, by explicit enumeration."""
        points = {CurvePoint.infinity(self.curve)}
        for g in self.generators:
            order = point_order(g, self.torsion_bound)
            multiples = []
            acc = CurvePoint.infinity(self.curve)
            for _ in range(order):
                multiples.append(acc)
                acc = acc + g
            points = {s + m for s in points for m in multiples}
        return frozenset(points)

    def describe(self) -> dict:
        return {
            "frobenius_exponent": self.frobenius_exponent,
            "generators": [str(P) for P in self.generators],
        }


def trivial_subgroup(E: EllipticCurve) -> SubgroupSpec:
    return SubgroupSpec(E, 0)


def subgroup_order(G: SubgroupSpec) -> int:
    return G.curve.p ** G.frobenius_exponent * len(G.etale_points())


def _etale_generators_of(curve: EllipticCurve, points: frozenset,
                         bound: int | None) -> tuple[CurvePoint, ...]:
    """A small generating set for an enumerated finite group of points."""
    remaining = set(points)
    generators: list[CurvePoint] = []
    generated = {CurvePoint.infinity(curve)}
    while generated != set(points):
        candidate = max(
            (P for P in remaining if P not in generated),
            key=lambda P: point_order(P, bound),
        )
        generators.append(candidate)
        order = point_order(candidate, bound)
        multiples = []
        acc = CurvePoint.infinity(curve)
        for _ in range(order):
            multiples.append(acc)
            acc = acc + candidate
        generated = {s + m for s in generated for m in multiples}
    return tuple(generators)


def subgroup_sum(G: SubgroupSpec, H: SubgroupSpec) -> SubgroupSpec:
    """G + H: Frobenius exponents combine by max, etale parts by union of generators."""
    if G.curve != H.curve:
        raise CurveMismatch("subgroups of different curves")
    return SubgroupSpec(
        G.curve,
        max(G.frobenius_exponent, H.frobenius_exponent),
        G.generators + H.generators,
        torsion_bound=G.torsion_bound,
    )


def subgroup_intersection(G: SubgroupSpec, H: SubgroupSpec) -> SubgroupSpec:
    """G intersect H: exponents combine by min, etale parts by enumeration."""
    if G.curve != H.curve:
        raise CurveMismatch("subgroups of different curves")
    common = G.etale_points() & H.etale_points()
    gens = _etale_generators_of(G.curve, frozenset(common), G.torsion_bound)
    return SubgroupSpec(
        G.curve,
        min(G.frobenius_exponent, H.frobenius_exponent),
        gens,
        torsion_bound=G.torsion_bound,
    )


def quotient_by_subgroup(E: EllipticCurve, G: SubgroupSpec,
                         torsion_bound: int | None = None
                         ) -> tuple[EllipticCurve, IsogenyChain]:
    """E/G: Frobenius steps for the connected part first, then Velu steps."""
    if G.curve != E:
        raise CurveMismatch("subgroup lives on a different curve")
    steps: list[IsogenyStep] = []
    cursor = E
    points = [g for g in G.generators]
    for _ in range(G.frobenius_exponent):
        step = frobenius_step(cursor)
        steps.append(step)
        points = [frobenius_twist_point(P) for P in points]
        cursor = step.target
    for i, P in enumerate(points):
        if P.is_infinity:
            continue
        iso = VeluIsogeny(cursor, P, torsion_bound)
        steps.append(IsogenyStep(VELU, cursor, iso.codomain, iso.degree,
                                 kernel_point=P))
        points[i + 1:] = [iso(Q) for Q in points[i + 1:]]
        cursor = iso.codomain
    return cursor, chain_bookkeeping(steps, source=E)
