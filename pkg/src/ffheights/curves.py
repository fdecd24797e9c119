"""Weierstrass models over F_p(t): invariants, reduction types, and heights.

Residue characteristic is at least 5 everywhere, so reduction types come from
the c4/discriminant table and minimality at a place is a pure valuation
computation: the model is minimal once v(Delta) < 12 or v(c4) < 4, and the
defect is cleared by the diagonal substitution x -> u^2 x, y -> u^3 y with
u a power of the uniformizer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import SingularModel, UnsupportedCharacteristic
from .funcfield import (
    Divisor,
    Place,
    RatFunc,
    divisor_of,
    valuation,
    weil_height,
)

_INFINITE_VAL = None  # valuation of 0; compares as "larger than everything"


class EllipticCurve:
    """A long Weierstrass model over K = F_p(t) with nonzero discriminant."""

    __slots__ = ("p", "a1", "a2", "a3", "a4", "a6",
                 "b2", "b4", "b6", "b8", "c4", "c6", "disc", "j",
                 "_height_report")

    def __init__(self, p: int, a1: RatFunc, a2: RatFunc, a3: RatFunc,
                 a4: RatFunc, a6: RatFunc):
        if p < 5:
            raise UnsupportedCharacteristic(f"characteristic {p} < 5")
        self.p = p
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        self.b2 = a1 * a1 + 4 * a2
        self.b4 = 2 * a4 + a1 * a3
        self.b6 = a3 * a3 + 4 * a6
        self.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        self.c4 = self.b2 * self.b2 - 24 * self.b4
        self.c6 = -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6
        self.disc = (
            -self.b2 * self.b2 * self.b8
            - 8 * self.b4 ** 3
            - 27 * self.b6 * self.b6
            + 9 * self.b2 * self.b4 * self.b6
        )
        if self.disc.is_zero():
            raise SingularModel("discriminant is zero")
        self.j = self.c4 ** 3 / self.disc
        self._height_report = None

    @classmethod
    def _map_coefficients(cls, E: "EllipticCurve", fn) -> "EllipticCurve":
        """Apply a field homomorphism coefficientwise, reusing cached invariants.

        All derived invariants are integer-coefficient polynomials in the a_i,
        so they commute with any homomorphism of K; recomputing them on large
        twisted coefficients would be needlessly quadratic.
        """
        out = cls.__new__(cls)
        out.p = E.p
        out.a1, out.a2, out.a3, out.a4, out.a6 = (fn(a) for a in E.a_invariants)
        out.b2, out.b4, out.b6, out.b8 = (fn(b) for b in (E.b2, E.b4, E.b6, E.b8))
        out.c4, out.c6, out.disc, out.j = (fn(c) for c in (E.c4, E.c6, E.disc, E.j))
        out._height_report = None
        return out

    @property
    def a_invariants(self) -> tuple[RatFunc, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def is_isotrivial(self) -> bool:
        """True when j is constant (the only supersingular-capable case here)."""
        return self.j.is_constant()

    def __eq__(self, other):
        return (
            isinstance(other, EllipticCurve)
            and self.p == other.p
            and self.a_invariants == other.a_invariants
        )

    def __hash__(self):
        return hash((self.p, self.a_invariants))

    def __str__(self):
        a1, a2, a3, a4, a6 = (str(a) for a in self.a_invariants)
        return f"y^2 + ({a1})xy + ({a3})y = x^3 + ({a2})x^2 + ({a4})x + ({a6}) over F_{self.p}(t)"

    def __repr__(self):
        return f"EllipticCurve({self})"


def curve_from_a_invariants(p: int, a1: RatFunc, a2: RatFunc, a3: RatFunc,
                            a4: RatFunc, a6: RatFunc) -> EllipticCurve:
    """Build the curve and all cached b/c invariants; SingularModel if Delta = 0."""
    return EllipticCurve(p, a1, a2, a3, a4, a6)


def transform(E: EllipticCurve, u: RatFunc, r: RatFunc, s: RatFunc,
              w: RatFunc) -> EllipticCurve:
    """Change of Weierstrass coordinates x = u^2 x' + r, y = u^3 y' + s u^2 x' + w.

    Preserves j; scales the discriminant by u^-12.
    """
    if u.is_zero():
        raise ZeroDivisionError("u must be nonzero")
    a1, a2, a3, a4, a6 = E.a_invariants
    u2 = u * u
    u3 = u2 * u
    na1 = (a1 + 2 * s) / u
    na2 = (a2 - s * a1 + 3 * r - s * s) / u2
    na3 = (a3 + r * a1 + 2 * w) / u3
    na4 = (a4 - s * a3 + 2 * r * a2 - (w + r * s) * a1 + 3 * r * r - 2 * s * w) / (u2 * u2)
    na6 = (a6 + r * a4 + r * r * a2 + r ** 3 - w * a3 - w * w - r * a1 * w) / (u3 * u3)
    return EllipticCurve(E.p, na1, na2, na3, na4, na6)


# -- Tate's algorithm (p >= 5 shortcut) -------------------------------------


@dataclass(frozen=True)
class KodairaType:
    """Reduction type tag: kind in {'I', 'II', 'III', 'IV', 'I*', 'II*', 'III*', 'IV*'},
    with n the fiber index for the I / I* series (0 otherwise)."""

    kind: str
    n: int = 0

    @property
    def symbol(self) -> str:
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}*"
        return self.kind

    @property
    def is_good(self) -> bool:
        return self.kind == "I" and self.n == 0

    @property
    def is_multiplicative(self) -> bool:
        return self.kind == "I" and self.n > 0

    @property
    def is_semistable(self) -> bool:
        return self.kind == "I"

    def __str__(self):
        return self.symbol


@dataclass(frozen=True)
class ReductionData:
    place: Place
    kodaira: KodairaType
    v_delta_min: int
    is_semistable_here: bool


def _val_or_inf(f: RatFunc, v: Place):
    return _INFINITE_VAL if f.is_zero() else valuation(f, v)


def _floor_div(val, k: int):
    return _INFINITE_VAL if val is _INFINITE_VAL else val // k


def _min_val(a, b):
    if a is _INFINITE_VAL:
        return b
    if b is _INFINITE_VAL:
        return a
    return min(a, b)


def _classify(v_delta: int, v_c4: int) -> KodairaType:
    """Kodaira type from minimal valuations of Delta and c4 (v_c4 huge if c4 = 0)."""
    if v_delta == 0:
        return KodairaType("I", 0)
    if v_c4 == 0:
        return KodairaType("I", v_delta)
    if v_delta == 2:
        return KodairaType("II")
    if v_delta == 3:
        return KodairaType("III")
    if v_delta == 4:
        return KodairaType("IV")
    if v_delta == 6:
        return KodairaType("I*", 0)
    if v_delta >= 7 and v_c4 == 2:
        return KodairaType("I*", v_delta - 6)
    if v_delta == 8:
        return KodairaType("IV*")
    if v_delta == 9:
        return KodairaType("III*")
    if v_delta == 10:
        return KodairaType("II*")
    raise AssertionError(
        f"no Kodaira type for minimal valuations v(Delta)={v_delta}, v(c4)={v_c4}"
    )


def _reduction_from_valuations(place: Place, v_c4, v_c6, v_delta: int) -> ReductionData:
    # minimality defect: scale by u = pi^m (m may be negative to restore integrality)
    m = _min_val(_floor_div(v_c4, 4), _floor_div(v_c6, 6))
    assert m is not _INFINITE_VAL  # c4 = c6 = 0 would force Delta = 0
    v_delta_min = v_delta - 12 * m
    v_c4_min = 10**9 if v_c4 is _INFINITE_VAL else v_c4 - 4 * m
    assert 0 <= v_delta_min and (v_delta_min < 12 or v_c4_min < 4)
    kod = _classify(v_delta_min, v_c4_min)
    return ReductionData(
        place=place,
        kodaira=kod,
        v_delta_min=v_delta_min,
        is_semistable_here=kod.is_semistable,
    )


def tate_at(E: EllipticCurve, v: Place) -> ReductionData:
    """Kodaira type and minimal-discriminant valuation of E at the place v."""
    if E.p < 5:
        raise UnsupportedCharacteristic(f"characteristic {E.p} < 5")
    return _reduction_from_valuations(
        v, _val_or_inf(E.c4, v), _val_or_inf(E.c6, v), valuation(E.disc, v)
    )


def reduction_summary(E: EllipticCurve) -> list[ReductionData]:
    """Reduction data at every place where the fiber can be bad (good fibers dropped).

    One divisor computation per invariant replaces per-place division; a place
    absent from a divisor's support has valuation 0 there.
    """
    if E.p < 5:
        raise UnsupportedCharacteristic(f"characteristic {E.p} < 5")
    div_delta = divisor_of(E.disc)
    div_c4 = None if E.c4.is_zero() else divisor_of(E.c4)
    div_c6 = None if E.c6.is_zero() else divisor_of(E.c6)
    places: dict[Place, None] = {Place.infinity(E.p): None}
    for div in (div_delta, div_c4, div_c6):
        if div is not None:
            for place in div.support():
                places[place] = None
    out = []
    for place in sorted(places, key=Place.sort_key):
        v_c4 = _INFINITE_VAL if div_c4 is None else div_c4.multiplicity(place)
        v_c6 = _INFINITE_VAL if div_c6 is None else div_c6.multiplicity(place)
        data = _reduction_from_valuations(place, v_c4, v_c6,
                                          div_delta.multiplicity(place))
        if not data.kodaira.is_good:
            out.append(data)
    return out


def minimal_discriminant_divisor(E: EllipticCurve) -> Divisor:
    """The divisor of the minimal discriminant; its degree is divisible by 12."""
    terms = [(d.place, d.v_delta_min) for d in reduction_summary(E)]
    div = Divisor(E.p, terms)
    assert div.degree % 12 == 0, f"deg Delta_min = {div.degree} not divisible by 12"
    return div


@dataclass(frozen=True)
class HeightReport:
    h_diff: Fraction
    h_mod: int
    delta_min: Divisor
    semistable: bool
    isotrivial: bool
    reduction: tuple[ReductionData, ...]

    def to_json_dict(self) -> dict:
        return {
            "h_diff": str(self.h_diff),
            "h_mod": self.h_mod,
            "delta_min": [[str(pl), m] for pl, m in self.delta_min.items()],
            "semistable": self.semistable,
            "isotrivial": self.isotrivial,
            "reduction": [
                {
                    "place": str(d.place),
                    "kodaira": d.kodaira.symbol,
                    "v_delta_min": d.v_delta_min,
                    "semistable": d.is_semistable_here,
                }
                for d in self.reduction
            ],
        }


def height_report(E: EllipticCurve) -> HeightReport:
    """Differential and modular heights with the per-place reduction table."""
    if E._height_report is not None:
        return E._height_report
    reduction = tuple(reduction_summary(E))
    delta_min = Divisor(E.p, [(d.place, d.v_delta_min) for d in reduction])
    assert delta_min.degree % 12 == 0
    h_diff = Fraction(delta_min.degree, 12)
    assert h_diff.denominator == 1 and h_diff >= 0
    h_mod = weil_height(E.j)
    isotrivial = E.is_isotrivial()
    assert (h_mod == 0) == isotrivial
    report = HeightReport(
        h_diff=h_diff,
        h_mod=h_mod,
        delta_min=delta_min,
        semistable=all(d.is_semistable_here for d in reduction),
        isotrivial=isotrivial,
        reduction=reduction,
    )
    E._height_report = report
    return report


def h_diff(E: EllipticCurve) -> Fraction:
    return height_report(E).h_diff


def h_mod(E: EllipticCurve) -> int:
    return height_report(E).h_mod


def is_semistable(E: EllipticCurve) -> bool:
    return height_report(E).semistable
