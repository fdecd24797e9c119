"""Exact arithmetic in F_p, F_p[t] and K = F_p(t), with places and divisors of P^1.

Polynomials are coefficient tuples over a prime field F_p (p an odd prime >= 5),
lowest degree first, no trailing zeros; the zero polynomial is the empty tuple
and its degree is None (a sentinel, never an integer).  Rational functions are
kept in canonical form: monic denominator, coprime numerator/denominator, so
equality of values is equality of representations.

Places of the projective line over F_p are the monic irreducible polynomials
plus the place at infinity.  Divisors are finite formal sums of places with
integer multiplicities and deterministic iteration order.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import (
    FieldMismatch,
    NotAPthPower,
    ParseError,
    ZeroDenominator,
    ZeroFunction,
    ZeroPolynomial,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """The prime field F_p for an odd prime p >= 5; elements are ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not _is_prime(p) or p < 5:
            raise ValueError(f"modulus must be a prime >= 5, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and self.p == other.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in F_p")
        return pow(a, self.p - 2, self.p)


_FIELD_CACHE: dict[int, PrimeField] = {}


def prime_field(p: int) -> PrimeField:
    """Cached PrimeField constructor (validates p once per modulus)."""
    field = _FIELD_CACHE.get(p)
    if field is None:
        field = PrimeField(p)
        _FIELD_CACHE[p] = field
    return field


class Poly:
    """A polynomial in t over F_p, coefficients lowest-degree first."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs=()):
        prime_field(p)
        cs = [c % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, p: int, coeffs: list) -> "Poly":
        # fast path for arithmetic: coefficients already reduced mod p
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        out = object.__new__(cls)
        out.p = p
        out.coeffs = tuple(coeffs)
        return out

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(p: int) -> "Poly":
        return Poly(p, ())

    @staticmethod
    def one(p: int) -> "Poly":
        return Poly(p, (1,))

    @staticmethod
    def const(p: int, c: int) -> "Poly":
        return Poly(p, (c,))

    @staticmethod
    def t(p: int) -> "Poly":
        return Poly(p, (0, 1))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self):
        """Degree as an int, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coeff(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.p, other)
        return (
            isinstance(other, Poly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, int):
            return Poly.const(self.p, other)
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
            out[i] = (out[i] + c) % self.p
        return Poly._raw(self.p, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.p
        return Poly._raw(p, [-c % p for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.p)
        out = [0] * (len(a) + len(b) - 1)
        p = self.p
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        return Poly._raw(p, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = prime_field(p).inv(other.leading_coeff)
        quo = [0] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c:
                q = (c * inv_lead) % p
                quo[i - db] = q
                for j, bc in enumerate(other.coeffs):
                    rem[i - db + j] = (rem[i - db + j] - q * bc) % p
        return Poly._raw(p, quo), Poly._raw(p, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # -- structure ---------------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero():
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        if self.is_monic():
            return self
        inv = prime_field(self.p).inv(self.leading_coeff)
        p = self.p
        return Poly._raw(p, [c * inv % p for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def evaluate(self, a: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * a + c) % self.p
        return acc

    def pth_power(self) -> "Poly":
        """f(t)^p, computed as f(t^p) since a^p = a on F_p."""
        out = [0] * (self.p * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[self.p * i] = c
        return Poly._raw(self.p, out)

    def pth_root(self) -> "Poly":
        """The g with g^p = self, if it exists."""
        for i, c in enumerate(self.coeffs):
            if c and i % self.p:
                raise NotAPthPower(f"{self} is not a p-th power in F_{self.p}[t]")
        return Poly._raw(self.p, list(self.coeffs[:: self.p]))

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("t" if c == 1 else f"{c}*t")
            else:
                parts.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return "+".join(parts)

    def __repr__(self):
        return f"Poly(F_{self.p}: {self})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) is 0."""
    if a.p != b.p:
        raise FieldMismatch(f"F_{a.p} vs F_{b.p}")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def poly_powmod(base: Poly, n: int, modulus: Poly) -> Poly:
    result = Poly.one(base.p)
    base = base % modulus
    while n:
        if n & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        n >>= 1
    return result


# -- factorization over F_p ------------------------------------------------


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Distinct monic squarefree parts with multiplicities; product recovers f/lc."""
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    out: list[tuple[Poly, int]] = []
    _squarefree(f.monic(), 1, out)
    out.sort(key=lambda pair: (pair[1], pair[0].degree, pair[0].coeffs))
    return out


def _squarefree(f: Poly, mult: int, out: list) -> None:
    if f.is_one():
        return
    d = f.derivative()
    if d.is_zero():
        _squarefree(f.pth_root(), mult * f.p, out)
        return
    g = poly_gcd(f, d)
    w = f // g
    i = 1
    while not w.is_one():
        y = poly_gcd(w, g)
        z = w // y
        if not z.is_one():
            out.append((z, i * mult))
        w = y
        g = g // y
        i += 1
    if not g.is_one():
        _squarefree(g.pth_root(), mult * f.p, out)


def _roots(f: Poly) -> list[int]:
    return [a for a in range(f.p) if f.evaluate(a) == 0]


def _factor_squarefree(f: Poly) -> list[Poly]:
    """Monic irreducible factors of a monic squarefree f."""
    p = f.p
    factors: list[Poly] = []
    if f.degree and f.degree <= 3:
        # deterministic fallback: exhaust linear roots, remainder is irreducible
        for a in _roots(f):
            factors.append(Poly(p, (-a, 1)))
            f = f // Poly(p, (-a, 1))
        if f.degree and f.degree >= 1:
            factors.append(f)
        return factors
    # distinct-degree splitting
    t = Poly.t(p)
    h = t % f
    d = 0
    g = f
    while g.degree is not None and g.degree >= 2 * (d + 1):
        d += 1
        h = poly_powmod(h, p, g)
        same_degree = poly_gcd(g, h - t)
        if not same_degree.is_one():
            factors.extend(_equal_degree_split(same_degree, d))
            g = g // same_degree
            h = h % g
    if g.degree is not None and g.degree >= 1:
        factors.append(g)
    return factors


def _equal_degree_split(f: Poly, d: int) -> list[Poly]:
    """Cantor-Zassenhaus on a product of irreducibles of common degree d (p odd)."""
    p = f.p
    if f.degree == d:
        return [f]
    # rng seeded from the polynomial itself: deterministic across runs
    rng = random.Random((p, f.coeffs).__repr__())
    exponent = (p**d - 1) // 2
    while True:
        r = Poly(p, [rng.randrange(p) for _ in range(f.degree)])
        if r.is_constant():
            continue
        g = poly_gcd(f, r)
        if not g.is_one() and g != f:
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)
        s = poly_powmod(r, exponent, f) - Poly.one(p)
        g = poly_gcd(f, s)
        if not g.is_one() and g != f:
            return _equal_degree_split(g, d) + _equal_degree_split(f // g, d)


def factor_poly(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors of f with multiplicities, sorted deterministically.

    The leading coefficient of f times the product of the factors recovers f.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    factors: list[tuple[Poly, int]] = []
    for part, mult in squarefree_decomposition(f):
        for irr in _factor_squarefree(part):
            factors.append((irr, mult))
    factors.sort(key=lambda pair: (pair[0].degree, pair[0].coeffs))
    return factors


def is_irreducible(f: Poly) -> bool:
    if f.is_zero() or f.is_constant():
        return False
    facs = factor_poly(f)
    return len(facs) == 1 and facs[0][1] == 1


# -- rational functions ----------------------------------------------------


class RatFunc:
    """An element of K = F_p(t) in canonical form: coprime parts, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.one(num.p)
        if num.p != den.p:
            raise FieldMismatch(f"F_{num.p} vs F_{den.p}")
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        if num.is_zero():
            self.num = num
            self.den = Poly.one(num.p)
            return
        g = poly_gcd(num, den)
        if not g.is_one():
            num = num // g
            den = den // g
        if not den.is_monic():
            inv = prime_field(num.p).inv(den.leading_coeff)
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def zero(p: int) -> "RatFunc":
        return RatFunc(Poly.zero(p))

    @staticmethod
    def one(p: int) -> "RatFunc":
        return RatFunc(Poly.one(p))

    @staticmethod
    def const(p: int, c: int) -> "RatFunc":
        return RatFunc(Poly.const(p, c))

    @staticmethod
    def t(p: int) -> "RatFunc":
        return RatFunc(Poly.t(p))

    @property
    def p(self) -> int:
        return self.num.p

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, int):
            return RatFunc.const(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by the zero function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero function")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        # parts stay coprime under powers, so skip re-normalization
        out = RatFunc.__new__(RatFunc)
        out.num = self.num**n
        out.den = self.den**n
        if out.num.is_zero():
            out.den = Poly.one(self.p)
        return out

    def frobenius(self) -> "RatFunc":
        """self**p, via coefficient interleaving (linear time)."""
        out = RatFunc.__new__(RatFunc)
        out.num = self.num.pth_power()
        out.den = self.den.pth_power()
        return out

    def pth_root(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num = self.num.pth_root()
        out.den = self.den.pth_root()
        return out

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        num = str(self.num)
        if len(self.num.coeffs) - self.num.coeffs.count(0) > 1:
            num = f"({num})"
        den = str(self.den)
        if len(self.den.coeffs) - self.den.coeffs.count(0) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc(F_{self.p}(t): {self})"


def ratfunc_normalize(num: Poly, den: Poly) -> RatFunc:
    """Canonical reduced form of num/den (monic denominator, coprime parts)."""
    return RatFunc(num, den)


# -- places and divisors ---------------------------------------------------


class Place:
    """A closed point of P^1 over F_p: a monic irreducible polynomial, or infinity."""

    __slots__ = ("p", "poly")

    def __init__(self, p: int, poly: Poly | None = None):
        if poly is not None:
            if poly.p != p:
                raise FieldMismatch(f"F_{p} vs F_{poly.p}")
            if not poly.is_monic():
                raise ValueError("finite places are keyed by monic polynomials")
            if not is_irreducible(poly):
                raise ValueError(f"{poly} is not irreducible over F_{p}")
        self.p = p
        self.poly = poly

    @staticmethod
    def infinity(p: int) -> "Place":
        return Place(p, None)

    @staticmethod
    def finite(poly: Poly) -> "Place":
        return Place(poly.p, poly)

    @property
    def is_infinite(self) -> bool:
        return self.poly is None

    @property
    def degree(self) -> int:
        return 1 if self.poly is None else self.poly.degree

    def sort_key(self):
        if self.poly is None:
            return (1, 0, ())
        return (0, self.poly.degree, self.poly.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, Place)
            and self.p == other.p
            and self.poly == other.poly
        )

    def __hash__(self):
        return hash((self.p, self.poly))

    def __str__(self):
        return "inf" if self.poly is None else str(self.poly)

    def __repr__(self):
        return f"Place({self})"


class Divisor:
    """A finite formal sum of places with nonzero integer multiplicities."""

    __slots__ = ("p", "_terms")

    def __init__(self, p: int, terms=()):
        prime_field(p)
        acc: dict[Place, int] = {}
        for place, mult in dict(terms).items() if isinstance(terms, dict) else terms:
            if place.p != p:
                raise FieldMismatch(f"F_{p} vs F_{place.p}")
            acc[place] = acc.get(place, 0) + mult
        self.p = p
        self._terms = {pl: m for pl, m in acc.items() if m}

    def items(self) -> list[tuple[Place, int]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def multiplicity(self, place: Place) -> int:
        return self._terms.get(place, 0)

    def support(self) -> list[Place]:
        return [pl for pl, _ in self.items()]

    @property
    def degree(self) -> int:
        return sum(m * pl.degree for pl, m in self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "Divisor") -> "Divisor":
        if other.p != self.p:
            raise FieldMismatch(f"F_{self.p} vs F_{other.p}")
        return Divisor(self.p, list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "Divisor":
        return Divisor(self.p, [(pl, -m) for pl, m in self._terms.items()])

    def __sub__(self, other: "Divisor") -> "Divisor":
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, Divisor)
            and self.p == other.p
            and self._terms == other._terms
        )

    def __hash__(self):
        return hash((self.p, tuple(sorted(self._terms.items(), key=lambda kv: kv[0].sort_key()))))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for pl, m in self.items():
            coef = "" if m == 1 else ("-" if m == -1 else f"{m}*")
            parts.append(f"{coef}({pl})")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Divisor({self})"


def poly_valuation(f: Poly, pi: Poly) -> int:
    """Multiplicity of the irreducible pi in f (f nonzero)."""
    if f.is_zero():
        raise ZeroFunction("valuation of the zero polynomial is +infinity")
    v = 0
    while True:
        q, r = divmod(f, pi)
        if not r.is_zero():
            return v
        v += 1
        f = q


def valuation(f: RatFunc, v: Place) -> int:
    """Order of vanishing of f at the place v (f nonzero)."""
    if f.is_zero():
        raise ZeroFunction("valuation of the zero function is +infinity")
    if v.is_infinite:
        return f.den.degree - f.num.degree
    # canonical form: num and den are coprime, so at most one term contributes
    return poly_valuation(f.num, v.poly) - poly_valuation(f.den, v.poly)


def divisor_of(f: RatFunc) -> Divisor:
    """The principal divisor of f: multiplicity valuation(f, v) at every place."""
    if f.is_zero():
        raise ZeroFunction("divisor of the zero function is undefined")
    terms = []
    for poly, mult in factor_poly(f.num):
        terms.append((Place.finite(poly), mult))
    for poly, mult in factor_poly(f.den):
        terms.append((Place.finite(poly), -mult))
    at_inf = f.den.degree - f.num.degree
    if at_inf:
        terms.append((Place.infinity(f.p), at_inf))
    return Divisor(f.p, terms)


def weil_height(f: RatFunc) -> int:
    """Degree of f as a morphism P^1 -> P^1; 0 for constants (including 0)."""
    if f.is_zero():
        return 0
    return max(f.num.degree, f.den.degree)


# -- string grammar --------------------------------------------------------
#
# Rational functions are written as integer-coefficient polynomial
# expressions in t with + - * ^, and at most one '/' splitting the whole
# string into numerator and denominator, e.g. "(t^2+1)/t".


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list[tuple[str, str, int, int]] = []
        self._scan()
        self.index = 0

    def _scan(self):
        line, col = 1, 1
        i = 0
        text = self.text
        while i < len(text):
            ch = text[i]
            if ch == "\n":
                line += 1
                col = 1
                i += 1
                continue
            if ch.isspace():
                i += 1
                col += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.tokens.append(("int", text[i:j], line, col))
                col += j - i
                i = j
                continue
            if ch == "t":
                self.tokens.append(("t", ch, line, col))
            elif ch in "+-*/^()":
                self.tokens.append((ch, ch, line, col))
            else:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            i += 1
            col += 1
        self.tokens.append(("end", "", line, col))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok


class _PolyParser:
    """Recursive-descent parser for polynomial expressions over F_p."""

    def __init__(self, tok: _Tokenizer, p: int):
        self.tok = tok
        self.p = p

    def parse_sum(self) -> Poly:
        kind, _, line, col = self.tok.peek()
        negate = False
        if kind in ("+", "-"):
            self.tok.next()
            negate = kind == "-"
        acc = self.parse_term()
        if negate:
            acc = -acc
        while True:
            kind, _, line, col = self.tok.peek()
            if kind == "+":
                self.tok.next()
                acc = acc + self.parse_term()
            elif kind == "-":
                self.tok.next()
                acc = acc - self.parse_term()
            else:
                return acc

    def parse_term(self) -> Poly:
        acc = self.parse_power()
        while True:
            kind, _, _, _ = self.tok.peek()
            if kind == "*":
                self.tok.next()
                acc = acc * self.parse_power()
            elif kind in ("t", "(", "int"):
                # implicit multiplication, e.g. "3t" or "2(t+1)"
                acc = acc * self.parse_power()
            else:
                return acc

    def parse_power(self) -> Poly:
        base = self.parse_atom()
        kind, _, line, col = self.tok.peek()
        if kind == "^":
            self.tok.next()
            kind, text, line, col = self.tok.next()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer", line, col)
            return base ** int(text)
        return base

    def parse_atom(self) -> Poly:
        kind, text, line, col = self.tok.next()
        if kind == "int":
            return Poly.const(self.p, int(text))
        if kind == "t":
            return Poly.t(self.p)
        if kind == "(":
            inner = self.parse_sum()
            kind, _, line, col = self.tok.next()
            if kind != ")":
                raise ParseError("expected ')'", line, col)
            return inner
        if kind == "-":
            return -self.parse_atom()
        raise ParseError(f"expected a polynomial, found {text!r}" if text else "unexpected end of input", line, col)


def parse_poly(text: str, p: int) -> Poly:
    tok = _Tokenizer(text)
    poly = _PolyParser(tok, p).parse_sum()
    kind, text_, line, col = tok.peek()
    if kind != "end":
        raise ParseError(f"unexpected {text_!r} after polynomial", line, col)
    return poly


def parse_ratfunc(text: str, p: int) -> RatFunc:
    """Parse the rational-function grammar; coefficients reduced mod p."""
    tok = _Tokenizer(text)
    parser = _PolyParser(tok, p)
    num = parser.parse_sum()
    kind, text_, line, col = tok.peek()
    if kind == "/":
        tok.next()
        den = parser.parse_sum()
        kind, text_, line, col = tok.peek()
        if kind == "/":
            raise ParseError("at most one '/' is allowed", line, col)
        if kind != "end":
            raise ParseError(f"unexpected {text_!r} after denominator", line, col)
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        return RatFunc(num, den)
    if kind != "end":
        raise ParseError(f"unexpected {text_!r} after polynomial", line, col)
    return RatFunc(num)


def fraction_str(value) -> str:
    """Exact decimal-free rendering of a Fraction or int, e.g. '10/3'."""
    frac = Fraction(value)
    if frac.denominator == 1:
        return str(frac.numerator)
    return f"{frac.numerator}/{frac.denominator}"
